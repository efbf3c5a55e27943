#pragma once

#include <optional>
#include <string>
#include <vector>

#include "casimir/config.hpp"
#include "casimir/sphere_plate.hpp"

namespace casimir {

// Each command returns the complete CSV text. Floats use csv::format, so
// identical inputs give byte-identical output regardless of cfg.threads.

/// a_m,model,pressure_pa,terms_used,tail_bound,quad_error; one row per (a, model).
std::string run_pressure_sweep(const RunConfig& cfg);

/// a_m, one pressure column per model, then every ratio P_i/P_j with j < i in
/// model order (nonlocal/plasma, nonlocal/drude, plasma/drude for "all").
std::string run_ratio(const RunConfig& cfg);

/// l,k_perp,z_tm,z_te for the dump grid. Requires a single model and l >= 1.
std::string run_impedance_dump(const RunConfig& cfg);

/// model,l,k_perp,r_tm,r_te for the dump grid.
std::string run_reflect_dump(const RunConfig& cfg);

/// a_m,model,pressure_pa,grad_pfa_n_per_m,grad_theory_n_per_m. Needs [geometry].
std::string run_gradient(const RunConfig& cfg);

struct ModelCounts {
  std::string model;
  int inside = 0;
  int outside = 0;
};

struct CompareReport {
  std::vector<ModelCounts> counts;
  std::string csv;  // rows plus trailing "# summary" comment lines
};

/// model,a_nm,grad_theory,delta,ci_halfwidth,inside_ci with gradients in uN/m
/// (the experiment file's unit) and inside_ci as 1/0, followed by one
/// "# summary model=... inside=... outside=... total=..." line per model.
CompareReport run_gradient_compare(const RunConfig& cfg, const std::string& experiment_path,
                                   const std::optional<std::string>& theta_path = std::nullopt);

/// Geometry in SI units with the theta table (if any) loaded.
GeometryParams load_geometry(const GeometryConfig& g);

/// Dump grid k values: cfg.dump.k_perp_values or {0, 0.1, 1, 10} / a_min.
std::vector<double> dump_k_values(const RunConfig& cfg);

}  // namespace casimir
