#pragma once

#include <functional>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "casimir/lifshitz.hpp"

namespace casimir {

struct ThetaRow {
  double a = 0.0;  // m
  double theta = 0.0;
};

/// Sphere-plate setup. theta_table holds the beyond-PFA coefficient theta(a);
/// when empty theta = 0.
struct GeometryParams {
  double radius = 0.0;   // m
  double delta_s = 0.0;  // m, sphere rms roughness
  double delta_p = 0.0;  // m, plate rms roughness
  std::vector<ThetaRow> theta_table;

  void validate() const;
};

struct ExperimentRow {
  double a = 0.0;     // m
  double grad = 0.0;  // N/m
  double err = 0.0;   // N/m, 67% confidence half-width
};

struct ExperimentDataset {
  std::vector<ExperimentRow> rows;
  void validate() const;
};

struct ComparisonRow {
  double a = 0.0;
  double grad_theory = 0.0;
  double delta = 0.0;  // theory - experiment
  double ci_halfwidth = 0.0;
  bool inside_ci = false;
};

/// Receives non-fatal diagnostics (theta clamped to a table endpoint).
using WarningSink = std::function<void(std::string_view)>;
void warn_to_stderr(std::string_view message);

/// F' = -2 pi R P. Rejects a >= R/10.
double gradient_pfa(double pressure, double separation, const GeometryParams& geom);
double gradient_pfa(double separation, double temperature, const MaterialModel& m,
                    const GeometryParams& geom, const MatsubaraContext& ctx);

/// 1 + 10 (delta_s^2 + delta_p^2) / a^2. Rejects a <= 10 max(delta_s, delta_p).
double roughness_factor(double separation, const GeometryParams& geom);
double apply_roughness(double grad, double separation, const GeometryParams& geom);

/// theta(a) by linear interpolation; nearest endpoint (with a warning) outside the table.
double theta_at(double separation, const GeometryParams& geom, const WarningSink& warn = warn_to_stderr);
double apply_pfa_correction(double grad, double separation, const GeometryParams& geom,
                            const WarningSink& warn = warn_to_stderr);

/// PFA -> roughness -> beyond-PFA, from a plate-plate pressure.
double theory_gradient(double pressure, double separation, const GeometryParams& geom,
                       const WarningSink& warn = warn_to_stderr);

/// Per-point differences with ci_halfwidth = sqrt(err^2 + (err_theory_rel F'_theor)^2).
std::vector<ComparisonRow> compare(const ExperimentDataset& data,
                                   const std::function<double(double)>& theory_gradient_at,
                                   double err_theory_rel);
std::vector<ComparisonRow> compare(const ExperimentDataset& data, double temperature,
                                   const MaterialModel& m, const GeometryParams& geom,
                                   const MatsubaraContext& ctx, double err_theory_rel,
                                   double quad_tol = 1e-9, double series_tol = 1e-8);

/// "a_nm,grad_uN_per_m,err_uN_per_m"; converted to SI.
ExperimentDataset read_experiment(std::istream& in, const std::string& source = "experiment");
/// "a_nm,theta".
std::vector<ThetaRow> read_theta_table(std::istream& in, const std::string& source = "theta table");

}  // namespace casimir
