#pragma once

#include <optional>
#include <string>
#include <vector>

#include "casimir/response.hpp"

namespace casimir {

struct MaterialConfig {
  std::string variant = "all";  // drude | plasma | nonlocal | all
  double omega_p_ev = 0.0;
  double gamma_ev = 0.0;
  double mu0 = 1.0;
  double v_t_over_vf = 0.0;
  double v_l_over_vf = 0.0;
  double v_f_m_s = 0.0;
  double v_t = 0.0;  // m/s, v_t_over_vf * v_f_m_s
  double v_l = 0.0;  // m/s
  std::optional<std::string> optical_data_path;
  double kk_tail_tol = kDefaultKkTailTol;

  bool operator==(const MaterialConfig&) const = default;
};

enum class Spacing { Linear, Log };

struct SweepConfig {
  double a_min_nm = 0.0;
  double a_max_nm = 0.0;
  int points = 1;
  Spacing spacing = Spacing::Log;

  bool operator==(const SweepConfig&) const = default;
};

struct GeometryConfig {
  double radius_um = 0.0;
  double delta_s_nm = 0.0;
  double delta_p_nm = 0.0;
  double err_theory_rel = 0.0;
  std::optional<std::string> theta_path;
  std::optional<std::string> experiment_path;

  bool operator==(const GeometryConfig&) const = default;
};

struct DumpConfig {
  std::vector<long> l_values{1, 2, 10, 100};
  // 1/m; when absent: {0, 0.1, 1, 10} / a_min
  std::optional<std::vector<double>> k_perp_values;

  bool operator==(const DumpConfig&) const = default;
};

struct RunConfig {
  MaterialConfig material;
  SweepConfig sweep;
  double temperature_k = 300.0;
  double series_tol = 1e-8;
  double quad_tol = 1e-9;
  int threads = 1;
  std::string output_path = "-";  // "-" is stdout
  std::optional<GeometryConfig> geometry;
  DumpConfig dump;

  bool operator==(const RunConfig&) const = default;
};

/// Parses the sectioned "key = value" format ('#' or ';' comment lines).
/// Relative paths are resolved against base_dir. Throws ValidationError naming
/// the offending key (section.key) or line.
RunConfig parse_config(const std::string& text, const std::string& base_dir = "");
RunConfig parse_config_file(const std::string& path);

/// Inverse of parse_config: parse_config(serialize_config(c)) == c.
std::string serialize_config(const RunConfig& cfg);

/// Separation grid in metres.
std::vector<double> sweep_separations(const SweepConfig& sweep);

/// Variants selected by material.variant ("all" gives drude, plasma, nonlocal).
std::vector<Variant> selected_variants(const MaterialConfig& material);

/// Material models for the selected variants, sharing one loaded optical table.
std::vector<MaterialModel> build_models(const MaterialConfig& material);

MatsubaraContext make_context(const RunConfig& cfg);

}  // namespace casimir
