#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "casimir/commands.hpp"
#include "casimir/config.hpp"
#include "casimir/errors.hpp"

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitConvergence = 2;

void emit(const std::string& text, const std::string& path) {
  if (path == "-") {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw casimir::ValidationError("cannot open output file " + path);
  out << text;
  if (!out) throw casimir::ValidationError("failed writing output file " + path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Casimir pressure and force-gradient calculator for metallic plates"};
  app.require_subcommand(1);

  std::string config_path;
  std::string model;
  std::string output;
  bool no_optical = false;
  std::string experiment;
  std::string theta;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "Run configuration file")->required();
    sub->add_option("--model", model, "Override material.variant")
        ->check(CLI::IsMember({"drude", "plasma", "nonlocal", "all"}));
    sub->add_option("--output", output, "Output file, '-' for stdout (overrides run.output_path)");
    sub->add_flag("--no-optical-data", no_optical, "Ignore material.optical_data_path (free-electron models)");
  };

  auto* pressure = app.add_subcommand("pressure", "Pressure sweep over the separation grid");
  auto* ratio = app.add_subcommand("ratio", "Pressures and pairwise ratios over the separation grid");
  auto* impedance = app.add_subcommand("impedance-dump", "Surface impedances on the dump grid");
  auto* reflect = app.add_subcommand("reflect-dump", "Reflection coefficients on the dump grid");
  auto* gradient = app.add_subcommand("gradient", "Sphere-plate force gradient over the separation grid");
  auto* cmp = app.add_subcommand("compare", "Compare theory with a measured force-gradient dataset");
  for (auto* sub : {pressure, ratio, impedance, reflect, gradient, cmp}) common(sub);
  cmp->add_option("--experiment", experiment, "Experiment CSV (overrides geometry.experiment_path)");
  cmp->add_option("--theta", theta, "Theta table CSV (overrides geometry.theta_path)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    auto cfg = casimir::parse_config_file(config_path);
    if (!model.empty()) cfg.material.variant = model;
    if (no_optical) cfg.material.optical_data_path.reset();
    if (!output.empty()) cfg.output_path = output;

    std::string text;
    if (pressure->parsed()) {
      text = casimir::run_pressure_sweep(cfg);
    } else if (ratio->parsed()) {
      text = casimir::run_ratio(cfg);
    } else if (impedance->parsed()) {
      text = casimir::run_impedance_dump(cfg);
    } else if (reflect->parsed()) {
      text = casimir::run_reflect_dump(cfg);
    } else if (gradient->parsed()) {
      text = casimir::run_gradient(cfg);
    } else {
      std::string exp_path = experiment;
      if (exp_path.empty() && cfg.geometry && cfg.geometry->experiment_path) exp_path = *cfg.geometry->experiment_path;
      if (exp_path.empty()) throw casimir::ValidationError("compare: no experiment file (--experiment or geometry.experiment_path)");
      std::optional<std::string> theta_path;
      if (!theta.empty()) theta_path = theta;
      const auto report = casimir::run_gradient_compare(cfg, exp_path, theta_path);
      text = report.csv;
      for (const auto& c : report.counts) {
        std::cerr << c.model << ": " << c.inside << " inside, " << c.outside << " outside CI\n";
      }
    }
    emit(text, cfg.output_path);
  } catch (const casimir::ConvergenceError& e) {
    std::cerr << "error: " << e.what() << " (partial = " << e.partial() << ", error estimate = "
              << e.error_estimate() << ")\n";
    return kExitConvergence;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  return 0;
}
