#include "casimir/commands.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <fstream>
#include <functional>
#include <sstream>
#include <thread>

#include "casimir/csv.hpp"
#include "casimir/errors.hpp"
#include "casimir/lifshitz.hpp"

namespace casimir {
namespace {

// Runs job(i) for i in [0, n) on up to `threads` workers. Results are written by
// index, so output order never depends on scheduling. The first failure in index
// order is rethrown.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& job) {
  const std::size_t workers = std::min<std::size_t>(std::max(threads, 1), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) job(i);
    return;
  }
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        job(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::jthread> pool;
  for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(worker);
  pool.clear();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

std::string row_context(double a, const MaterialModel& m) {
  return "a = " + csv::format(a) + " m, model = " + std::string(to_string(m.variant)) + ": ";
}

PressureResult pressure_at(double a, const MaterialModel& m, const RunConfig& cfg) {
  const PressureQuery q{.separation = a, .temperature = cfg.temperature_k, .model = m,
                        .quad_tol = cfg.quad_tol, .series_tol = cfg.series_tol};
  try {
    return pressure(q, make_context(cfg));
  } catch (const ConvergenceError& e) {
    throw ConvergenceError(row_context(a, m) + e.what(), e.partial(), e.error_estimate());
  } catch (const ValidationError& e) {
    throw ValidationError(row_context(a, m) + e.what());
  }
}

// results[ia][im]
std::vector<std::vector<PressureResult>> pressure_grid(const RunConfig& cfg,
                                                       const std::vector<double>& as,
                                                       const std::vector<MaterialModel>& models) {
  std::vector<std::vector<PressureResult>> out(as.size(), std::vector<PressureResult>(models.size()));
  parallel_for(as.size() * models.size(), cfg.threads, [&](std::size_t i) {
    const std::size_t ia = i / models.size();
    const std::size_t im = i % models.size();
    out[ia][im] = pressure_at(as[ia], models[im], cfg);
  });
  return out;
}

const GeometryConfig& require_geometry(const RunConfig& cfg) {
  if (!cfg.geometry) throw ValidationError("config: this command needs a [geometry] section");
  return *cfg.geometry;
}

}  // namespace

std::string run_pressure_sweep(const RunConfig& cfg) {
  const auto as = sweep_separations(cfg.sweep);
  const auto models = build_models(cfg.material);
  const auto grid = pressure_grid(cfg, as, models);
  std::ostringstream out;
  out << "a_m,model,pressure_pa,terms_used,tail_bound,quad_error\n";
  for (std::size_t ia = 0; ia < as.size(); ++ia) {
    for (std::size_t im = 0; im < models.size(); ++im) {
      const auto& r = grid[ia][im];
      out << csv::format(as[ia]) << ',' << to_string(models[im].variant) << ',' << csv::format(r.pressure)
          << ',' << r.terms_used << ',' << csv::format(r.series_tail_bound) << ','
          << csv::format(r.quad_error) << '\n';
    }
  }
  return out.str();
}

std::string run_ratio(const RunConfig& cfg) {
  const auto as = sweep_separations(cfg.sweep);
  const auto models = build_models(cfg.material);
  const auto grid = pressure_grid(cfg, as, models);
  std::ostringstream out;
  out << "a_m";
  for (const auto& m : models) out << ",p_" << to_string(m.variant) << "_pa";
  for (std::size_t i = models.size(); i-- > 1;) {
    for (std::size_t j = i; j-- > 0;) out << ',' << to_string(models[i].variant) << '/' << to_string(models[j].variant);
  }
  out << '\n';
  for (std::size_t ia = 0; ia < as.size(); ++ia) {
    out << csv::format(as[ia]);
    for (const auto& r : grid[ia]) out << ',' << csv::format(r.pressure);
    for (std::size_t i = models.size(); i-- > 1;) {
      for (std::size_t j = i; j-- > 0;) out << ',' << csv::format(grid[ia][i].pressure / grid[ia][j].pressure);
    }
    out << '\n';
  }
  return out.str();
}

std::vector<double> dump_k_values(const RunConfig& cfg) {
  if (cfg.dump.k_perp_values) return *cfg.dump.k_perp_values;
  const double a = cfg.sweep.a_min_nm / 1e9;
  return {0.0, 0.1 / a, 1.0 / a, 10.0 / a};
}

std::string run_impedance_dump(const RunConfig& cfg) {
  const auto models = build_models(cfg.material);
  if (models.size() != 1) {
    throw ValidationError("impedance-dump: select a single model (--model drude|plasma|nonlocal)");
  }
  const auto ctx = make_context(cfg);
  const auto ks = dump_k_values(cfg);
  std::ostringstream out;
  out << "l,k_perp,z_tm,z_te\n";
  for (long l : cfg.dump.l_values) {
    if (l < 1) throw ValidationError("impedance-dump: impedances are defined for l >= 1 only");
    for (double k : ks) {
      const auto z = impedance(l, k, models.front(), ctx);
      out << l << ',' << csv::format(k) << ',' << csv::format(z.z_tm) << ',' << csv::format(z.z_te) << '\n';
    }
  }
  return out.str();
}

std::string run_reflect_dump(const RunConfig& cfg) {
  const auto models = build_models(cfg.material);
  const auto ctx = make_context(cfg);
  const auto ks = dump_k_values(cfg);
  std::ostringstream out;
  out << "model,l,k_perp,r_tm,r_te\n";
  for (const auto& m : models) {
    for (long l : cfg.dump.l_values) {
      const double bg = l == 0 ? 1.0 : background_permittivity(matsubara_xi(l, ctx), m);
      for (double k : ks) {
        const auto r = reflection(l, k, m, ctx, bg);
        out << to_string(m.variant) << ',' << l << ',' << csv::format(k) << ',' << csv::format(r.r_tm) << ','
            << csv::format(r.r_te) << '\n';
      }
    }
  }
  return out.str();
}

GeometryParams load_geometry(const GeometryConfig& g) {
  GeometryParams geom;
  geom.radius = g.radius_um / 1e6;
  geom.delta_s = g.delta_s_nm / 1e9;
  geom.delta_p = g.delta_p_nm / 1e9;
  if (g.theta_path) {
    std::ifstream in(*g.theta_path);
    if (!in) throw ValidationError("cannot open theta table " + *g.theta_path);
    geom.theta_table = read_theta_table(in, *g.theta_path);
  }
  geom.validate();
  return geom;
}

std::string run_gradient(const RunConfig& cfg) {
  const auto geom = load_geometry(require_geometry(cfg));
  const auto as = sweep_separations(cfg.sweep);
  for (double a : as) {
    gradient_pfa(-1.0, a, geom);
    roughness_factor(a, geom);
  }
  const auto models = build_models(cfg.material);
  const auto grid = pressure_grid(cfg, as, models);
  std::ostringstream out;
  out << "a_m,model,pressure_pa,grad_pfa_n_per_m,grad_theory_n_per_m\n";
  for (std::size_t ia = 0; ia < as.size(); ++ia) {
    for (std::size_t im = 0; im < models.size(); ++im) {
      const double p = grid[ia][im].pressure;
      out << csv::format(as[ia]) << ',' << to_string(models[im].variant) << ',' << csv::format(p) << ','
          << csv::format(gradient_pfa(p, as[ia], geom)) << ','
          << csv::format(theory_gradient(p, as[ia], geom)) << '\n';
    }
  }
  return out.str();
}

CompareReport run_gradient_compare(const RunConfig& cfg, const std::string& experiment_path,
                                   const std::optional<std::string>& theta_path) {
  auto gcfg = require_geometry(cfg);
  if (theta_path) gcfg.theta_path = theta_path;
  const auto geom = load_geometry(gcfg);

  std::ifstream in(experiment_path);
  if (!in) throw ValidationError("cannot open experiment file " + experiment_path);
  const auto data = read_experiment(in, experiment_path);
  std::vector<double> as;
  for (const auto& row : data.rows) {
    gradient_pfa(-1.0, row.a, geom);
    roughness_factor(row.a, geom);
    as.push_back(row.a);
  }

  const auto models = build_models(cfg.material);
  const auto grid = pressure_grid(cfg, as, models);

  CompareReport report;
  std::ostringstream out;
  out << "model,a_nm,grad_theory,delta,ci_halfwidth,inside_ci\n";
  for (std::size_t im = 0; im < models.size(); ++im) {
    std::size_t ia = 0;
    const auto rows = compare(
        data, [&](double a) { return theory_gradient(grid[ia++][im].pressure, a, geom); }, gcfg.err_theory_rel);
    ModelCounts counts{.model = std::string(to_string(models[im].variant))};
    for (const auto& r : rows) {
      (r.inside_ci ? counts.inside : counts.outside) += 1;
      out << counts.model << ',' << csv::format(r.a * 1e9) << ',' << csv::format(r.grad_theory * 1e6) << ','
          << csv::format(r.delta * 1e6) << ',' << csv::format(r.ci_halfwidth * 1e6) << ','
          << (r.inside_ci ? 1 : 0) << '\n';
    }
    report.counts.push_back(counts);
  }
  for (const auto& c : report.counts) {
    out << "# summary model=" << c.model << " inside=" << c.inside << " outside=" << c.outside
        << " total=" << c.inside + c.outside << '\n';
  }
  report.csv = out.str();
  return report;
}

}  // namespace casimir
