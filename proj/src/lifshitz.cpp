#include "casimir/lifshitz.hpp"

#include <cmath>
#include <memory>
#include <string>

#include "casimir/errors.hpp"
#include "casimir/quadrature.hpp"

namespace casimir {
namespace {

constexpr double kYSpan = 45.0;  // e^-45 ~ 3e-20

// r^2 e^-y / (1 - r^2 e^-y), without forming e^{+y}.
double round_trip(double r, double y) {
  if (r == 0.0) return 0.0;
  const double log_x = 2.0 * std::log(std::abs(r)) - y;
  return std::exp(log_x) / -std::expm1(log_x);
}

}  // namespace

void PressureQuery::validate() const {
  if (!(separation > 0.0)) throw ValidationError("pressure: separation must be > 0");
  if (!(temperature > 0.0)) throw ValidationError("pressure: temperature must be > 0");
  if (!(quad_tol > 0.0 && quad_tol <= 1e-4)) throw ValidationError("pressure: quad_tol must lie in (0, 1e-4]");
  if (!(series_tol > 0.0 && series_tol <= 1e-4)) throw ValidationError("pressure: series_tol must lie in (0, 1e-4]");
  model.validate();
}

long matsubara_cap(double separation, const MatsubaraContext& ctx) {
  const double per_term = 4.0 * pi * separation * ctx.k_boltzmann * ctx.temperature / (ctx.c * ctx.hbar);
  const double cap = std::ceil(20.0 / per_term) + 100.0;
  return cap < static_cast<double>(ctx.l_max_cap) ? static_cast<long>(cap) : ctx.l_max_cap;
}

TermResult pressure_term(long l, double separation, const ReflectionSource& source,
                         const MatsubaraContext& ctx, double quad_tol) {
  if (l < 0) throw ValidationError("pressure_term: l must be >= 0");
  const double a = separation;
  const double y_l = 2.0 * a * matsubara_xi(l, ctx) / ctx.c;

  // y = y_l + s^2 removes the sqrt(y - y_l) behaviour of k_perp at the lower end
  // (the sqrt(k_perp) cusp of the l = 0 TE coefficient in particular).
  auto f = [&](double s) {
    const double s2 = s * s;
    const double y = y_l + s2;
    const double k_perp = s * std::sqrt(s2 + 2.0 * y_l) / (2.0 * a);
    const auto r = source(l, k_perp);
    return 2.0 * s * y * y * (round_trip(r.r_tm, y) + round_trip(r.r_te, y));
  };
  const quad::Options opts{.abs_tol = 0.0, .rel_tol = quad_tol, .max_panels = 4000};
  const double s_max = std::sqrt(kYSpan);
  const auto res = quad::integrate(f, std::vector<double>{0.0, 1.0, 2.0, 3.0, 4.5, s_max}, opts);
  if (!res.converged) {
    throw ConvergenceError("pressure_term: k_perp quadrature missed tolerance at l = " + std::to_string(l),
                           res.value, res.error);
  }
  // q k dk = y^2 dy / (8 a^3)
  const double pref = -ctx.k_boltzmann * ctx.temperature / (pi * 8.0 * a * a * a);
  return {pref * res.value, std::abs(pref) * res.error};
}

ReflectionSource model_reflection(const MaterialModel& m, const MatsubaraContext& ctx) {
  struct Cache {
    long l = -1;
    double background = 1.0;
  };
  auto cache = std::make_shared<Cache>();
  return [m, ctx, cache](long l, double k_perp) {
    if (l != cache->l) {
      cache->l = l;
      cache->background = l == 0 ? 1.0 : background_permittivity(matsubara_xi(l, ctx), m);
    }
    return reflection(l, k_perp, m, ctx, cache->background);
  };
}

double pressure_term(long l, double separation, double temperature, const MaterialModel& m,
                     const MatsubaraContext& ctx) {
  MatsubaraContext local = ctx;
  local.temperature = temperature;
  return pressure_term(l, separation, model_reflection(m, local), local, 1e-9).value;
}

PressureResult pressure(double separation, double temperature, const ReflectionSource& source,
                        double quad_tol, double series_tol, const MatsubaraContext& ctx, bool keep_terms) {
  if (!(separation > 0.0)) throw ValidationError("pressure: separation must be > 0");
  MatsubaraContext local = ctx;
  local.temperature = temperature;
  local.validate();
  const long cap = matsubara_cap(separation, local);

  PressureResult out;
  const auto t0 = pressure_term(0, separation, source, local, quad_tol);
  double sum = 0.5 * t0.value;
  out.quad_error = 0.5 * t0.quad_error;
  if (keep_terms) out.per_term.emplace_back(0, 0.5 * t0.value);

  double previous = t0.value;
  int small_run = 0;
  for (long l = 1; l <= cap; ++l) {
    const auto t = pressure_term(l, separation, source, local, quad_tol);
    sum += t.value;
    out.quad_error += t.quad_error;
    if (keep_terms) out.per_term.emplace_back(l, t.value);

    small_run = std::abs(t.value) <= series_tol * std::abs(sum) ? small_run + 1 : 0;
    if (small_run >= 3) {
      const double rho = previous == 0.0 ? 0.0 : std::abs(t.value / previous);
      if (rho < 1.0) {
        const double tail = std::abs(t.value) * rho / (1.0 - rho);
        if (tail <= series_tol * std::abs(sum)) {
          out.pressure = sum;
          out.terms_used = l + 1;
          out.series_tail_bound = tail;
          return out;
        }
      }
    }
    previous = t.value;
  }
  throw ConvergenceError("pressure: Matsubara series not converged within " + std::to_string(cap) +
                             " terms at a = " + std::to_string(separation) + " m",
                         sum, std::abs(previous));
}

PressureResult pressure(const PressureQuery& q, const MatsubaraContext& ctx) {
  q.validate();
  MatsubaraContext local = ctx;
  local.temperature = q.temperature;
  return pressure(q.separation, q.temperature, model_reflection(q.model, local), q.quad_tol,
                  q.series_tol, local, q.keep_terms);
}

RatioTable pressure_ratio_table(const std::vector<double>& separations, double temperature,
                                const std::vector<MaterialModel>& models, const MatsubaraContext& ctx,
                                double quad_tol, double series_tol) {
  if (separations.empty() || models.empty()) {
    throw ValidationError("pressure_ratio_table: separation grid and model list must be nonempty");
  }
  RatioTable table;
  table.separations = separations;
  for (const auto& m : models) table.labels.emplace_back(to_string(m.variant));
  for (double a : separations) {
    std::vector<PressureResult> row;
    row.reserve(models.size());
    for (const auto& m : models) {
      PressureQuery q{.separation = a, .temperature = temperature, .model = m,
                      .quad_tol = quad_tol, .series_tol = series_tol};
      row.push_back(pressure(q, ctx));
    }
    table.results.push_back(std::move(row));
  }
  return table;
}

}  // namespace casimir
