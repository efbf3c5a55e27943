#include "casimir/sphere_plate.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <string>

#include "casimir/csv.hpp"
#include "casimir/errors.hpp"

namespace casimir {

void GeometryParams::validate() const {
  if (!(radius > 0.0)) throw ValidationError("geometry: radius must be > 0");
  if (!(delta_s >= 0.0) || !(delta_p >= 0.0)) throw ValidationError("geometry: roughness must be >= 0");
  for (std::size_t i = 0; i < theta_table.size(); ++i) {
    if (!(std::abs(theta_table[i].theta) <= 1.0)) {
      throw ValidationError("geometry: |theta| > 1 in theta table row " + std::to_string(i + 1));
    }
    if (i > 0 && !(theta_table[i].a > theta_table[i - 1].a)) {
      throw ValidationError("geometry: theta table separations not strictly increasing");
    }
  }
}

void ExperimentDataset::validate() const {
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!(rows[i].a > 0.0)) throw ValidationError("experiment: separation must be > 0 (row " + std::to_string(i + 1) + ")");
    if (!(rows[i].err > 0.0)) throw ValidationError("experiment: error must be > 0 (row " + std::to_string(i + 1) + ")");
    if (i > 0 && !(rows[i].a > rows[i - 1].a)) {
      throw ValidationError("experiment: separations not strictly increasing at row " + std::to_string(i + 1));
    }
  }
}

void warn_to_stderr(std::string_view message) { std::cerr << "warning: " << message << '\n'; }

double gradient_pfa(double pressure, double separation, const GeometryParams& geom) {
  if (!(geom.radius > 0.0)) throw ValidationError("gradient_pfa: radius must be > 0");
  if (!(separation > 0.0 && separation < geom.radius / 10.0)) {
    throw ValidationError("gradient_pfa: requires 0 < a < R/10");
  }
  return -2.0 * pi * geom.radius * pressure;
}

double gradient_pfa(double separation, double temperature, const MaterialModel& m,
                    const GeometryParams& geom, const MatsubaraContext& ctx) {
  if (!(separation < geom.radius / 10.0)) throw ValidationError("gradient_pfa: requires a < R/10");
  const PressureQuery q{.separation = separation, .temperature = temperature, .model = m};
  return gradient_pfa(pressure(q, ctx).pressure, separation, geom);
}

double roughness_factor(double separation, const GeometryParams& geom) {
  if (!(separation > 10.0 * std::max(geom.delta_s, geom.delta_p)) || !(separation > 0.0)) {
    throw ValidationError("apply_roughness: requires a > 10 max(delta_s, delta_p)");
  }
  return 1.0 + 10.0 * (geom.delta_s * geom.delta_s + geom.delta_p * geom.delta_p) /
                   (separation * separation);
}

double apply_roughness(double grad, double separation, const GeometryParams& geom) {
  return grad * roughness_factor(separation, geom);
}

double theta_at(double separation, const GeometryParams& geom, const WarningSink& warn) {
  const auto& t = geom.theta_table;
  if (t.empty()) return 0.0;
  if (separation <= t.front().a || separation >= t.back().a) {
    const auto& end = separation <= t.front().a ? t.front() : t.back();
    if (separation != end.a && warn) {
      warn("separation " + csv::format(separation) + " m outside theta table; using endpoint theta = " +
           csv::format(end.theta));
    }
    return end.theta;
  }
  const auto it = std::upper_bound(t.begin(), t.end(), separation,
                                   [](double a, const ThetaRow& r) { return a < r.a; });
  const auto& hi = *it;
  const auto& lo = *(it - 1);
  const double w = (separation - lo.a) / (hi.a - lo.a);
  return lo.theta + w * (hi.theta - lo.theta);
}

double apply_pfa_correction(double grad, double separation, const GeometryParams& geom,
                            const WarningSink& warn) {
  return grad * (1.0 + theta_at(separation, geom, warn) * separation / geom.radius);
}

double theory_gradient(double pressure, double separation, const GeometryParams& geom,
                       const WarningSink& warn) {
  const double pfa = gradient_pfa(pressure, separation, geom);
  return apply_pfa_correction(apply_roughness(pfa, separation, geom), separation, geom, warn);
}

std::vector<ComparisonRow> compare(const ExperimentDataset& data,
                                   const std::function<double(double)>& theory_gradient_at,
                                   double err_theory_rel) {
  if (!(err_theory_rel >= 0.0)) throw ValidationError("compare: err_theory_rel must be >= 0");
  data.validate();
  std::vector<ComparisonRow> out;
  out.reserve(data.rows.size());
  for (const auto& row : data.rows) {
    ComparisonRow c;
    c.a = row.a;
    c.grad_theory = theory_gradient_at(row.a);
    c.delta = c.grad_theory - row.grad;
    c.ci_halfwidth = std::hypot(row.err, err_theory_rel * c.grad_theory);
    c.inside_ci = std::abs(c.delta) <= c.ci_halfwidth;
    out.push_back(c);
  }
  return out;
}

std::vector<ComparisonRow> compare(const ExperimentDataset& data, double temperature,
                                   const MaterialModel& m, const GeometryParams& geom,
                                   const MatsubaraContext& ctx, double err_theory_rel,
                                   double quad_tol, double series_tol) {
  geom.validate();
  return compare(
      data,
      [&](double a) {
        const PressureQuery q{.separation = a, .temperature = temperature, .model = m,
                              .quad_tol = quad_tol, .series_tol = series_tol};
        return theory_gradient(pressure(q, ctx).pressure, a, geom);
      },
      err_theory_rel);
}

ExperimentDataset read_experiment(std::istream& in, const std::string& source) {
  const auto csv = csv::read_numeric(in, {"a_nm", "grad_uN_per_m", "err_uN_per_m"}, source);
  ExperimentDataset data;
  for (std::size_t i = 0; i < csv.rows.size(); ++i) {
    const auto& r = csv.rows[i];
    const std::string where = source + ":" + std::to_string(csv.line_numbers[i]);
    if (!(r[0] > 0.0)) throw ValidationError(where + ": a_nm must be > 0");
    if (!(r[2] > 0.0)) throw ValidationError(where + ": err_uN_per_m must be > 0");
    if (!data.rows.empty() && !(r[0] / 1e9 > data.rows.back().a)) {
      throw ValidationError(where + ": a_nm not strictly increasing");
    }
    data.rows.push_back({r[0] / 1e9, r[1] / 1e6, r[2] / 1e6});
  }
  return data;
}

std::vector<ThetaRow> read_theta_table(std::istream& in, const std::string& source) {
  const auto csv = csv::read_numeric(in, {"a_nm", "theta"}, source);
  std::vector<ThetaRow> rows;
  for (std::size_t i = 0; i < csv.rows.size(); ++i) {
    const auto& r = csv.rows[i];
    const std::string where = source + ":" + std::to_string(csv.line_numbers[i]);
    if (!(std::abs(r[1]) <= 1.0)) throw ValidationError(where + ": |theta| must not exceed 1");
    if (!rows.empty() && !(r[0] / 1e9 > rows.back().a)) {
      throw ValidationError(where + ": a_nm not strictly increasing");
    }
    rows.push_back({r[0] / 1e9, r[1]});
  }
  return rows;
}

}  // namespace casimir
