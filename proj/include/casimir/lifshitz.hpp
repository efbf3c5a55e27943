#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "casimir/reflection.hpp"
#include "casimir/response.hpp"

namespace casimir {

struct PressureQuery {
  double separation = 0.0;   // m
  double temperature = 300.0;  // K
  MaterialModel model;
  double quad_tol = 1e-9;
  double series_tol = 1e-8;
  bool keep_terms = false;  // fill PressureResult::per_term

  void validate() const;
};

struct PressureResult {
  double pressure = 0.0;  // Pa, negative = attraction
  long terms_used = 0;    // Matsubara terms evaluated, l = 0 included
  double series_tail_bound = 0.0;  // Pa
  double quad_error = 0.0;         // Pa
  std::vector<std::pair<long, double>> per_term;  // (l, weighted contribution)
};

/// Reflection coefficients of one plate as a function of (l, k_perp).
/// Both plates are identical, so the round-trip factor is r^2.
using ReflectionSource = std::function<ReflectionPair(long l, double k_perp)>;

struct TermResult {
  double value = 0.0;  // Pa, without the 1/2 weight of l = 0
  double quad_error = 0.0;
};

/// Contribution of a single Matsubara index:
///   -(k_B T / pi) Int_0^inf q k dk sum_alpha r^2 e^{-2aq} / (1 - r^2 e^{-2aq}),
/// integrated over y = 2 a q in [2 a xi_l / c, 2 a xi_l / c + 45] with y = y_l + s^2.
TermResult pressure_term(long l, double separation, const ReflectionSource& source,
                         const MatsubaraContext& ctx, double quad_tol);
double pressure_term(long l, double separation, double temperature, const MaterialModel& m,
                     const MatsubaraContext& ctx);

/// Full Matsubara sum for an arbitrary reflection source (test hooks use this
/// to force vacuum or ideal-metal coefficients). Throws ConvergenceError with the
/// partial sum when the series has not settled by the l cap.
PressureResult pressure(double separation, double temperature, const ReflectionSource& source,
                        double quad_tol, double series_tol, const MatsubaraContext& ctx,
                        bool keep_terms = false);

/// Casimir pressure between two identical plates of the query's material.
PressureResult pressure(const PressureQuery& q, const MatsubaraContext& ctx);

/// Reflection source for a material model. Caches the background permittivity
/// of the current l, so one instance must not be shared between threads.
ReflectionSource model_reflection(const MaterialModel& m, const MatsubaraContext& ctx);

/// l cap ceil(20 c hbar / (4 pi a k_B T)) + 100, clipped to ctx.l_max_cap.
long matsubara_cap(double separation, const MatsubaraContext& ctx);

struct RatioTable {
  std::vector<double> separations;
  std::vector<std::string> labels;
  std::vector<std::vector<PressureResult>> results;  // [separation][model]

  double pressure(std::size_t ia, std::size_t im) const { return results[ia][im].pressure; }
  /// P_i / P_j at separation index ia.
  double ratio(std::size_t ia, std::size_t i, std::size_t j) const {
    return results[ia][i].pressure / results[ia][j].pressure;
  }
};

RatioTable pressure_ratio_table(const std::vector<double>& separations, double temperature,
                                const std::vector<MaterialModel>& models, const MatsubaraContext& ctx,
                                double quad_tol = 1e-9, double series_tol = 1e-8);

}  // namespace casimir
