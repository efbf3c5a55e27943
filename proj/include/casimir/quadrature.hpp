#pragma once

#include <functional>
#include <vector>

namespace casimir::quad {

struct Options {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  int max_panels = 2000;
};

struct Result {
  double value = 0.0;
  double error = 0.0;  // estimated absolute error
  int panels = 0;
  bool converged = false;
};

using Integrand = std::function<double(double)>;

/// Globally adaptive Gauss-Kronrod (7/15) integration on a finite [a, b].
///
/// The panel with the largest error estimate is bisected until
/// error <= max(abs_tol, rel_tol * |value|) or max_panels is reached.
/// Interior nodes only, so integrable endpoint singularities are tolerated.
Result integrate(const Integrand& f, double a, double b, const Options& opts = {});

/// Adaptive integration over [breaks.front(), breaks.back()], seeded with one
/// panel per consecutive pair of breakpoints (kinks, table nodes).
Result integrate(const Integrand& f, const std::vector<double>& breaks, const Options& opts = {});

/// Same as integrate(), throwing ConvergenceError when the tolerance is missed.
Result integrate_or_throw(const Integrand& f, double a, double b, const Options& opts,
                          const char* what);

}  // namespace casimir::quad
