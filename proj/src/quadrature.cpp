#include "casimir/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <queue>
#include <string>
#include <vector>

#include "casimir/errors.hpp"

namespace casimir::quad {
namespace {

using Rule = boost::math::quadrature::gauss_kronrod<double, 15>;

struct Panel {
  double a, b, value, error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

Panel evaluate(const Integrand& f, double a, double b) {
  double err = 0.0;
  const double v = Rule::integrate(f, a, b, 0, 0.0, &err);
  // Boost reports the error of the rule on [-1, 1], before the change of variables.
  return {a, b, v, err * 0.5 * (b - a)};
}

}  // namespace

Result integrate(const Integrand& f, double a, double b, const Options& opts) {
  if (b < a) {
    Result out = integrate(f, std::vector<double>{b, a}, opts);
    out.value = -out.value;
    return out;
  }
  return integrate(f, std::vector<double>{a, b}, opts);
}

Result integrate(const Integrand& f, const std::vector<double>& breaks, const Options& opts) {
  Result out;
  std::priority_queue<Panel> heap;
  double total = 0.0;
  double total_err = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (!(breaks[i + 1] > breaks[i])) continue;
    Panel p = evaluate(f, breaks[i], breaks[i + 1]);
    total += p.value;
    total_err += p.error;
    heap.push(p);
  }
  if (heap.empty()) {
    out.converged = true;
    return out;
  }

  auto done = [&] {
    return total_err <= std::max(opts.abs_tol, opts.rel_tol * std::abs(total));
  };

  while (!done() && static_cast<int>(heap.size()) < opts.max_panels) {
    Panel worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) break;  // interval exhausted in floating point
    heap.pop();
    Panel left = evaluate(f, worst.a, mid);
    Panel right = evaluate(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }

  // Re-sum from the panels to shed the drift of incremental updates.
  out.panels = static_cast<int>(heap.size());
  total = 0.0;
  total_err = 0.0;
  while (!heap.empty()) {
    total += heap.top().value;
    total_err += heap.top().error;
    heap.pop();
  }
  out.value = total;
  out.error = total_err;
  out.converged = total_err <= std::max(opts.abs_tol, opts.rel_tol * std::abs(total));
  return out;
}

Result integrate_or_throw(const Integrand& f, double a, double b, const Options& opts,
                          const char* what) {
  Result r = integrate(f, a, b, opts);
  if (!r.converged) {
    throw ConvergenceError(std::string(what) + ": quadrature did not converge (error estimate " +
                               std::to_string(r.error) + ", value " + std::to_string(r.value) +
                               ")",
                           r.value, r.error);
  }
  return r;
}

}  // namespace casimir::quad
