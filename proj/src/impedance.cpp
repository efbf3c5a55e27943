#include "casimir/impedance.hpp"

#include <cmath>
#include <string>

#include "casimir/errors.hpp"

namespace casimir {
namespace {

constexpr quad::Options kImpedanceQuad{.abs_tol = 1e-10, .rel_tol = 1e-10, .max_panels = 4000};

void require_l_positive(long l, const char* what) {
  if (l < 1) throw ValidationError(std::string(what) + ": requires l >= 1 (xi_l > 0)");
}

void require_k(double k_perp, const char* what) {
  if (!(k_perp >= 0.0)) throw ValidationError(std::string(what) + ": k_perp must be >= 0");
}

double positive_denominator(double d) {
  if (!(d > 0.0)) {
    throw ValidationError("impedance: non-positive denominator mu eps xi^2 + c^2 k^2 on the imaginary axis");
  }
  return d;
}

struct LocalSample {
  double eps_t;
  double eps_l;
};

LocalSample sample(double xi, double k_perp, const MaterialModel& m) {
  const double bg = background_permittivity(xi, m);
  switch (m.variant) {
    case Variant::Drude: {
      const double e = eps_drude(xi, m, bg);
      return {e, e};
    }
    case Variant::Plasma: {
      const double e = eps_plasma(xi, m, bg);
      return {e, e};
    }
    case Variant::NonlocalAlt:
      return {eps_transverse_nl(xi, k_perp, m, bg), eps_longitudinal_nl(xi, k_perp, m, bg)};
  }
  return {1.0, 1.0};
}

// The model responses depend on k_perp only, so the sampled values are constant in k_z.
DispersiveMedium constant_medium(LocalSample s, double mu) {
  return {[e = s.eps_t](double) { return e; }, [e = s.eps_l](double) { return e; }, mu};
}

double checked(const quad::Result& r, const char* what) {
  if (!r.converged) {
    throw ConvergenceError(std::string(what) + ": kz quadrature missed its tolerance", r.value, r.error);
  }
  return r.value;
}

}  // namespace

WaveNumbers wave_numbers(double xi, double k_perp, double eps_t, double mu, double c) {
  const double x = xi / c;
  return {k_perp, std::sqrt(k_perp * k_perp + x * x), std::sqrt(k_perp * k_perp + mu * eps_t * x * x)};
}

// Z_TE = (c xi mu / pi) Int dk_z / (mu eps_t xi^2 + c^2 k^2), even in k_z.
// With k_z = s tan(theta) and s the k_z = 0 decay scale the integrand is
// constant for k-independent eps, and the infinite range maps to (0, pi/2).
quad::Result z_te_integral_at(double xi, double k_perp, const DispersiveMedium& medium, double c,
                              const quad::Options& opts) {
  const double mu = medium.mu;
  const double s = std::sqrt(k_perp * k_perp + mu * medium.eps_t(k_perp) * xi * xi / (c * c));
  const double pref = 2.0 * c * xi * mu / pi;
  auto f = [&](double theta) {
    const double sn = std::sin(theta), cs = std::cos(theta);
    const double kz = s * sn / cs;
    const double k = std::hypot(k_perp, kz);
    const double a = mu * medium.eps_t(k) * xi * xi + c * c * k_perp * k_perp;
    positive_denominator(a);
    return pref * s / (a * cs * cs + c * c * s * s * sn * sn);
  };
  return quad::integrate(f, 0.0, pi / 2.0, opts);
}

// Z_TM = (c xi mu / pi) Int dk_z / k^2 [k_perp^2 / (mu xi^2 eps_l) + k_z^2 / (mu xi^2 eps_t + c^2 k^2)].
// The longitudinal part is integrated with k_z = k_perp tan(theta), the
// transverse part with k_z = s tan(theta); each is then exact for constant eps.
quad::Result z_tm_integral_at(double xi, double k_perp, const DispersiveMedium& medium, double c,
                              const quad::Options& opts) {
  const double mu = medium.mu;
  const double pref = 2.0 * c * xi * mu / pi;
  quad::Result out{.value = 0.0, .error = 0.0, .panels = 0, .converged = true};

  if (k_perp > 0.0) {
    auto lon = [&](double theta) {
      const double k = k_perp / std::cos(theta);
      const double el = medium.eps_l(k);
      positive_denominator(el);
      return pref * k_perp / (mu * xi * xi * el);
    };
    const auto r = quad::integrate(lon, 0.0, pi / 2.0, opts);
    out.value += r.value;
    out.error += r.error;
    out.panels += r.panels;
    out.converged = out.converged && r.converged;
  }

  const double s = std::sqrt(k_perp * k_perp + mu * medium.eps_t(k_perp) * xi * xi / (c * c));
  auto tr = [&](double theta) {
    const double sn = std::sin(theta), cs = std::cos(theta);
    const double kz = s * sn / cs;
    const double k = std::hypot(k_perp, kz);
    const double a = mu * medium.eps_t(k) * xi * xi + c * c * k_perp * k_perp;
    positive_denominator(a);
    const double k2cos2 = k_perp * k_perp * cs * cs + s * s * sn * sn;
    return pref * s * s * s * sn * sn / (k2cos2 * (a * cs * cs + c * c * s * s * sn * sn));
  };
  const auto r = quad::integrate(tr, 0.0, pi / 2.0, opts);
  out.value += r.value;
  out.error += r.error;
  out.panels += r.panels;
  out.converged = out.converged && r.converged;
  return out;
}

double z_te_closed_at(double xi, double k_perp, double eps_t, double mu, double c) {
  return xi * mu / std::sqrt(c * c * k_perp * k_perp + mu * eps_t * xi * xi);
}

double z_tm_closed_at(double xi, double k_perp, double eps_t, double eps_l, double mu, double c) {
  const double ck = c * k_perp;
  return (ck / eps_l + (std::sqrt(ck * ck + mu * eps_t * xi * xi) - ck) / eps_t) / xi;
}

double z_te_integral(long l, double k_perp, const MaterialModel& m, const MatsubaraContext& ctx) {
  require_l_positive(l, "z_te_integral");
  require_k(k_perp, "z_te_integral");
  const double xi = matsubara_xi(l, ctx);
  const auto medium = constant_medium(sample(xi, k_perp, m), mu_at(l, m));
  return checked(z_te_integral_at(xi, k_perp, medium, ctx.c, kImpedanceQuad), "z_te_integral");
}

double z_tm_integral(long l, double k_perp, const MaterialModel& m, const MatsubaraContext& ctx) {
  require_l_positive(l, "z_tm_integral");
  require_k(k_perp, "z_tm_integral");
  const double xi = matsubara_xi(l, ctx);
  const auto medium = constant_medium(sample(xi, k_perp, m), mu_at(l, m));
  return checked(z_tm_integral_at(xi, k_perp, medium, ctx.c, kImpedanceQuad), "z_tm_integral");
}

double z_te_closed(long l, double k_perp, const MaterialModel& m, const MatsubaraContext& ctx) {
  require_l_positive(l, "z_te_closed");
  require_k(k_perp, "z_te_closed");
  const double xi = matsubara_xi(l, ctx);
  return z_te_closed_at(xi, k_perp, sample(xi, k_perp, m).eps_t, mu_at(l, m), ctx.c);
}

double z_tm_closed(long l, double k_perp, const MaterialModel& m, const MatsubaraContext& ctx) {
  require_l_positive(l, "z_tm_closed");
  require_k(k_perp, "z_tm_closed");
  const double xi = matsubara_xi(l, ctx);
  const auto s = sample(xi, k_perp, m);
  return z_tm_closed_at(xi, k_perp, s.eps_t, s.eps_l, mu_at(l, m), ctx.c);
}

ImpedancePair z_local(long l, double k_perp, double eps_l, double mu_l, const MatsubaraContext& ctx) {
  require_l_positive(l, "z_local");
  require_k(k_perp, "z_local");
  if (!(eps_l >= 1.0)) throw ValidationError("z_local: eps_l must be >= 1");
  const double xi = matsubara_xi(l, ctx);
  const double root = std::sqrt(ctx.c * ctx.c * k_perp * k_perp + mu_l * eps_l * xi * xi);
  return {.z_tm = root / (xi * eps_l), .z_te = xi * mu_l / root, .l = l, .k_perp = k_perp};
}

ImpedancePair impedance(long l, double k_perp, const MaterialModel& m, const MatsubaraContext& ctx) {
  return {.z_tm = z_tm_closed(l, k_perp, m, ctx),
          .z_te = z_te_closed(l, k_perp, m, ctx),
          .l = l,
          .k_perp = k_perp};
}

}  // namespace casimir
