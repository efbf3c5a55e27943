#include "casimir/reflection.hpp"

#include <cmath>
#include <string>

#include "casimir/errors.hpp"

namespace casimir {
namespace {

void require_l_positive(long l, const char* what) {
  if (l < 1) throw ValidationError(std::string(what) + ": requires l >= 1; use the zero-frequency limits for l = 0");
}

void require_k(double k_perp, const char* what) {
  if (!(k_perp >= 0.0)) throw ValidationError(std::string(what) + ": k_perp must be >= 0");
}

}  // namespace

ReflectionPair refl_from_impedance(const ImpedancePair& z, const MatsubaraContext& ctx) {
  require_l_positive(z.l, "refl_from_impedance");
  const double xi = matsubara_xi(z.l, ctx);
  const double cq = ctx.c * std::sqrt(z.k_perp * z.k_perp + xi * xi / (ctx.c * ctx.c));
  return {.r_tm = (cq - xi * z.z_tm) / (cq + xi * z.z_tm),
          .r_te = (cq * z.z_te - xi) / (cq * z.z_te + xi),
          .l = z.l,
          .k_perp = z.k_perp};
}

ReflectionPair refl_nonlocal_closed_at(double xi, double k_perp, double eps_t, double eps_l,
                                       double mu, double c) {
  const auto w = wave_numbers(xi, k_perp, eps_t, mu, c);
  const double shift = k_perp * (eps_t - eps_l) / eps_l;
  const double qe = w.q_l * eps_t;
  const double qm = w.q_l * mu;
  return {.r_tm = (qe - w.k_mu_tr - shift) / (qe + w.k_mu_tr + shift),
          .r_te = (qm - w.k_mu_tr) / (qm + w.k_mu_tr),
          .l = 0,
          .k_perp = k_perp};
}

ReflectionPair refl_nonlocal_closed(long l, double k_perp, const MaterialModel& m,
                                    const MatsubaraContext& ctx) {
  require_l_positive(l, "refl_nonlocal_closed");
  require_k(k_perp, "refl_nonlocal_closed");
  const double xi = matsubara_xi(l, ctx);
  const double bg = background_permittivity(xi, m);
  auto r = refl_nonlocal_closed_at(xi, k_perp, eps_transverse_nl(xi, k_perp, m, bg),
                                   eps_longitudinal_nl(xi, k_perp, m, bg), mu_at(l, m), ctx.c);
  r.l = l;
  return r;
}

ReflectionPair refl_zero_freq(double k_perp, const MaterialModel& m, const MatsubaraContext& ctx) {
  require_k(k_perp, "refl_zero_freq");
  if (m.variant != Variant::NonlocalAlt) {
    throw ValidationError("refl_zero_freq: defined for the nonlocal variant only");
  }
  if (!(m.gamma > 0.0)) {
    throw ValidationError("refl_zero_freq: gamma = 0 makes the zero-frequency nonlocal limit singular; use the plasma variant");
  }
  const double wp2 = m.omega_p * m.omega_p;
  const double b = m.mu0 * wp2 * m.v_t / (m.gamma * ctx.c * ctx.c);
  ReflectionPair r{.r_tm = wp2 / (2.0 * m.v_l * m.gamma * k_perp + wp2), .r_te = 0.0, .l = 0, .k_perp = k_perp};
  if (k_perp == 0.0) {
    r.r_te = b > 0.0 ? -1.0 : (m.mu0 - 1.0) / (m.mu0 + 1.0);
  } else {
    const double num = m.mu0 * std::sqrt(k_perp);
    const double root = std::sqrt(k_perp + b);
    r.r_te = (num - root) / (num + root);
  }
  return r;
}

ReflectionPair refl_zero_freq_local(double k_perp, const MaterialModel& m, const MatsubaraContext& ctx) {
  require_k(k_perp, "refl_zero_freq_local");
  ReflectionPair r{.r_tm = 1.0, .r_te = 0.0, .l = 0, .k_perp = k_perp};
  switch (m.variant) {
    case Variant::Drude:
      // xi^2 eps_D -> 0, so k_mu -> k_perp.
      r.r_te = (m.mu0 - 1.0) / (m.mu0 + 1.0);
      break;
    case Variant::Plasma: {
      // xi^2 eps_p -> omega_p^2.
      const double root = std::sqrt(k_perp * k_perp + m.mu0 * m.omega_p * m.omega_p / (ctx.c * ctx.c));
      r.r_te = (m.mu0 * k_perp - root) / (m.mu0 * k_perp + root);
      break;
    }
    case Variant::NonlocalAlt:
      throw ValidationError("refl_zero_freq_local: use refl_zero_freq for the nonlocal variant");
  }
  return r;
}

ReflectionPair refl_fresnel_at(double xi, double k_perp, double eps, double mu, double c) {
  const auto w = wave_numbers(xi, k_perp, eps, mu, c);
  const double qe = w.q_l * eps;
  const double qm = w.q_l * mu;
  return {.r_tm = (qe - w.k_mu_tr) / (qe + w.k_mu_tr),
          .r_te = (qm - w.k_mu_tr) / (qm + w.k_mu_tr),
          .l = 0,
          .k_perp = k_perp};
}

ReflectionPair refl_fresnel(long l, double k_perp, double eps_l, double mu_l, const MatsubaraContext& ctx) {
  require_l_positive(l, "refl_fresnel");
  require_k(k_perp, "refl_fresnel");
  if (!(eps_l >= 1.0)) throw ValidationError("refl_fresnel: eps_l must be >= 1");
  if (!(mu_l >= 1.0)) throw ValidationError("refl_fresnel: mu_l must be >= 1");
  auto r = refl_fresnel_at(matsubara_xi(l, ctx), k_perp, eps_l, mu_l, ctx.c);
  r.l = l;
  return r;
}

ReflectionPair reflection(long l, double k_perp, const MaterialModel& m, const MatsubaraContext& ctx,
                          double background) {
  if (l == 0) {
    return m.variant == Variant::NonlocalAlt ? refl_zero_freq(k_perp, m, ctx)
                                             : refl_zero_freq_local(k_perp, m, ctx);
  }
  const double xi = matsubara_xi(l, ctx);
  const double mu = mu_at(l, m);
  ReflectionPair r;
  switch (m.variant) {
    case Variant::Drude:
      r = refl_fresnel_at(xi, k_perp, eps_drude(xi, m, background), mu, ctx.c);
      break;
    case Variant::Plasma:
      r = refl_fresnel_at(xi, k_perp, eps_plasma(xi, m, background), mu, ctx.c);
      break;
    case Variant::NonlocalAlt:
      r = refl_nonlocal_closed_at(xi, k_perp, eps_transverse_nl(xi, k_perp, m, background),
                                  eps_longitudinal_nl(xi, k_perp, m, background), mu, ctx.c);
      break;
  }
  r.l = l;
  return r;
}

ReflectionPair reflection(long l, double k_perp, const MaterialModel& m, const MatsubaraContext& ctx) {
  return reflection(l, k_perp, m, ctx, l == 0 ? 1.0 : background_permittivity(matsubara_xi(l, ctx), m));
}

}  // namespace casimir
