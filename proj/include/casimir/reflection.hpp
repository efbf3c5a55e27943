#pragma once

#include "casimir/impedance.hpp"
#include "casimir/response.hpp"

namespace casimir {

/// Amplitude reflection coefficients at (i xi_l, k_perp). Real on the imaginary axis.
struct ReflectionPair {
  double r_tm = 0.0;
  double r_te = 0.0;
  long l = 0;
  double k_perp = 0.0;
};

/// r_TM = (c q - xi Z_TM)/(c q + xi Z_TM), r_TE = (c q Z_TE - xi)/(c q Z_TE + xi).
ReflectionPair refl_from_impedance(const ImpedancePair& z, const MatsubaraContext& ctx);

/// Nonlocal coefficients at one frequency from sampled eps_t, eps_l and mu.
ReflectionPair refl_nonlocal_closed_at(double xi, double k_perp, double eps_t, double eps_l,
                                       double mu, double c);
ReflectionPair refl_nonlocal_closed(long l, double k_perp, const MaterialModel& m,
                                    const MatsubaraContext& ctx);

/// Exact xi -> 0 limit of the alternative nonlocal coefficients. Requires the
/// NonlocalAlt variant with gamma > 0. At k_perp = 0, r_TM = 1 and r_TE = -1
/// (or (mu0-1)/(mu0+1) when v_t = 0).
ReflectionPair refl_zero_freq(double k_perp, const MaterialModel& m, const MatsubaraContext& ctx);

/// xi -> 0 limits of the Fresnel coefficients for the Drude and plasma variants.
ReflectionPair refl_zero_freq_local(double k_perp, const MaterialModel& m, const MatsubaraContext& ctx);

ReflectionPair refl_fresnel_at(double xi, double k_perp, double eps, double mu, double c);
ReflectionPair refl_fresnel(long l, double k_perp, double eps_l, double mu_l, const MatsubaraContext& ctx);

/// Coefficients of the model's own variant, dispatching the l = 0 term to the
/// analytic limits. `background` is the precomputed background permittivity at
/// xi_l (ignored for l = 0).
ReflectionPair reflection(long l, double k_perp, const MaterialModel& m, const MatsubaraContext& ctx,
                          double background);
ReflectionPair reflection(long l, double k_perp, const MaterialModel& m, const MatsubaraContext& ctx);

}  // namespace casimir
