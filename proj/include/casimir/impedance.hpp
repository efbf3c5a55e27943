#pragma once

#include <functional>

#include "casimir/quadrature.hpp"
#include "casimir/response.hpp"

namespace casimir {

/// Surface impedances at (i xi_l, k_perp); dimensionless, real on the imaginary axis.
struct ImpedancePair {
  double z_tm = 0.0;
  double z_te = 0.0;
  long l = 0;
  double k_perp = 0.0;
};

struct WaveNumbers {
  double k_perp = 0.0;
  double q_l = 0.0;      // sqrt(k_perp^2 + xi^2/c^2)
  double k_mu_tr = 0.0;  // sqrt(k_perp^2 + mu eps_t xi^2/c^2)
};

WaveNumbers wave_numbers(double xi, double k_perp, double eps_t, double mu, double c);

/// A spatially dispersive medium sampled at one imaginary frequency. eps_t and
/// eps_l receive the full wave-vector magnitude |k| = sqrt(k_perp^2 + k_z^2).
struct DispersiveMedium {
  std::function<double(double)> eps_t;
  std::function<double(double)> eps_l;
  double mu = 1.0;
};

// Frequency-level primitives. The kz-integral forms work for any eps(|k|);
// the closed forms assume eps depends on k_perp only.
quad::Result z_te_integral_at(double xi, double k_perp, const DispersiveMedium& medium, double c,
                              const quad::Options& opts = {});
quad::Result z_tm_integral_at(double xi, double k_perp, const DispersiveMedium& medium, double c,
                              const quad::Options& opts = {});
double z_te_closed_at(double xi, double k_perp, double eps_t, double mu, double c);
double z_tm_closed_at(double xi, double k_perp, double eps_t, double eps_l, double mu, double c);

// Model-level operations at Matsubara index l >= 1. The integral forms throw
// ConvergenceError when the 1e-10 quadrature tolerance is not met.
double z_te_integral(long l, double k_perp, const MaterialModel& m, const MatsubaraContext& ctx);
double z_tm_integral(long l, double k_perp, const MaterialModel& m, const MatsubaraContext& ctx);
double z_te_closed(long l, double k_perp, const MaterialModel& m, const MatsubaraContext& ctx);
double z_tm_closed(long l, double k_perp, const MaterialModel& m, const MatsubaraContext& ctx);

/// Local (eps_t = eps_l = eps_l) impedances.
ImpedancePair z_local(long l, double k_perp, double eps_l, double mu_l, const MatsubaraContext& ctx);

/// Closed-form impedances of the model's own variant (local forms for Drude and
/// plasma, nonlocal closed forms for the alternative response).
ImpedancePair impedance(long l, double k_perp, const MaterialModel& m, const MatsubaraContext& ctx);

}  // namespace casimir
