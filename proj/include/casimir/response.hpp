#pragma once

#include <istream>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "casimir/constants.hpp"

namespace casimir {

enum class Variant { Drude, Plasma, NonlocalAlt };

std::string_view to_string(Variant v);
/// Accepts "drude", "plasma", "nonlocal" (also "nonlocal_alt").
Variant parse_variant(std::string_view name);

/// Tabulated imaginary part of the measured permittivity on the real axis.
/// Rows are strictly increasing in omega [rad/s]; im_eps >= 0.
class InterbandTable {
 public:
  InterbandTable(std::vector<double> omega, std::vector<double> im_eps);

  const std::vector<double>& omega() const { return omega_; }
  const std::vector<double>& im_eps() const { return im_eps_; }
  std::size_t size() const { return omega_.size(); }

  /// Linear interpolation in omega; zero outside the tabulated range.
  double interpolate(double omega) const;

 private:
  std::vector<double> omega_;
  std::vector<double> im_eps_;
};

/// Reads the "omega_ev,im_eps" CSV format ('#' starts a comment line).
InterbandTable read_interband_table(std::istream& in);
InterbandTable read_interband_table_file(const std::string& path);

/// Free-electron parameters of the plate metal plus the response variant.
struct MaterialModel {
  double omega_p = 0.0;  // rad/s
  double gamma = 0.0;    // rad/s
  double mu0 = 1.0;      // static permeability
  double v_t = 0.0;      // m/s
  double v_l = 0.0;      // m/s
  std::shared_ptr<const InterbandTable> interband;
  Variant variant = Variant::Drude;
  double kk_tail_tol = 1e-3;  // see kramers_kronig()

  void validate() const;
};

/// Nickel at room temperature: hbar*omega_p = 4.89 eV, hbar*gamma = 0.0436 eV,
/// mu0 = 110, v_F = 1.31e6 m/s and v_t = v_l = 7 v_F.
MaterialModel nickel(Variant variant);
inline constexpr double kNickelFermiVelocity = 1.31e6;

struct MatsubaraContext {
  double temperature = 300.0;  // K
  double hbar = si::hbar;
  double k_boltzmann = si::k_boltzmann;
  double c = si::c;
  double rel_tol = 1e-8;
  long l_max_cap = 1000000;

  void validate() const;
};

/// xi_l = 2 pi k_B T l / hbar.
double matsubara_xi(long l, const MatsubaraContext& ctx);

/// Static permeability enters only the zero-frequency term; mu(i xi_l) = 1 for l >= 1.
double mu_at(long l, const MaterialModel& m);

/// Background permittivity replacing the vacuum "1" of the free-electron
/// functions: 1 without interband data, eps_core_kk() with it.
double background_permittivity(double xi, const MaterialModel& m);

// The two-argument forms evaluate the background themselves (a Kramers-Kronig
// integral when interband data is present). The three-argument forms take a
// precomputed background so hot loops can evaluate it once per frequency.
double eps_drude(double xi, const MaterialModel& m);
double eps_drude(double xi, const MaterialModel& m, double background);
double eps_plasma(double xi, const MaterialModel& m);
double eps_plasma(double xi, const MaterialModel& m, double background);
double eps_transverse_nl(double xi, double k_perp, const MaterialModel& m);
double eps_transverse_nl(double xi, double k_perp, const MaterialModel& m, double background);
double eps_longitudinal_nl(double xi, double k_perp, const MaterialModel& m);
double eps_longitudinal_nl(double xi, double k_perp, const MaterialModel& m, double background);

struct KramersKronigResult {
  double value = 1.0;          // eps_core(i xi)
  double tail_fraction = 0.0;  // share of the dispersion integral from the extrapolated tail
  double quad_error = 0.0;
};

/// Share of the dispersion integral the extrapolated high-frequency tail may carry.
inline constexpr double kDefaultKkTailTol = 1e-3;

/// eps_core(i xi) = 1 + (2/pi) Int_0^inf w eps''_ib(w) / (w^2 + xi^2) dw with
/// eps''_ib = max(0, table(w) - Drude eps''(w)). Zero below the table, cubic
/// (w_max/w)^3 decay above it. Throws ValidationError when the tail share
/// exceeds tail_tol.
KramersKronigResult kramers_kronig(double xi, const InterbandTable& table, const MaterialModel& m,
                                   double tail_tol = kDefaultKkTailTol);
double eps_core_kk(double xi, const InterbandTable& table, const MaterialModel& m,
                   double tail_tol = kDefaultKkTailTol);

}  // namespace casimir
