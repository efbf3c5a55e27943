#include "casimir/response.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <string>

#include "casimir/csv.hpp"
#include "casimir/errors.hpp"
#include "casimir/quadrature.hpp"

namespace casimir {

std::string_view to_string(Variant v) {
  switch (v) {
    case Variant::Drude: return "drude";
    case Variant::Plasma: return "plasma";
    case Variant::NonlocalAlt: return "nonlocal";
  }
  return "unknown";
}

Variant parse_variant(std::string_view name) {
  if (name == "drude") return Variant::Drude;
  if (name == "plasma") return Variant::Plasma;
  if (name == "nonlocal" || name == "nonlocal_alt") return Variant::NonlocalAlt;
  throw ValidationError("unknown response variant '" + std::string(name) +
                        "' (expected drude, plasma or nonlocal)");
}

// ---------------------------------------------------------------------------
// InterbandTable

InterbandTable::InterbandTable(std::vector<double> omega, std::vector<double> im_eps)
    : omega_(std::move(omega)), im_eps_(std::move(im_eps)) {
  if (omega_.size() != im_eps_.size()) {
    throw ValidationError("interband table: omega and im_eps differ in length");
  }
  if (omega_.size() < 2) throw ValidationError("interband table: at least 2 rows required");
  for (std::size_t i = 0; i < omega_.size(); ++i) {
    if (!(omega_[i] > 0.0)) throw ValidationError("interband table: omega must be positive");
    if (i > 0 && !(omega_[i] > omega_[i - 1])) {
      throw ValidationError("interband table: omega not strictly increasing at row " +
                            std::to_string(i + 1));
    }
    if (!(im_eps_[i] >= 0.0)) {
      throw ValidationError("interband table: negative im_eps at row " + std::to_string(i + 1));
    }
  }
}

double InterbandTable::interpolate(double omega) const {
  if (omega < omega_.front() || omega > omega_.back()) return 0.0;
  const auto it = std::upper_bound(omega_.begin(), omega_.end(), omega);
  if (it == omega_.end()) return im_eps_.back();
  const auto i = static_cast<std::size_t>(it - omega_.begin());
  const double t = (omega - omega_[i - 1]) / (omega_[i] - omega_[i - 1]);
  return im_eps_[i - 1] + t * (im_eps_[i] - im_eps_[i - 1]);
}

InterbandTable read_interband_table(std::istream& in) {
  const auto csv = csv::read_numeric(in, {"omega_ev", "im_eps"}, "interband table");
  std::vector<double> omega, im;
  omega.reserve(csv.rows.size());
  im.reserve(csv.rows.size());
  for (std::size_t i = 0; i < csv.rows.size(); ++i) {
    const auto& row = csv.rows[i];
    if (!omega.empty() && !(ev_to_rad_per_s(row[0]) > omega.back())) {
      throw ValidationError("interband table:" + std::to_string(csv.line_numbers[i]) +
                            ": omega_ev not strictly increasing");
    }
    omega.push_back(ev_to_rad_per_s(row[0]));
    im.push_back(row[1]);
  }
  return InterbandTable(std::move(omega), std::move(im));
}

InterbandTable read_interband_table_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open interband table '" + path + "'");
  return read_interband_table(in);
}

// ---------------------------------------------------------------------------
// Model and context

void MaterialModel::validate() const {
  if (!(omega_p > 0.0)) throw ValidationError("material: omega_p must be > 0");
  if (!(gamma >= 0.0)) throw ValidationError("material: gamma must be >= 0");
  if (!(mu0 >= 1.0)) throw ValidationError("material: mu0 must be >= 1");
  if (!(v_t >= 0.0 && v_t < si::c)) throw ValidationError("material: v_t must lie in [0, c)");
  if (!(v_l >= 0.0 && v_l < si::c)) throw ValidationError("material: v_l must lie in [0, c)");
}

MaterialModel nickel(Variant variant) {
  MaterialModel m;
  m.omega_p = ev_to_rad_per_s(4.89);
  m.gamma = ev_to_rad_per_s(0.0436);
  m.mu0 = 110.0;
  m.v_t = 7.0 * kNickelFermiVelocity;
  m.v_l = 7.0 * kNickelFermiVelocity;
  m.variant = variant;
  return m;
}

void MatsubaraContext::validate() const {
  if (!(temperature > 0.0)) throw ValidationError("context: temperature must be > 0");
  if (!(rel_tol > 0.0 && rel_tol <= 1e-3)) throw ValidationError("context: rel_tol must lie in (0, 1e-3]");
  if (l_max_cap < 10) throw ValidationError("context: l_max_cap must be >= 10");
}

double matsubara_xi(long l, const MatsubaraContext& ctx) {
  if (l < 0) throw ValidationError("matsubara_xi: l must be >= 0");
  return 2.0 * pi * ctx.k_boltzmann * ctx.temperature * static_cast<double>(l) / ctx.hbar;
}

double mu_at(long l, const MaterialModel& m) {
  if (l < 0) throw ValidationError("mu_at: l must be >= 0");
  return l == 0 ? m.mu0 : 1.0;
}

// ---------------------------------------------------------------------------
// Permittivities on the imaginary axis

namespace {

void require_positive_xi(double xi, const char* what) {
  if (!(xi > 0.0)) {
    throw ValidationError(std::string(what) +
                          ": xi must be > 0 (the zero-frequency term is handled analytically)");
  }
}

// omega_p^2 / (xi (xi + gamma)), the Drude excess over the background.
double drude_excess(double xi, const MaterialModel& m) {
  return m.omega_p * m.omega_p / (xi * (xi + m.gamma));
}

}  // namespace

double background_permittivity(double xi, const MaterialModel& m) {
  return m.interband ? eps_core_kk(xi, *m.interband, m, m.kk_tail_tol) : 1.0;
}

double eps_drude(double xi, const MaterialModel& m) {
  require_positive_xi(xi, "eps_drude");
  return eps_drude(xi, m, background_permittivity(xi, m));
}

double eps_drude(double xi, const MaterialModel& m, double background) {
  require_positive_xi(xi, "eps_drude");
  return background + drude_excess(xi, m);
}

double eps_plasma(double xi, const MaterialModel& m) {
  require_positive_xi(xi, "eps_plasma");
  return eps_plasma(xi, m, background_permittivity(xi, m));
}

double eps_plasma(double xi, const MaterialModel& m, double background) {
  require_positive_xi(xi, "eps_plasma");
  return background + m.omega_p * m.omega_p / (xi * xi);
}

double eps_transverse_nl(double xi, double k_perp, const MaterialModel& m) {
  require_positive_xi(xi, "eps_transverse_nl");
  return eps_transverse_nl(xi, k_perp, m, background_permittivity(xi, m));
}

double eps_transverse_nl(double xi, double k_perp, const MaterialModel& m, double background) {
  require_positive_xi(xi, "eps_transverse_nl");
  if (!(k_perp >= 0.0)) throw ValidationError("eps_transverse_nl: k_perp must be >= 0");
  return background + drude_excess(xi, m) * (1.0 + m.v_t * k_perp / xi);
}

double eps_longitudinal_nl(double xi, double k_perp, const MaterialModel& m) {
  require_positive_xi(xi, "eps_longitudinal_nl");
  return eps_longitudinal_nl(xi, k_perp, m, background_permittivity(xi, m));
}

double eps_longitudinal_nl(double xi, double k_perp, const MaterialModel& m, double background) {
  require_positive_xi(xi, "eps_longitudinal_nl");
  if (!(k_perp >= 0.0)) throw ValidationError("eps_longitudinal_nl: k_perp must be >= 0");
  return background + drude_excess(xi, m) / (1.0 + m.v_l * k_perp / xi);
}

// ---------------------------------------------------------------------------
// Kramers-Kronig ingestion of the interband part

namespace {

struct Dispersion {
  double body = 0.0;   // tabulated range
  double tail = 0.0;   // extrapolated range above the table
  double error = 0.0;
};

// Int_0^inf w eps''_ib(w) / (w^2 + xi^2) dw split into table and tail parts.
Dispersion dispersion_integral(double xi, const InterbandTable& table, const MaterialModel& m) {
  const double wp2 = m.omega_p * m.omega_p;
  const double g = m.gamma;
  auto interband_im = [&](double w) {
    const double drude_im = wp2 * g / (w * (w * w + g * g));
    return std::max(0.0, table.interpolate(w) - drude_im);
  };

  // Integrate in t = ln(w): w eps''/(w^2+xi^2) dw = w^2 eps''/(w^2+xi^2) dt.
  std::vector<double> breaks;
  breaks.reserve(table.size());
  for (double w : table.omega()) breaks.push_back(std::log(w));
  const quad::Options opts{.abs_tol = 1e-9, .rel_tol = 1e-9, .max_panels = 50000};
  const auto body = quad::integrate(
      [&](double t) {
        const double w = std::exp(t);
        return w * w * interband_im(w) / (w * w + xi * xi);
      },
      breaks, opts);
  if (!body.converged) {
    throw ConvergenceError("eps_core_kk: dispersion integral did not converge", body.value,
                           body.error);
  }

  // Above the table eps''_ib(w) = eps''_ib(w_max) (w_max/w)^3; with u = w_max/w the
  // tail is eps''_ib(w_max) Int_0^1 u^2 / (1 + b^2 u^2) du = (b - atan b) / b^3, b = xi/w_max.
  const double w_max = table.omega().back();
  const double b = xi / w_max;
  double shape = 0.0;
  if (b < 1e-2) {
    const double b2 = b * b;
    shape = 1.0 / 3.0 - b2 / 5.0 + b2 * b2 / 7.0;
  } else {
    shape = (b - std::atan(b)) / (b * b * b);
  }
  return {body.value, interband_im(w_max) * shape, body.error};
}

}  // namespace

KramersKronigResult kramers_kronig(double xi, const InterbandTable& table, const MaterialModel& m,
                                   double tail_tol) {
  require_positive_xi(xi, "eps_core_kk");
  const auto d = dispersion_integral(xi, table, m);

  // The absolute tail is largest at xi = 0, where the whole integral is largest
  // too, so the table is judged by its static tail share. At finite xi the
  // relative share grows once xi passes the table edge while its absolute size
  // keeps shrinking.
  const auto d0 = dispersion_integral(0.0, table, m);
  const double static_total = d0.body + d0.tail;

  KramersKronigResult out;
  out.tail_fraction = static_total > 0.0 ? d0.tail / static_total : 0.0;
  out.value = 1.0 + (2.0 / pi) * (d.body + d.tail);
  out.quad_error = (2.0 / pi) * d.error;
  if (out.tail_fraction > tail_tol) {
    throw ValidationError("eps_core_kk: extrapolated tail carries " +
                          std::to_string(out.tail_fraction) +
                          " of the static dispersion integral; the table does not extend far enough");
  }
  return out;
}

double eps_core_kk(double xi, const InterbandTable& table, const MaterialModel& m, double tail_tol) {
  return kramers_kronig(xi, table, m, tail_tol).value;
}

}  // namespace casimir
