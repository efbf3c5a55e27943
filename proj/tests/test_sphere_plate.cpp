#include <doctest.h>

#include <cmath>
#include <limits>
#include <sstream>

#include "casimir/errors.hpp"
#include "casimir/sphere_plate.hpp"

using namespace casimir;

namespace {

const MatsubaraContext room{};

GeometryParams sphere(double radius = 61.71e-6) {
  GeometryParams g;
  g.radius = radius;
  g.delta_s = 1.5e-9;
  g.delta_p = 1.4e-9;
  return g;
}

void quiet(std::string_view) {}

ExperimentDataset synthetic(const std::vector<double>& as, const std::function<double(double)>& grad, double err) {
  ExperimentDataset d;
  for (double a : as) d.rows.push_back({a, grad(a), err});
  return d;
}

}  // namespace

TEST_CASE("PFA gradient") {
  const auto g = sphere();
  CHECK(gradient_pfa(-1.0, 300e-9, g) == doctest::Approx(2.0 * std::numbers::pi * 61.71e-6).epsilon(1e-15));
  CHECK(gradient_pfa(-1.0, 300e-9, g) == doctest::Approx(3.877e-4).epsilon(1e-4));
  CHECK(gradient_pfa(-1.0, 300e-9, sphere(2.0 * 61.71e-6)) == 2.0 * gradient_pfa(-1.0, 300e-9, g));
  CHECK_THROWS_AS(gradient_pfa(-1.0, 7e-6, g), ValidationError);
  CHECK_THROWS_AS(gradient_pfa(-1.0, 0.0, g), ValidationError);

  const auto ni = nickel(Variant::NonlocalAlt);
  const double p = pressure(PressureQuery{.separation = 300e-9, .model = ni}, room).pressure;
  const double grad = gradient_pfa(300e-9, 300.0, ni, g, room);
  CHECK(grad == -2.0 * std::numbers::pi * g.radius * p);
  CHECK(grad > 0.0);
}

TEST_CASE("roughness correction") {
  auto smooth = sphere();
  smooth.delta_s = smooth.delta_p = 0.0;
  CHECK(apply_roughness(2.5, 300e-9, smooth) == 2.5);
  const auto g = sphere();
  CHECK(std::abs(roughness_factor(300e-9, g) - (1.0 + 4.68e-4)) <= 1e-6);
  const double c1 = roughness_factor(300e-9, g) - 1.0;
  const double c2 = roughness_factor(600e-9, g) - 1.0;
  CHECK(c2 == doctest::Approx(c1 / 4.0).epsilon(1e-12));
  double previous = std::numeric_limits<double>::infinity();
  for (double a = 20e-9; a < 2e-6; a *= 1.2) {
    const double corr = roughness_factor(a, g) - 1.0;
    CHECK(corr < previous);
    previous = corr;
  }
  CHECK_THROWS_AS(roughness_factor(15e-9, g), ValidationError);
}

TEST_CASE("beyond-PFA correction") {
  auto g = sphere(100e-6);
  CHECK(apply_pfa_correction(3.0, 500e-9, g, quiet) == 3.0);
  g.theta_table = {{100e-9, -1.0}, {1e-6, -1.0}};
  CHECK(apply_pfa_correction(1.0, 500e-9, g, quiet) == doctest::Approx(0.995).epsilon(1e-15));

  g.theta_table = {{200e-9, 0.2}, {400e-9, -0.6}, {800e-9, 0.4}};
  // hand interpolation
  CHECK(theta_at(300e-9, g, quiet) == doctest::Approx(-0.2).epsilon(1e-14));
  CHECK(theta_at(700e-9, g, quiet) == doctest::Approx(0.15).epsilon(1e-14));
  CHECK(theta_at(400e-9, g, quiet) == doctest::Approx(-0.6).epsilon(1e-14));

  std::vector<std::string> warnings;
  auto sink = [&](std::string_view w) { warnings.emplace_back(w); };
  CHECK(theta_at(100e-9, g, sink) == 0.2);
  CHECK(theta_at(900e-9, g, sink) == 0.4);
  CHECK(theta_at(800e-9, g, sink) == 0.4);
  CHECK(warnings.size() == 2);

  g.theta_table = {{200e-9, 1.5}};
  CHECK_THROWS_AS(g.validate(), ValidationError);
}

TEST_CASE("correction order is immaterial at this size") {
  auto g = sphere();
  g.theta_table = {{100e-9, -1.0}, {1e-6, 1.0}};
  for (double a : {223e-9, 300e-9, 420e-9}) {
    const double pfa = gradient_pfa(-1.0, a, g);
    const double canonical = theory_gradient(-1.0, a, g, quiet);
    const double swapped = apply_roughness(apply_pfa_correction(pfa, a, g, quiet), a, g);
    CHECK(std::abs(canonical - swapped) <= 1e-5 * std::abs(canonical));
  }
}

TEST_CASE("comparison against synthetic data") {
  const auto g = sphere();
  const std::vector<double> as{223e-9, 260e-9, 300e-9, 350e-9, 420e-9};
  auto model = [](double a) { return 1e-3 * std::pow(223e-9 / a, 4.0); };

  const auto self = compare(synthetic(as, model, 2e-7), model, 0.01);
  for (const auto& row : self) {
    CHECK(row.delta == 0.0);
    CHECK(row.inside_ci);
    CHECK(row.ci_halfwidth == doctest::Approx(std::hypot(2e-7, 0.01 * model(row.a))).epsilon(1e-15));
  }

  ExperimentDataset offset = synthetic(as, model, 2e-7);
  for (std::size_t i = 0; i < offset.rows.size(); ++i) offset.rows[i].grad += 3.0 * self[i].ci_halfwidth;
  for (const auto& row : compare(offset, model, 0.01)) CHECK_FALSE(row.inside_ci);

  // shifting the data shifts every difference by the opposite amount
  const double shift = 1e-5;
  ExperimentDataset shifted = synthetic(as, model, 2e-7);
  for (auto& row : shifted.rows) row.grad += shift;
  const auto moved = compare(shifted, model, 0.0);
  for (std::size_t i = 0; i < moved.size(); ++i) {
    CHECK(std::abs(moved[i].delta - (self[i].delta - shift)) <= 1e-18);
    CHECK(moved[i].inside_ci == (std::abs(moved[i].delta) <= moved[i].ci_halfwidth));
  }

  CHECK_THROWS_AS(compare(synthetic(as, model, 2e-7), model, -0.1), ValidationError);
}

TEST_CASE("Drude-generated data against the nonlocal theory") {
  const auto g = sphere();
  const std::vector<double> as{223e-9, 260e-9, 300e-9, 350e-9, 420e-9};
  auto gradient_of = [&](Variant v) {
    return [&g, v](double a) {
      const auto p = pressure(PressureQuery{.separation = a, .model = nickel(v)}, room).pressure;
      return theory_gradient(p, a, g, quiet);
    };
  };
  const auto data = synthetic(as, gradient_of(Variant::Drude), 1e-7);
  const auto rows = compare(data, gradient_of(Variant::NonlocalAlt), 0.0);
  for (const auto& row : rows) CHECK(row.delta < 0.0);

  const auto direct = compare(data, 300.0, nickel(Variant::NonlocalAlt), g, room, 0.0);
  for (std::size_t i = 0; i < rows.size(); ++i) CHECK(direct[i].delta == rows[i].delta);
}

TEST_CASE("experiment and theta readers") {
  std::istringstream exp("# measured\na_nm,grad_uN_per_m,err_uN_per_m\n223,1.25,0.02\n300,0.5,0.01\n");
  const auto d = read_experiment(exp);
  REQUIRE(d.rows.size() == 2);
  CHECK(d.rows[0].a == doctest::Approx(223e-9).epsilon(1e-15));
  CHECK(d.rows[0].grad == doctest::Approx(1.25e-6).epsilon(1e-15));
  CHECK(d.rows[1].err == doctest::Approx(1e-8).epsilon(1e-15));

  std::istringstream unsorted("a_nm,grad_uN_per_m,err_uN_per_m\n300,1,0.1\n223,1,0.1\n");
  try {
    read_experiment(unsorted, "exp.csv");
    FAIL("expected an error");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("exp.csv:3") != std::string::npos);
  }
  std::istringstream zero_err("a_nm,grad_uN_per_m,err_uN_per_m\n300,1,0\n");
  CHECK_THROWS_AS(read_experiment(zero_err), ValidationError);

  std::istringstream theta("a_nm,theta\n200,0.5\n400,-0.25\n");
  const auto t = read_theta_table(theta);
  CHECK(t.size() == 2);
  CHECK(t[1].a == doctest::Approx(400e-9).epsilon(1e-15));
  std::istringstream big("a_nm,theta\n200,1.5\n");
  CHECK_THROWS_AS(read_theta_table(big), ValidationError);
}
