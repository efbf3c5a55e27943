#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "casimir/commands.hpp"
#include "casimir/csv.hpp"
#include "casimir/errors.hpp"

using namespace casimir;

namespace {

const std::string kNickel = R"(
[material]
omega_p_ev = 4.89
gamma_ev = 0.0436
mu0 = 110
v_f_m_s = 1.31e6
v_t_over_vf = 7
v_l_over_vf = 7
)";

RunConfig config(const std::string& sweep, const std::string& extra = "") {
  return parse_config(kNickel + "[sweep]\n" + sweep + extra);
}

csv::RecordTable records(const std::string& text) {
  std::istringstream in(text);
  return csv::read_records(in, "output");
}

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / ("casimir_test_" + name);
  std::ofstream(path) << content;
  return path;
}

}  // namespace

TEST_CASE("one-point sweep gives one row per model") {
  const auto cfg = config("a_min_nm = 4000\na_max_nm = 5000\npoints = 1\n");
  const auto t = records(run_pressure_sweep(cfg));
  CHECK(t.header == std::vector<std::string>{"a_m", "model", "pressure_pa", "terms_used", "tail_bound", "quad_error"});
  REQUIRE(t.rows.size() == 3);
  CHECK(t.rows[0][1] == "drude");
  CHECK(t.rows[2][1] == "nonlocal");
  CHECK(t.rows[0][0] == "4.00000000000e-06");
}

TEST_CASE("log sweep at micrometre separations decays per model") {
  const auto cfg = config("a_min_nm = 2000\na_max_nm = 7000\npoints = 26\nspacing = log\n");
  const auto t = records(run_pressure_sweep(cfg));
  REQUIRE(t.rows.size() == 78);
  for (std::size_t m = 0; m < 3; ++m) {
    double previous = -std::numeric_limits<double>::infinity();
    for (std::size_t i = m; i < t.rows.size(); i += 3) {
      const double p = csv::parse_double(t.rows[i][2], "p");
      CHECK(p < 0.0);
      CHECK(p > previous);
      previous = p;
    }
  }
}

TEST_CASE("ratio columns at 4 um") {
  const auto cfg = config("a_min_nm = 4000\na_max_nm = 6000\npoints = 2\nspacing = linear\n");
  const auto t = records(run_ratio(cfg));
  CHECK(t.header == std::vector<std::string>{"a_m", "p_drude_pa", "p_plasma_pa", "p_nonlocal_pa", "nonlocal/plasma",
                                             "nonlocal/drude", "plasma/drude"});
  CHECK(csv::parse_double(t.rows[0][4], "r") == doctest::Approx(0.70).epsilon(0.02 / 0.70));
  CHECK(csv::parse_double(t.rows[0][5], "r") == doctest::Approx(0.57).epsilon(0.02 / 0.57));
}

TEST_CASE("outputs are deterministic and independent of threading") {
  auto cfg = config("a_min_nm = 150\na_max_nm = 900\npoints = 5\n");
  const auto serial = run_pressure_sweep(cfg);
  CHECK(run_pressure_sweep(cfg) == serial);
  cfg.threads = 4;
  CHECK(run_pressure_sweep(cfg) == serial);
  CHECK(run_ratio(cfg) == run_ratio(cfg));
  CHECK(run_reflect_dump(cfg) == run_reflect_dump(cfg));
}

TEST_CASE("emitted CSV parses with the numeric reader") {
  const auto cfg = config("a_min_nm = 500\na_max_nm = 900\npoints = 2\n");
  auto single = cfg;
  single.material.variant = "nonlocal";
  std::istringstream imp(run_impedance_dump(single));
  const auto z = csv::read_numeric(imp, {"l", "k_perp", "z_tm", "z_te"}, "impedance");
  CHECK(z.rows.size() == 16);
  for (const auto& row : z.rows) {
    CHECK(row[2] > 0.0);
    CHECK(row[3] > 0.0);
  }
  CHECK(z.rows[1][1] == doctest::Approx(0.1 / 500e-9).epsilon(1e-11));
  CHECK_THROWS_AS(run_impedance_dump(cfg), ValidationError);

  auto with_l0 = single;
  with_l0.dump.l_values = {0, 1};
  CHECK_THROWS_AS(run_impedance_dump(with_l0), ValidationError);
  const auto refl = records(run_reflect_dump(with_l0));
  CHECK(refl.header == std::vector<std::string>{"model", "l", "k_perp", "r_tm", "r_te"});
  CHECK(refl.rows.size() == 8);
  for (const auto& row : refl.rows) CHECK(std::abs(csv::parse_double(row[3], "r")) <= 1.0);
}

TEST_CASE("gradient needs geometry") {
  const auto cfg = config("a_min_nm = 300\na_max_nm = 400\npoints = 2\n");
  CHECK_THROWS_AS(run_gradient(cfg), ValidationError);
  const auto geo = config("a_min_nm = 300\na_max_nm = 400\npoints = 2\n",
                          "[geometry]\nradius_um = 61.71\ndelta_s_nm = 1.5\ndelta_p_nm = 1.4\n");
  const auto t = records(run_gradient(geo));
  REQUIRE(t.rows.size() == 6);
  const double p = csv::parse_double(t.rows[0][2], "p");
  const double pfa = csv::parse_double(t.rows[0][3], "pfa");
  const double theory = csv::parse_double(t.rows[0][4], "theory");
  CHECK(pfa == doctest::Approx(-2.0 * std::numbers::pi * 61.71e-6 * p).epsilon(1e-11));
  CHECK(theory / pfa == doctest::Approx(1.0 + 4.68e-4).epsilon(1e-6));

  const auto too_far = config("a_min_nm = 300\na_max_nm = 7000\npoints = 2\n", "[geometry]\nradius_um = 61.71\n");
  CHECK_THROWS_AS(run_gradient(too_far), ValidationError);
}

TEST_CASE("compare pipeline") {
  const std::string geometry = "[geometry]\nradius_um = 61.71\ndelta_s_nm = 1.5\ndelta_p_nm = 1.4\nerr_theory_rel = 0\n";
  auto cfg = config("a_min_nm = 223\na_max_nm = 420\npoints = 4\nspacing = linear\n", geometry);
  cfg.material.variant = "nonlocal";

  // synthetic measurement from the nonlocal theory itself
  const auto grad = records(run_gradient(cfg));
  std::string exact = "a_nm,grad_uN_per_m,err_uN_per_m\n";
  std::string offset = exact;
  for (const auto& row : grad.rows) {
    const double a_nm = csv::parse_double(row[0], "a") * 1e9;
    const double g = csv::parse_double(row[4], "g") * 1e6;
    exact += csv::format_exact(a_nm) + "," + csv::format_exact(g) + ",0.001\n";
    offset += csv::format_exact(a_nm) + "," + csv::format_exact(g + 0.003) + ",0.001\n";
  }
  const auto exact_path = temp_file("exact.csv", exact);
  const auto offset_path = temp_file("offset.csv", offset);

  const auto self = run_gradient_compare(cfg, exact_path.string());
  REQUIRE(self.counts.size() == 1);
  CHECK(self.counts[0].inside == 4);
  CHECK(self.counts[0].outside == 0);
  CHECK(self.csv.find("# summary model=nonlocal inside=4 outside=0 total=4") != std::string::npos);

  const auto off = run_gradient_compare(cfg, offset_path.string());
  CHECK(off.counts[0].inside == 0);
  CHECK(off.counts[0].outside == 4);

  // all three models: the summary counts equal a recount of the row flags
  cfg.material.variant = "all";
  const auto mixed = run_gradient_compare(cfg, exact_path.string());
  const auto t = records(mixed.csv);
  CHECK(t.header == std::vector<std::string>{"model", "a_nm", "grad_theory", "delta", "ci_halfwidth", "inside_ci"});
  REQUIRE(mixed.counts.size() == 3);
  for (const auto& c : mixed.counts) {
    int inside = 0, outside = 0;
    for (const auto& row : t.rows) {
      if (row[0] != c.model) continue;
      const bool flag = row[5] == "1";
      CHECK(flag == (std::abs(csv::parse_double(row[3], "d")) <= csv::parse_double(row[4], "ci")));
      (flag ? inside : outside) += 1;
    }
    CHECK(c.inside == inside);
    CHECK(c.outside == outside);
  }
  CHECK(mixed.counts[2].inside == 4);

  std::filesystem::remove(exact_path);
  std::filesystem::remove(offset_path);

  const auto bad = temp_file("bad.csv", "a_nm,grad_uN_per_m,err_uN_per_m\n300,1,0.1\n250,1,0.1\n");
  try {
    run_gradient_compare(cfg, bad.string());
    FAIL("expected an error");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find(":3") != std::string::npos);
  }
  std::filesystem::remove(bad);
  CHECK_THROWS_AS(run_gradient_compare(cfg, "/nonexistent/exp.csv"), ValidationError);
}
