#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

const std::string kCli = CASIMIR_CLI_PATH;

const std::string kConfig = R"(
[material]
variant = all
omega_p_ev = 4.89
gamma_ev = 0.0436
mu0 = 110
v_f_m_s = 1.31e6
v_t_over_vf = 7
v_l_over_vf = 7

[sweep]
a_min_nm = 4000
a_max_nm = 6000
points = 2
spacing = linear
)";

struct Workdir {
  fs::path dir;
  Workdir() : dir(fs::temp_directory_path() / ("casimir_cli_" + std::to_string(::getpid()))) {
    fs::create_directories(dir);
  }
  ~Workdir() { fs::remove_all(dir); }
  fs::path write(const std::string& name, const std::string& text) const {
    std::ofstream(dir / name) << text;
    return dir / name;
  }
};

int run(const std::string& args) {
  const std::string cmd = kCli + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("successful runs exit with 0 and write the requested file") {
  Workdir w;
  const auto cfg = w.write("ni.cfg", kConfig);
  const auto out = w.dir / "ratio.csv";
  CHECK(run("ratio --config " + cfg.string() + " --output " + out.string()) == 0);
  CHECK(slurp(out).starts_with("a_m,p_drude_pa,p_plasma_pa,p_nonlocal_pa,nonlocal/plasma"));

  const auto again = w.dir / "ratio2.csv";
  CHECK(run("ratio --config " + cfg.string() + " --output " + again.string()) == 0);
  CHECK(slurp(again) == slurp(out));

  const auto single = w.dir / "p.csv";
  CHECK(run("pressure --config " + cfg.string() + " --model plasma --output " + single.string()) == 0);
  const auto text = slurp(single);
  CHECK(text.find("plasma") != std::string::npos);
  CHECK(text.find("drude") == std::string::npos);

  CHECK(run("reflect-dump --config " + cfg.string()) == 0);
  CHECK(run("impedance-dump --config " + cfg.string() + " --model nonlocal") == 0);
  CHECK(run("--help") == 0);
}

TEST_CASE("validation problems exit with 1") {
  Workdir w;
  const auto cfg = w.write("ni.cfg", kConfig);
  CHECK(run("pressure") == 1);
  CHECK(run("pressure --config " + (w.dir / "missing.cfg").string()) == 1);
  CHECK(run("pressure --config " + cfg.string() + " --model hydro") == 1);
  CHECK(run("frobnicate --config " + cfg.string()) == 1);
  const auto bad = w.write("bad.cfg", kConfig + "[run]\ntemprature_k = 4\n");
  CHECK(run("pressure --config " + bad.string()) == 1);
  CHECK(run("gradient --config " + cfg.string()) == 1);
  CHECK(run("compare --config " + cfg.string()) == 1);
  CHECK(run("impedance-dump --config " + cfg.string()) == 1);
}

TEST_CASE("numerical non-convergence exits with 2") {
  Workdir w;
  const auto cfg = w.write("tight.cfg", kConfig + "[run]\nquad_tol = 1e-17\n");
  CHECK(run("pressure --config " + cfg.string() + " --model drude") == 2);
}

TEST_CASE("compare reads the experiment file") {
  Workdir w;
  const auto cfg = w.write("geo.cfg", kConfig + "[geometry]\nradius_um = 61.71\ndelta_s_nm = 1.5\ndelta_p_nm = 1.4\n");
  const auto exp = w.write("exp.csv", "a_nm,grad_uN_per_m,err_uN_per_m\n300,1.0,0.05\n400,0.4,0.05\n");
  const auto out = w.dir / "cmp.csv";
  CHECK(run("compare --config " + cfg.string() + " --experiment " + exp.string() + " --output " + out.string()) == 0);
  const auto text = slurp(out);
  CHECK(text.starts_with("model,a_nm,grad_theory,delta,ci_halfwidth,inside_ci\n"));
  CHECK(text.find("# summary model=nonlocal") != std::string::npos);
  const auto malformed = w.write("bad.csv", "a_nm,grad_uN_per_m,err_uN_per_m\n300,one,0.05\n");
  CHECK(run("compare --config " + cfg.string() + " --experiment " + malformed.string()) == 1);
}
