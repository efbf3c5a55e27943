#include "casimir/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "casimir/csv.hpp"
#include "casimir/errors.hpp"

namespace casimir {
namespace {

namespace pt = boost::property_tree;

const std::map<std::string, std::set<std::string>> kSchema = {
    {"material",
     {"variant", "omega_p_ev", "gamma_ev", "mu0", "v_t_over_vf", "v_l_over_vf", "v_f_m_s",
      "optical_data_path", "kk_tail_tol"}},
    {"sweep", {"a_min_nm", "a_max_nm", "points", "spacing"}},
    {"run", {"temperature_k", "series_tol", "quad_tol", "threads", "output_path"}},
    {"geometry", {"radius_um", "delta_s_nm", "delta_p_nm", "err_theory_rel", "theta_path", "experiment_path"}},
    {"dump", {"l_values", "k_perp_values"}},
};

class Section {
 public:
  Section(std::string name, const pt::ptree* tree) : name_(std::move(name)), tree_(tree) {}

  bool present() const { return tree_ != nullptr; }

  std::optional<std::string> raw(const std::string& key) const {
    if (!tree_) return std::nullopt;
    const auto child = tree_->get_child_optional(pt::ptree::path_type(key, '\0'));
    if (!child) return std::nullopt;
    return child->data();
  }

  std::string field(const std::string& key) const { return name_ + "." + key; }

  std::string required_raw(const std::string& key) const {
    auto v = raw(key);
    if (!v) throw ValidationError("config: missing required key " + field(key));
    return *v;
  }

  double number(const std::string& key, std::optional<double> fallback = std::nullopt) const {
    const auto v = raw(key);
    if (!v) {
      if (fallback) return *fallback;
      throw ValidationError("config: missing required key " + field(key));
    }
    return csv::parse_double(*v, "config: " + field(key));
  }

  long integer(const std::string& key, std::optional<long> fallback = std::nullopt) const {
    const auto v = raw(key);
    if (!v) {
      if (fallback) return *fallback;
      throw ValidationError("config: missing required key " + field(key));
    }
    return parse_long(*v, field(key));
  }

  static long parse_long(std::string_view token, const std::string& field) {
    token = csv::trim(token);
    long out = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), out);
    if (token.empty() || ec != std::errc{} || ptr != token.data() + token.size()) {
      throw ValidationError("config: " + field + ": not an integer: '" + std::string(token) + "'");
    }
    return out;
  }

 private:
  std::string name_;
  const pt::ptree* tree_;
};

void require(bool ok, const std::string& field, const std::string& rule) {
  if (!ok) throw ValidationError("config: " + field + " " + rule);
}

std::string resolve(const std::string& path, const std::string& base_dir) {
  if (base_dir.empty() || path.empty()) return path;
  const std::filesystem::path p(path);
  if (p.is_absolute()) return path;
  return (std::filesystem::path(base_dir) / p).lexically_normal().string();
}

std::string join_numbers(const std::vector<double>& values) {
  std::string out;
  for (double v : values) out += (out.empty() ? "" : ", ") + csv::format_exact(v);
  return out;
}

}  // namespace

RunConfig parse_config(const std::string& text, const std::string& base_dir) {
  pt::ptree tree;
  std::istringstream in(text);
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ValidationError("config: line " + std::to_string(e.line()) + ": " + e.message());
  }

  for (const auto& [section, body] : tree) {
    const auto known = kSchema.find(section);
    if (known == kSchema.end()) {
      if (body.empty()) throw ValidationError("config: key '" + section + "' outside any section");
      throw ValidationError("config: unknown section [" + section + "]");
    }
    if (body.empty() && !body.data().empty()) {
      throw ValidationError("config: key '" + section + "' outside any section");
    }
    for (const auto& [key, value] : body) {
      if (!known->second.contains(key)) {
        throw ValidationError("config: unknown key " + section + "." + key);
      }
    }
  }

  auto section = [&](const std::string& name) {
    const auto it = tree.find(name);
    return Section(name, it == tree.not_found() ? nullptr : &it->second);
  };

  RunConfig cfg;

  const auto mat = section("material");
  if (!mat.present()) throw ValidationError("config: missing section [material]");
  auto& m = cfg.material;
  m.variant = mat.raw("variant").value_or("all");
  if (m.variant != "all") {
    try {
      m.variant = std::string(to_string(parse_variant(m.variant)));
    } catch (const ValidationError&) {
      throw ValidationError("config: material.variant must be drude, plasma, nonlocal or all, got '" +
                            m.variant + "'");
    }
  }
  m.omega_p_ev = mat.number("omega_p_ev");
  require(m.omega_p_ev > 0.0, mat.field("omega_p_ev"), "must be > 0");
  m.gamma_ev = mat.number("gamma_ev");
  require(m.gamma_ev >= 0.0, mat.field("gamma_ev"), "must be >= 0");
  m.mu0 = mat.number("mu0");
  require(m.mu0 >= 1.0, mat.field("mu0"), "must be >= 1");
  m.v_t_over_vf = mat.number("v_t_over_vf", 0.0);
  require(m.v_t_over_vf >= 0.0, mat.field("v_t_over_vf"), "must be >= 0");
  m.v_l_over_vf = mat.number("v_l_over_vf", 0.0);
  require(m.v_l_over_vf >= 0.0, mat.field("v_l_over_vf"), "must be >= 0");
  const bool needs_vf = m.v_t_over_vf > 0.0 || m.v_l_over_vf > 0.0;
  m.v_f_m_s = mat.number("v_f_m_s", needs_vf ? std::nullopt : std::optional<double>(0.0));
  require(m.v_f_m_s >= 0.0, mat.field("v_f_m_s"), "must be >= 0");
  if (needs_vf) require(m.v_f_m_s > 0.0, mat.field("v_f_m_s"), "must be > 0");
  m.v_t = m.v_t_over_vf * m.v_f_m_s;
  m.v_l = m.v_l_over_vf * m.v_f_m_s;
  if (auto p = mat.raw("optical_data_path"); p && !p->empty()) m.optical_data_path = resolve(*p, base_dir);
  m.kk_tail_tol = mat.number("kk_tail_tol", kDefaultKkTailTol);
  require(m.kk_tail_tol > 0.0 && m.kk_tail_tol < 1.0, mat.field("kk_tail_tol"), "must lie in (0, 1)");
  if (m.variant == "nonlocal" || m.variant == "all") {
    require(m.gamma_ev > 0.0, mat.field("gamma_ev"), "must be > 0 for the nonlocal variant");
  }

  const auto sw = section("sweep");
  if (!sw.present()) throw ValidationError("config: missing section [sweep]");
  auto& s = cfg.sweep;
  s.a_min_nm = sw.number("a_min_nm");
  require(s.a_min_nm > 0.0, sw.field("a_min_nm"), "must be > 0");
  s.a_max_nm = sw.number("a_max_nm");
  require(s.a_max_nm > s.a_min_nm, sw.field("a_max_nm"), "must exceed sweep.a_min_nm");
  const long points = sw.integer("points");
  require(points >= 1 && points <= 100000, sw.field("points"), "must lie in [1, 100000]");
  s.points = static_cast<int>(points);
  const auto spacing = sw.raw("spacing").value_or("log");
  if (spacing == "log") {
    s.spacing = Spacing::Log;
  } else if (spacing == "linear") {
    s.spacing = Spacing::Linear;
  } else {
    throw ValidationError("config: sweep.spacing must be linear or log, got '" + spacing + "'");
  }

  const auto run = section("run");
  cfg.temperature_k = run.number("temperature_k", 300.0);
  require(cfg.temperature_k > 0.0, run.field("temperature_k"), "must be > 0");
  cfg.series_tol = run.number("series_tol", 1e-8);
  require(cfg.series_tol > 0.0 && cfg.series_tol <= 1e-4, run.field("series_tol"), "must lie in (0, 1e-4]");
  cfg.quad_tol = run.number("quad_tol", 1e-9);
  require(cfg.quad_tol > 0.0 && cfg.quad_tol <= 1e-4, run.field("quad_tol"), "must lie in (0, 1e-4]");
  const long threads = run.integer("threads", 1);
  require(threads >= 1 && threads <= 1024, run.field("threads"), "must lie in [1, 1024]");
  cfg.threads = static_cast<int>(threads);
  cfg.output_path = run.raw("output_path").value_or("-");
  if (cfg.output_path.empty()) cfg.output_path = "-";
  if (cfg.output_path != "-") cfg.output_path = resolve(cfg.output_path, base_dir);

  if (const auto geo = section("geometry"); geo.present()) {
    GeometryConfig g;
    g.radius_um = geo.number("radius_um");
    require(g.radius_um > 0.0, geo.field("radius_um"), "must be > 0");
    g.delta_s_nm = geo.number("delta_s_nm", 0.0);
    require(g.delta_s_nm >= 0.0, geo.field("delta_s_nm"), "must be >= 0");
    g.delta_p_nm = geo.number("delta_p_nm", 0.0);
    require(g.delta_p_nm >= 0.0, geo.field("delta_p_nm"), "must be >= 0");
    g.err_theory_rel = geo.number("err_theory_rel", 0.0);
    require(g.err_theory_rel >= 0.0, geo.field("err_theory_rel"), "must be >= 0");
    if (auto p = geo.raw("theta_path"); p && !p->empty()) g.theta_path = resolve(*p, base_dir);
    if (auto p = geo.raw("experiment_path"); p && !p->empty()) g.experiment_path = resolve(*p, base_dir);
    cfg.geometry = g;
  }

  const auto dump = section("dump");
  if (auto v = dump.raw("l_values")) {
    cfg.dump.l_values.clear();
    for (auto tok : csv::split(*v, ',')) {
      const long l = Section::parse_long(tok, dump.field("l_values"));
      require(l >= 0, dump.field("l_values"), "entries must be >= 0");
      cfg.dump.l_values.push_back(l);
    }
  }
  if (auto v = dump.raw("k_perp_values")) {
    std::vector<double> ks;
    for (auto tok : csv::split(*v, ',')) {
      const double k = csv::parse_double(tok, "config: " + dump.field("k_perp_values"));
      require(k >= 0.0, dump.field("k_perp_values"), "entries must be >= 0");
      ks.push_back(k);
    }
    cfg.dump.k_perp_values = ks;
  }
  return cfg;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("config: cannot open " + path);
  std::ostringstream text;
  text << in.rdbuf();
  const auto dir = std::filesystem::path(path).parent_path().string();
  return parse_config(text.str(), dir.empty() ? "." : dir);
}

std::string serialize_config(const RunConfig& cfg) {
  auto num = [](double v) { return csv::format_exact(v); };
  std::ostringstream out;
  const auto& m = cfg.material;
  out << "[material]\n"
      << "variant = " << m.variant << '\n'
      << "omega_p_ev = " << num(m.omega_p_ev) << '\n'
      << "gamma_ev = " << num(m.gamma_ev) << '\n'
      << "mu0 = " << num(m.mu0) << '\n'
      << "v_t_over_vf = " << num(m.v_t_over_vf) << '\n'
      << "v_l_over_vf = " << num(m.v_l_over_vf) << '\n'
      << "v_f_m_s = " << num(m.v_f_m_s) << '\n';
  if (m.optical_data_path) out << "optical_data_path = " << *m.optical_data_path << '\n';
  out << "kk_tail_tol = " << num(m.kk_tail_tol) << "\n\n";

  const auto& s = cfg.sweep;
  out << "[sweep]\n"
      << "a_min_nm = " << num(s.a_min_nm) << '\n'
      << "a_max_nm = " << num(s.a_max_nm) << '\n'
      << "points = " << s.points << '\n'
      << "spacing = " << (s.spacing == Spacing::Log ? "log" : "linear") << "\n\n";

  out << "[run]\n"
      << "temperature_k = " << num(cfg.temperature_k) << '\n'
      << "series_tol = " << num(cfg.series_tol) << '\n'
      << "quad_tol = " << num(cfg.quad_tol) << '\n'
      << "threads = " << cfg.threads << '\n'
      << "output_path = " << cfg.output_path << "\n";

  if (cfg.geometry) {
    const auto& g = *cfg.geometry;
    out << "\n[geometry]\n"
        << "radius_um = " << num(g.radius_um) << '\n'
        << "delta_s_nm = " << num(g.delta_s_nm) << '\n'
        << "delta_p_nm = " << num(g.delta_p_nm) << '\n'
        << "err_theory_rel = " << num(g.err_theory_rel) << '\n';
    if (g.theta_path) out << "theta_path = " << *g.theta_path << '\n';
    if (g.experiment_path) out << "experiment_path = " << *g.experiment_path << '\n';
  }

  out << "\n[dump]\nl_values = ";
  for (std::size_t i = 0; i < cfg.dump.l_values.size(); ++i) out << (i ? ", " : "") << cfg.dump.l_values[i];
  out << '\n';
  if (cfg.dump.k_perp_values) out << "k_perp_values = " << join_numbers(*cfg.dump.k_perp_values) << '\n';
  return out.str();
}

std::vector<double> sweep_separations(const SweepConfig& sweep) {
  const double lo = sweep.a_min_nm / 1e9;
  const double hi = sweep.a_max_nm / 1e9;
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(sweep.points));
  if (sweep.points == 1) {
    out.push_back(lo);
    return out;
  }
  const double n = sweep.points - 1;
  for (int i = 0; i < sweep.points; ++i) {
    const double t = i / n;
    out.push_back(sweep.spacing == Spacing::Log ? lo * std::pow(hi / lo, t) : lo + (hi - lo) * t);
  }
  out.front() = lo;
  out.back() = hi;
  return out;
}

std::vector<Variant> selected_variants(const MaterialConfig& material) {
  if (material.variant == "all") return {Variant::Drude, Variant::Plasma, Variant::NonlocalAlt};
  return {parse_variant(material.variant)};
}

std::vector<MaterialModel> build_models(const MaterialConfig& material) {
  std::shared_ptr<const InterbandTable> table;
  if (material.optical_data_path) {
    table = std::make_shared<const InterbandTable>(read_interband_table_file(*material.optical_data_path));
  }
  std::vector<MaterialModel> out;
  for (auto v : selected_variants(material)) {
    MaterialModel m;
    m.omega_p = ev_to_rad_per_s(material.omega_p_ev);
    m.gamma = ev_to_rad_per_s(material.gamma_ev);
    m.mu0 = material.mu0;
    m.v_t = material.v_t;
    m.v_l = material.v_l;
    m.interband = table;
    m.variant = v;
    m.kk_tail_tol = material.kk_tail_tol;
    m.validate();
    out.push_back(std::move(m));
  }
  return out;
}

MatsubaraContext make_context(const RunConfig& cfg) {
  MatsubaraContext ctx;
  ctx.temperature = cfg.temperature_k;
  ctx.rel_tol = cfg.series_tol;
  return ctx;
}

}  // namespace casimir
