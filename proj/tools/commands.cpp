#include "commands.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <set>

#include "melnikov/chebyshev.hpp"
#include "melnikov/errors.hpp"
#include "melnikov/melnikov_numeric.hpp"

namespace melnikov::cli {

namespace fs = std::filesystem;

namespace {

/// JSON object whose keys are checked against a fixed list.
class Section {
 public:
  Section(const Json& j, std::string name, std::set<std::string> allowed) : j_(j), name_(std::move(name)) {
    if (!j.is_object()) throw ConfigError("'" + name_ + "' must be a JSON object");
    for (const auto& [key, value] : j.items())
      if (!allowed.count(key)) throw ConfigError("unknown key '" + key + "' in '" + name_ + "'");
  }

  bool has(const std::string& key) const { return j_.contains(key); }
  const Json& at(const std::string& key) const { return j_.at(key); }

  void read(const std::string& key, double& v) const {
    if (!has(key)) return;
    if (!j_[key].is_number()) throw ConfigError(where(key) + " must be a number");
    v = j_[key].get<double>();
  }
  void read(const std::string& key, int& v) const {
    if (!has(key)) return;
    if (!j_[key].is_number_integer()) throw ConfigError(where(key) + " must be an integer");
    v = j_[key].get<int>();
  }
  void read(const std::string& key, std::uint64_t& v) const {
    if (!has(key)) return;
    if (!j_[key].is_number_unsigned()) throw ConfigError(where(key) + " must be a nonnegative integer");
    v = j_[key].get<std::uint64_t>();
  }
  void read(const std::string& key, bool& v) const {
    if (!has(key)) return;
    if (!j_[key].is_boolean()) throw ConfigError(where(key) + " must be true or false");
    v = j_[key].get<bool>();
  }
  void read(const std::string& key, std::string& v) const {
    if (!has(key)) return;
    if (!j_[key].is_string()) throw ConfigError(where(key) + " must be a string");
    v = j_[key].get<std::string>();
  }
  Rational rational(const std::string& key) const { return to_rational(j_[key], where(key)); }

  static Rational to_rational(const Json& v, const std::string& what) {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return Rational(v.get<long long>());
    throw ConfigError(what + " must be a \"num/den\" string or an integer");
  }

 private:
  std::string where(const std::string& key) const { return "'" + name_ + "." + key + "'"; }

  const Json& j_;
  std::string name_;
};

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ConfigError("cannot write " + path.string());
  os << text;
}

void write_json(const fs::path& path, const Json& j) { write_file(path, j.dump(2) + "\n"); }

bool has_exact_reduction(const SwitchingCurve& c) { return c.m() == 3 && c.is_odd(); }

PiecewisePerturbation resolve_perturbation(const AnalysisConfig& cfg) {
  if (cfg.perturbation) return *cfg.perturbation;
  if (cfg.random_perturbation) return random_perturbation(cfg.degree, cfg.seed, 0);
  throw ConfigError("no perturbation: give 'perturbation', 'perturbation_file' or 'random_perturbation'");
}

struct NamedFamily {
  std::string name;
  LinearFamily family;
};

NamedFamily resolve_family(const AnalysisConfig& cfg) {
  std::string name = cfg.realize.family;
  if (name.empty()) {
    if (cfg.degree == 1)
      name = "perturbation-1";
    else if (cfg.degree == 2)
      name = "monomial-2";
    else
      throw ConfigError("no default realization family for degree " + std::to_string(cfg.degree));
  }
  if (name == "perturbation-1") return {name, melnikov_family_degree1()};
  if (name == "perturbation-2") return {name, melnikov_family_degree2()};
  if (name == "monomial-2") return {name, melnikov_monomial_family_degree2()};
  if (name == "monomials") {
    if (cfg.realize.powers.empty()) throw ConfigError("family 'monomials' needs 'realize.powers'");
    return {name, LinearFamily::monomials(cfg.realize.powers)};
  }
  throw ConfigError("unknown realization family '" + name + "'");
}

Json realization_json(const NamedFamily& f, const Realization& r, const std::vector<Rational>& targets) {
  Json params = Json::array();
  for (std::size_t i = 0; i < r.params.size(); ++i) params.push_back({f.family.labels[i], to_string(r.params[i])});
  Json tj = Json::array(), pinned = Json::array();
  for (const auto& t : targets) tj.push_back(to_string(t));
  for (const auto& t : r.pinned_targets) pinned.push_back(to_string(t));
  Json out = {{"family", f.name},   {"targets", tj},
              {"params", params},   {"pinned_targets", pinned},
              {"constant_sign_element", f.family.labels[r.constant_sign_index]},
              {"melnikov", to_json(r.polynomial)},
              {"certificate", to_json(r.certificate)}};
  if (!f.family.directions.empty()) out["perturbation"] = to_json(f.family.perturbation(r.params));
  return out;
}

}  // namespace

AnalysisConfig parse_config(const Json& j, const fs::path& base_dir) {
  const Section root(j, "config",
                     {"curve", "degree", "perturbation", "perturbation_file", "random_perturbation", "seed", "threads",
                      "quadrature_tol", "sampling", "zeros", "ect", "realize", "simulate", "sweep"});
  AnalysisConfig cfg;
  if (root.has("curve")) {
    const Section c(root.at("curve"), "curve", {"kind", "m"});
    std::string kind = "monomial";
    int m = 3;
    c.read("kind", kind);
    c.read("m", m);
    try {
      if (kind == "monomial")
        cfg.curve = SwitchingCurve::monomial(m);
      else if (kind == "reciprocal")
        cfg.curve = SwitchingCurve::reciprocal(m);
      else
        throw ConfigError("curve.kind must be 'monomial' or 'reciprocal'");
    } catch (const DomainError& e) {
      throw ConfigError(e.what());
    }
  }
  root.read("degree", cfg.degree);
  if (cfg.degree < 0) throw ConfigError("degree must be nonnegative");
  root.read("seed", cfg.seed);
  root.read("threads", cfg.threads);
  root.read("quadrature_tol", cfg.quadrature_tol);
  root.read("random_perturbation", cfg.random_perturbation);

  if (root.has("perturbation") && root.has("perturbation_file"))
    throw ConfigError("give either 'perturbation' or 'perturbation_file', not both");
  if (root.has("perturbation")) cfg.perturbation = perturbation_from_json(root.at("perturbation"));
  if (root.has("perturbation_file")) {
    std::string file;
    root.read("perturbation_file", file);
    fs::path path(file);
    if (path.is_relative()) path = base_dir / path;
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot read perturbation file " + path.string());
    cfg.perturbation = perturbation_from_json(Json::parse(is));
  }
  if (cfg.perturbation && !root.has("degree")) cfg.degree = cfg.perturbation->degree();

  if (root.has("sampling")) {
    const Section s(root.at("sampling"), "sampling", {"u_min", "u_max", "count"});
    s.read("u_min", cfg.sampling.u_min);
    s.read("u_max", cfg.sampling.u_max);
    s.read("count", cfg.sampling.count);
    if (!(cfg.sampling.u_min > 0) || !(cfg.sampling.u_max > cfg.sampling.u_min) || cfg.sampling.count < 2)
      throw ConfigError("sampling needs 0 < u_min < u_max and count >= 2");
  }
  if (root.has("zeros")) {
    const Section z(root.at("zeros"), "zeros", {"pi_bits", "u_max", "polynomial"});
    z.read("pi_bits", cfg.zeros.pi_bits);
    if (z.has("u_max")) cfg.zeros.u_max = z.rational("u_max");
    if (z.has("polynomial")) {
      const Section p(z.at("polynomial"), "zeros.polynomial", {"P", "Q"});
      std::string ptext = "0", qtext = "0";
      p.read("P", ptext);
      p.read("Q", qtext);
      cfg.zeros.polynomial = MelnikovPolynomial{parse_polynomial(ptext), parse_polynomial(qtext)};
    }
  }
  if (root.has("ect")) {
    const Section e(root.at("ect"), "ect", {"basis"});
    e.read("basis", cfg.ect_basis);
  }
  if (root.has("realize")) {
    const Section r(root.at("realize"), "realize", {"targets", "family", "powers"});
    if (r.has("targets")) {
      if (!r.at("targets").is_array()) throw ConfigError("'realize.targets' must be an array");
      for (const auto& t : r.at("targets")) cfg.realize.targets.push_back(Section::to_rational(t, "target"));
    }
    r.read("family", cfg.realize.family);
    if (r.has("powers")) cfg.realize.powers = r.at("powers").get<std::vector<int>>();
  }
  if (root.has("simulate")) {
    const Section s(root.at("simulate"), "simulate",
                    {"epsilon", "step_tol", "event_tol", "max_time", "escape_radius", "u_min", "u_max", "grid",
                     "trajectory_u0", "use_realization"});
    s.read("epsilon", cfg.simulate.sim.epsilon);
    s.read("step_tol", cfg.simulate.sim.step_tol);
    s.read("event_tol", cfg.simulate.sim.event_tol);
    s.read("max_time", cfg.simulate.sim.max_time);
    s.read("escape_radius", cfg.simulate.sim.escape_radius);
    s.read("u_min", cfg.simulate.u_min);
    s.read("u_max", cfg.simulate.u_max);
    s.read("grid", cfg.simulate.grid);
    s.read("trajectory_u0", cfg.simulate.trajectory_u0);
    s.read("use_realization", cfg.simulate.use_realization);
  }
  if (root.has("sweep")) {
    const Section s(root.at("sweep"), "sweep", {"degrees", "trials"});
    if (s.has("degrees")) cfg.sweep.degrees = s.at("degrees").get<std::vector<int>>();
    s.read("trials", cfg.sweep.trials);
  }
  return cfg;
}

AnalysisConfig load_config(const fs::path& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot read config " + path.string());
  Json j;
  try {
    j = Json::parse(is);
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  return parse_config(j, path.parent_path());
}

int cmd_melnikov(const AnalysisConfig& cfg, const fs::path& out) {
  const PiecewisePerturbation pert = resolve_perturbation(cfg);
  const bool exact = has_exact_reduction(cfg.curve);
  std::optional<MelnikovPolynomial> m;
  if (exact) m = melnikov_polynomial(pert, cfg.curve);

  std::ostringstream csv;
  csv << "u,M_algebraic,M_numeric,difference\n";
  std::vector<double> us, values;
  double worst = 0.0;
  const auto& s = cfg.sampling;
  for (int i = 0; i < s.count; ++i) {
    const double u = s.u_min + (s.u_max - s.u_min) * i / (s.count - 1);
    const double numeric =
        melnikov_numeric(pert, cfg.curve, h_of_u(CrossingParameter(u), cfg.curve), cfg.quadrature_tol);
    const double algebraic = m ? m->evaluate(u) : std::nan("");
    const double diff = m ? algebraic - numeric : std::nan("");
    if (m) worst = std::max(worst, std::abs(diff) / (1.0 + std::abs(algebraic)));
    csv << format_double(u) << ',' << format_double(algebraic) << ',' << format_double(numeric) << ','
        << format_double(diff) << '\n';
    us.push_back(u);
    values.push_back(m ? algebraic : numeric);
  }
  write_file(out / "melnikov.csv", csv.str());
  write_file(out / "melnikov.svg", svg_line_plot(us, values, "Melnikov function", "u", "M(u)"));

  Json report = {{"curve", to_json(cfg.curve)}, {"perturbation", to_json(pert)}, {"samples", s.count}};
  Json zeros = Json::array();
  if (m) {
    report["melnikov"] = to_json(*m);
    report["identically_zero"] = m->is_zero();
    report["max_scaled_difference"] = worst;
    if (!m->is_zero()) {
      CountOptions co;
      co.pi_bits = cfg.zeros.pi_bits;
      const auto cert = count_zeros(*m, co);
      for (const auto& iv : cert.isolating_intervals) zeros.push_back(to_json(iv));
      report["certificate"] = to_json(cert);
    }
  } else {
    report["method"] = "numeric";
    int changes = 0, last = 0;
    for (double v : values) {
      const int sg = v > 0 ? 1 : (v < 0 ? -1 : 0);
      if (sg != 0 && last != 0 && sg != last) ++changes;
      if (sg != 0) last = sg;
    }
    report["sign_changes"] = changes;
  }
  report["zeros"] = zeros;
  write_json(out / "melnikov.json", report);
  if (worst > 1e-9) throw AccuracyError("algebraic and quadrature Melnikov values disagree", worst);
  return 0;
}

int cmd_zeros(const AnalysisConfig& cfg, const fs::path& out) {
  MelnikovPolynomial m;
  if (cfg.zeros.polynomial) {
    m = *cfg.zeros.polynomial;
  } else {
    if (!has_exact_reduction(cfg.curve))
      throw ConfigError("certified zeros need the cubic curve or its mirror, or an explicit polynomial");
    m = melnikov_polynomial(resolve_perturbation(cfg), cfg.curve);
  }
  CountOptions co;
  co.pi_bits = cfg.zeros.pi_bits;
  co.u_max = cfg.zeros.u_max;
  const auto cert = count_zeros(m, co);
  write_json(out / "zeros.json", {{"melnikov", to_json(m)}, {"certificate", to_json(cert)}});
  return cert.certified() ? 0 : static_cast<int>(ExitCode::Certification);
}

int cmd_ect(const AnalysisConfig& cfg, const fs::path& out) {
  const auto report = is_ect(OrderedBasis::parse(cfg.ect_basis));
  Json j = to_json(report);
  j["basis"] = cfg.ect_basis;
  write_json(out / "ect.json", j);
  return report.is_ect ? 0 : static_cast<int>(ExitCode::Certification);
}

int cmd_realize(const AnalysisConfig& cfg, const fs::path& out) {
  if (cfg.realize.targets.empty()) throw ConfigError("'realize.targets' is required");
  const NamedFamily f = resolve_family(cfg);
  const Realization r = realize_zeros(cfg.realize.targets, f.family);
  write_json(out / "realize.json", realization_json(f, r, cfg.realize.targets));
  return 0;
}

int cmd_simulate(const AnalysisConfig& cfg, const fs::path& out) {
  PiecewisePerturbation pert(0);
  Json report = {{"curve", to_json(cfg.curve)}};
  if (cfg.simulate.use_realization) {
    const NamedFamily f = resolve_family(cfg);
    if (f.family.directions.empty())
      throw ConfigError("family '" + f.name + "' has no perturbation behind it and cannot be simulated");
    const Realization r = realize_zeros(cfg.realize.targets, f.family);
    report["realization"] = realization_json(f, r, cfg.realize.targets);
    pert = f.family.perturbation(r.params);
  } else {
    pert = resolve_perturbation(cfg);
  }
  report["perturbation"] = to_json(pert);

  const auto& sc = cfg.simulate;
  const Point start = cfg.curve.section_point(sc.trajectory_u0);
  const Trajectory traj =
      integrate_piecewise(pert, sc.sim, start, cfg.curve, [](const Point& e, int) { return e.x() > 0.0; });
  std::ostringstream tcsv;
  write_trajectory_csv(tcsv, traj);
  write_file(out / "trajectory.csv", tcsv.str());

  const CycleReport cycles = find_limit_cycles(pert, sc.sim, sc.u_min, sc.u_max, sc.grid, cfg.curve, cfg.threads);
  std::ostringstream scsv;
  write_scan_csv(scsv, cycles.scan);
  write_file(out / "scan.csv", scsv.str());
  std::vector<double> us, ds;
  for (const auto& s : cycles.scan) {
    us.push_back(s.u0);
    ds.push_back(s.u1 - s.u0);
  }
  write_file(out / "scan.svg", svg_line_plot(us, ds, "Return displacement", "u0", "u1 - u0"));

  report["cycles"] = to_json(cycles);
  report["epsilon"] = sc.sim.epsilon;
  if (has_exact_reduction(cfg.curve) && !pert.is_zero()) {
    const auto m = melnikov_polynomial(pert, cfg.curve);
    if (!m.is_zero()) report["melnikov_zeros"] = to_json(count_zeros(m));
  }
  write_json(out / "cycles.json", report);
  return 0;
}

int cmd_sweep(const AnalysisConfig& cfg, const fs::path& out) {
  Json results = Json::array();
  bool within = true;
  for (int degree : cfg.sweep.degrees) {
    SweepOptions opt;
    opt.trials = cfg.sweep.trials;
    opt.seed = cfg.seed;
    opt.threads = cfg.threads;
    opt.pi_bits = cfg.zeros.pi_bits;
    const auto r = sweep_bound(degree, cfg.curve, opt);
    within = within && r.within_bound;
    results.push_back(to_json(r));
  }
  write_json(out / "sweep.json", {{"curve", to_json(cfg.curve)}, {"seed", cfg.seed}, {"results", results}});
  return within ? 0 : static_cast<int>(ExitCode::Certification);
}

}  // namespace melnikov::cli
