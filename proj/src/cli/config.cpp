#include "thresh/cli/config.hpp"

#include <fstream>
#include <set>

namespace thresh::cli {

using nlohmann::json;

namespace {

// A json object together with its dotted path, for error messages.
class Node {
 public:
  Node(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(path_, "expected an object");
  }

  std::string at(const std::string& key) const { return path_ + "." + key; }
  bool has(const std::string& key) const { return j_.contains(key); }
  Node child(const std::string& key) const { return Node(j_.at(key), at(key)); }

  void only(const std::set<std::string>& allowed) const {
    for (const auto& [k, v] : j_.items())
      if (!allowed.count(k)) throw ConfigError(at(k), "unknown field");
  }

  void number(const std::string& key, double& out) const {
    if (!has(key)) return;
    const json& v = j_.at(key);
    if (!v.is_number()) throw ConfigError(at(key), "expected a number");
    out = v.get<double>();
  }

  template <typename Int>
  void integer(const std::string& key, Int& out) const {
    if (!has(key)) return;
    const json& v = j_.at(key);
    if (!v.is_number_integer()) throw ConfigError(at(key), "expected an integer");
    if (v.is_number_unsigned() || v.get<long long>() >= 0) {
      out = static_cast<Int>(v.get<unsigned long long>());
    } else {
      out = static_cast<Int>(v.get<long long>());
    }
  }

  void string(const std::string& key, std::string& out) const {
    if (!has(key)) return;
    const json& v = j_.at(key);
    if (!v.is_string()) throw ConfigError(at(key), "expected a string");
    out = v.get<std::string>();
  }

  std::vector<double> numbers(const std::string& key) const {
    const json& v = j_.at(key);
    if (!v.is_array()) throw ConfigError(at(key), "expected an array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_number()) throw ConfigError(at(key) + "[" + std::to_string(i) + "]", "expected a number");
      out.push_back(v[i].get<double>());
    }
    return out;
  }

  void window(const std::string& key, Window& out) const {
    if (!has(key)) return;
    const auto v = numbers(key);
    if (v.size() != 2 || !(v[0] < v[1])) throw ConfigError(at(key), "expected [lo, hi] with lo < hi");
    out = {v[0], v[1]};
  }

 private:
  const json& j_;
  std::string path_;
};

PotentialSpec parse_potential(const Node& n) {
  n.only({"well_depth", "well_radius", "dimension", "tail"});
  PotentialSpec p;
  n.number("well_depth", p.well_depth);
  n.number("well_radius", p.well_radius);
  n.integer("dimension", p.dimension);
  if (!n.has("tail")) throw ConfigError(n.at("tail"), "missing field");
  const Node t = n.child("tail");
  t.only({"kind", "params"});
  if (!t.has("kind")) throw ConfigError(t.at("kind"), "missing field");
  t.string("kind", p.tail_kind);
  if (t.has("params")) {
    const Node params = t.child("params");
    std::set<std::string> allowed;
    if (p.tail_kind == "coulomb_like") allowed = {"C"};
    else if (p.tail_kind == "power") allowed = {"a", "p"};
    else if (p.tail_kind == "none") allowed = {};
    else throw ConfigError(t.at("kind"), "expected coulomb_like, power or none");
    params.only(allowed);
    for (const auto& k : allowed) {
      if (!params.has(k)) throw ConfigError(params.at(k), "missing field");
      params.number(k, p.tail_params[k]);
    }
  } else if (p.tail_kind != "none") {
    throw ConfigError(t.at("params"), "missing field");
  }
  return p;
}

helium::HeliumParams parse_helium(const Node& n) {
  n.only({"U", "delta", "pitchfork", "eta", "C_w", "D_w", "K", "R", "m", "C_low", "N_low", "eps_low"});
  helium::HeliumParams h;
  n.number("U", h.U);
  n.number("delta", h.delta);
  n.number("pitchfork", h.pitchfork);
  n.number("eta", h.eta);
  n.number("C_w", h.C_w);
  n.number("D_w", h.D_w);
  n.number("K", h.K);
  n.number("R", h.R);
  n.integer("m", h.m);
  n.number("C_low", h.C_low);
  n.number("N_low", h.N_low);
  n.number("eps_low", h.eps_low);
  return h;
}

}  // namespace

OutputFormat parse_format(const std::string& s) {
  if (s == "json") return OutputFormat::json;
  if (s == "csv") return OutputFormat::csv;
  throw ConfigError("config.output.format", "expected json or csv, got '" + s + "'");
}

RadialPotential PotentialSpec::build() const {
  Tail tail = NoTail{};
  if (tail_kind == "coulomb_like") tail = CoulombTail{tail_params.at("C")};
  else if (tail_kind == "power") tail = PowerTail{tail_params.at("a"), tail_params.at("p")};
  else if (tail_kind != "none") throw ConfigError("config.potential.tail.kind", "unsupported tail");
  return RadialPotential(well_depth, well_radius, tail, dimension);
}

ScenarioConfig parse_config(const json& j) {
  const Node root(j, "config");
  root.only({"scenario", "potential", "helium_params", "search", "weights", "grids", "sampling", "output"});
  if (!root.has("scenario")) throw ConfigError(root.at("scenario"), "missing field");

  ScenarioConfig c;
  std::string scenario;
  root.string("scenario", scenario);
  if (scenario == "one_particle") c.scenario = ScenarioKind::one_particle;
  else if (scenario == "helium") c.scenario = ScenarioKind::helium;
  else throw ConfigError(root.at("scenario"), "expected one_particle or helium");

  if (root.has("potential")) c.potential = parse_potential(root.child("potential"));
  if (root.has("helium_params")) c.helium_params = parse_helium(root.child("helium_params"));

  OneParticleSettings& op = c.one_particle;
  if (root.has("search")) {
    const Node s = root.child("search");
    s.only({"depth_lo", "depth_hi", "tol"});
    s.number("depth_lo", op.depth_lo);
    s.number("depth_hi", op.depth_hi);
    s.number("tol", op.tol);
  }
  if (root.has("weights")) {
    const Node w = root.child("weights");
    w.only({"eps_upper", "eps_lower", "eps_norm"});
    w.number("eps_upper", op.eps_upper);
    w.number("eps_lower", op.eps_lower);
    w.number("eps_norm", op.eps_norm);
  }
  if (root.has("grids")) {
    const Node g = root.child("grids");
    g.only({"r_max", "steps", "windows", "positivity_range", "supersolution_x_hi", "fd_step"});
    g.number("r_max", op.r_max);
    g.integer("steps", op.steps);
    if (g.has("windows")) {
      const Node w = g.child("windows");
      w.only({"fit", "upper_calibration", "upper_validation", "norm_edges"});
      w.window("fit", op.fit_window);
      w.window("upper_calibration", op.upper_calibration);
      w.window("upper_validation", op.upper_validation);
      if (w.has("norm_edges")) op.norm_edges = w.numbers("norm_edges");
    }
    Window pos{c.helium.positivity_lo, c.helium.positivity_hi};
    g.window("positivity_range", pos);
    c.helium.positivity_lo = pos.lo;
    c.helium.positivity_hi = pos.hi;
    g.number("supersolution_x_hi", c.helium.supersolution_x_hi);
    g.number("fd_step", c.helium.fd_step);
  }
  if (root.has("sampling")) {
    const Node s = root.child("sampling");
    s.only({"count", "seed", "x_inf_range", "gradient_onset"});
    s.integer("count", c.sampling.count);
    if (s.has("seed")) {
      std::uint64_t seed = 0;
      s.integer("seed", seed);
      c.sampling.seed = seed;
    }
    Window r{c.sampling.x_lo, c.sampling.x_hi};
    s.window("x_inf_range", r);
    c.sampling.x_lo = r.lo;
    c.sampling.x_hi = r.hi;
    s.number("gradient_onset", c.helium.gradient_onset);
  }
  if (root.has("output")) {
    const Node o = root.child("output");
    o.only({"format", "path"});
    std::string fmt = "json";
    o.string("format", fmt);
    c.output.format = parse_format(fmt);
    o.string("path", c.output.path);
  }
  return c;
}

void ScenarioConfig::validate() const {
  if (scenario == ScenarioKind::one_particle) {
    if (!potential) throw ConfigError("config.potential", "required for scenario one_particle");
    if (helium_params) throw ConfigError("config.helium_params", "not allowed for scenario one_particle");
    try {
      potential->build();
    } catch (const std::exception& e) {
      throw ConfigError("config.potential", e.what());
    }
    if (potential->tail_kind != "coulomb_like")
      throw ConfigError("config.potential.tail.kind", "the one_particle suite needs a coulomb_like tail");
    const auto& op = one_particle;
    if (!(op.depth_hi > op.depth_lo) || !(op.depth_lo >= 0.0))
      throw ConfigError("config.search", "expected 0 <= depth_lo < depth_hi");
    if (!(op.tol > 0.0)) throw ConfigError("config.search.tol", "expected a positive number");
    if (!(op.r_max > potential->well_radius)) throw ConfigError("config.grids.r_max", "must exceed well_radius");
    if (op.steps < 100) throw ConfigError("config.grids.steps", "expected at least 100");
    for (double e : {op.eps_upper, op.eps_norm})
      if (!(e > 0.0 && e < 1.0)) throw ConfigError("config.weights", "eps_upper and eps_norm must lie in (0, 1)");
    if (!(op.eps_lower > 0.0)) throw ConfigError("config.weights.eps_lower", "expected a positive number");
    if (op.norm_edges.size() < 3) throw ConfigError("config.grids.windows.norm_edges", "expected at least three edges");
    for (std::size_t i = 1; i < op.norm_edges.size(); ++i)
      if (!(op.norm_edges[i] > op.norm_edges[i - 1]))
        throw ConfigError("config.grids.windows.norm_edges", "expected increasing edges");
    if (op.norm_edges.back() > op.r_max || op.fit_window.hi > op.r_max || op.upper_validation.hi > op.r_max)
      throw ConfigError("config.grids.windows", "windows must lie inside [0, r_max]");
  } else {
    if (!helium_params) throw ConfigError("config.helium_params", "required for scenario helium");
    if (potential) throw ConfigError("config.potential", "not allowed for scenario helium");
    try {
      helium_params->validate();
    } catch (const std::exception& e) {
      throw ConfigError("config.helium_params", e.what());
    }
    if (sampling.count > 0 && !sampling.seed)
      throw ConfigError("config.sampling.seed", "required when sampling.count > 0");
    if (!(sampling.x_lo > 0.0)) throw ConfigError("config.sampling.x_inf_range", "expected positive bounds");
    if (!(helium.positivity_lo > 0.0)) throw ConfigError("config.grids.positivity_range", "expected positive bounds");
    if (!(helium.fd_step > 0.0)) throw ConfigError("config.grids.fd_step", "expected a positive number");
    const double x_hi = helium.supersolution_x_hi > 0.0 ? helium.supersolution_x_hi : 4.0 * helium_params->R;
    if (!(x_hi > helium_params->R))
      throw ConfigError("config.grids.supersolution_x_hi", "must exceed helium_params.R");
  }
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("config", "cannot open " + path);
  json j;
  try {
    f >> j;
  } catch (const json::parse_error& e) {
    throw ConfigError("config", "invalid JSON in " + path + ": " + e.what());
  }
  return parse_config(j);
}

}  // namespace thresh::cli
