#include "cavity/config.hpp"

#include <fmt/format.h>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace cavity {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::set<std::string>& allowed, std::string_view where) {
  if (!obj.is_object()) throw ConfigError(fmt::format("{}: expected an object", where));
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.contains(key)) throw ConfigError(fmt::format("{}: unknown key '{}'", where, key));
  }
}

double real(const json& v, std::string_view what) {
  if (!v.is_number()) throw ConfigError(fmt::format("{}: expected a number", what));
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ConfigError(fmt::format("{}: not finite", what));
  return x;
}

int integer(const json& v, std::string_view what) {
  if (!v.is_number_integer()) throw ConfigError(fmt::format("{}: expected an integer", what));
  return v.get<int>();
}

Rational coefficient(const json& v) {
  if (v.is_string()) {
    try {
      return parse_rational(v.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("coefficient: ") + e.what());
    }
  }
  if (v.is_number_integer()) return Rational(v.get<long long>());
  return to_rational(real(v, "coefficient"));
}

StressSpec parse_stress(const json& s) {
  if (!s.is_object() || !s.contains("kind") || !s["kind"].is_string())
    throw ConfigError("stress: expected an object with a string 'kind'");
  StressSpec spec;
  const auto kind = s["kind"].get<std::string>();
  if (kind == "polynomial") {
    reject_unknown(s, {"kind", "terms"}, "stress");
    spec.kind = StressSpec::Kind::Polynomial;
    if (!s.contains("terms") || !s["terms"].is_array()) throw ConfigError("stress.terms: expected an array");
    for (const auto& t : s["terms"]) {
      reject_unknown(t, {"i", "j", "a_power", "coefficient"}, "stress.terms[]");
      if (!t.contains("coefficient")) throw ConfigError("stress.terms[]: missing coefficient");
      PolyTerm term;
      term.i = t.contains("i") ? integer(t["i"], "i") : 0;
      term.j = t.contains("j") ? integer(t["j"], "j") : 0;
      term.a_power = t.contains("a_power") ? integer(t["a_power"], "a_power") : 0;
      if (term.i < 0 || term.j < 0 || term.a_power < 0) throw ConfigError("stress.terms[]: negative exponent");
      term.coefficient = coefficient(t["coefficient"]);
      spec.terms.push_back(std::move(term));
    }
  } else if (kind == "cosine") {
    reject_unknown(s, {"kind", "A", "m"}, "stress");
    spec.kind = StressSpec::Kind::Cosine;
    if (!s.contains("m")) throw ConfigError("stress: cosine needs an integer harmonic 'm'");
    spec.harmonic = integer(s["m"], "m");
    spec.amplitude = s.contains("A") ? real(s["A"], "A") : 1.0;
  } else if (kind == "builtin") {
    reject_unknown(s, {"kind", "name", "A"}, "stress");
    spec.kind = StressSpec::Kind::Builtin;
    if (!s.contains("name") || !s["name"].is_string()) throw ConfigError("stress: builtin needs a 'name'");
    spec.builtin = s["name"].get<std::string>();
    if (spec.builtin != "linear" && spec.builtin != "sinusoidal" && spec.builtin != "realistic")
      throw ConfigError("stress: unknown builtin '" + spec.builtin + "'");
    if (s.contains("A")) {
      if (spec.builtin != "sinusoidal") throw ConfigError("stress: 'A' applies only to the sinusoidal builtin");
      spec.amplitude = real(s["A"], "A");
    }
  } else {
    throw ConfigError("stress: unknown kind '" + kind + "'");
  }
  return spec;
}

}  // namespace

RunConfig parse_config(const json& doc) {
  reject_unknown(doc, {"a", "stress", "output", "tolerances", "grid", "quadrature", "seeds", "streamline",
                       "stagnation_seeds"},
                 "config");
  RunConfig cfg;
  if (doc.contains("a")) cfg.a = real(doc["a"], "a");
  if (!(cfg.a > 0.0)) throw ConfigError("a: must be positive");
  if (!doc.contains("stress")) throw ConfigError("config: missing 'stress'");
  cfg.stress = parse_stress(doc["stress"]);
  if (doc.contains("output")) {
    if (!doc["output"].is_string()) throw ConfigError("output: expected a string");
    cfg.output = doc["output"].get<std::string>();
  }
  if (doc.contains("tolerances")) {
    const auto& t = doc["tolerances"];
    reject_unknown(t, {"compat", "pde", "boundary"}, "tolerances");
    if (t.contains("compat")) cfg.compat_tol = real(t["compat"], "tolerances.compat");
    if (t.contains("pde")) cfg.tol_pde = real(t["pde"], "tolerances.pde");
    if (t.contains("boundary")) cfg.tol_bc = real(t["boundary"], "tolerances.boundary");
    if (!(cfg.compat_tol > 0.0) || cfg.tol_pde.value_or(1.0) <= 0.0 || cfg.tol_bc.value_or(1.0) <= 0.0)
      throw ConfigError("tolerances: must be positive");
  }
  if (doc.contains("grid")) cfg.grid = integer(doc["grid"], "grid");
  if (cfg.grid < 4) throw ConfigError("grid: must be at least 4");
  if (doc.contains("quadrature")) {
    const auto& q = doc["quadrature"];
    reject_unknown(q, {"order", "subdivision"}, "quadrature");
    QuadratureSpec spec = default_quadrature(TriangleDomain(cfg.a));
    if (q.contains("order")) spec.order = integer(q["order"], "quadrature.order");
    if (q.contains("subdivision")) spec.subdivision = integer(q["subdivision"], "quadrature.subdivision");
    if (spec.order < 1 || spec.subdivision < 1) throw ConfigError("quadrature: order and subdivision must be >= 1");
    cfg.quadrature = spec;
  }
  if (doc.contains("seeds")) {
    if (!doc["seeds"].is_array()) throw ConfigError("seeds: expected an array of [x, y] pairs");
    for (const auto& s : doc["seeds"]) {
      if (!s.is_array() || s.size() != 2) throw ConfigError("seeds: expected [x, y] pairs");
      cfg.seeds.push_back({real(s[0], "seed x"), real(s[1], "seed y")});
    }
  }
  if (doc.contains("streamline")) {
    const auto& s = doc["streamline"];
    reject_unknown(s, {"step", "max_steps"}, "streamline");
    if (s.contains("step")) {
      cfg.step = real(s["step"], "streamline.step");
      if (!(*cfg.step > 0.0)) throw ConfigError("streamline.step: must be positive");
    }
    if (s.contains("max_steps")) cfg.max_steps = integer(s["max_steps"], "streamline.max_steps");
    if (cfg.max_steps < 1) throw ConfigError("streamline.max_steps: must be positive");
  }
  if (doc.contains("stagnation_seeds")) cfg.stagnation_seeds = integer(doc["stagnation_seeds"], "stagnation_seeds");
  if (cfg.stagnation_seeds < 1) throw ConfigError("stagnation_seeds: must be positive");
  return cfg;
}

RunConfig parse_config_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed JSON: ") + e.what());
  }
  return parse_config(doc);
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str());
}

RunConfig builtin_config(const std::string& name, double a) {
  RunConfig cfg;
  cfg.a = a;
  cfg.stress.kind = StressSpec::Kind::Builtin;
  cfg.stress.builtin = name;
  return cfg;
}

}  // namespace cavity
