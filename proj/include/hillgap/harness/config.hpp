#pragma once

// Experiment configuration: one JSON file per run, validated strictly. Every
// default is materialised so reports can echo the effective settings.

#include <cstdint>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hillgap/blockdecomp.hpp"
#include "hillgap/core.hpp"
#include "hillgap/floquet.hpp"
#include "hillgap/seqspace.hpp"
#include "hillgap/weights.hpp"

namespace hillgap::harness {

using json = nlohmann::ordered_json;

enum class Experiment { gaps, adapted, oracle, theorem1, theorem4, theorem5, mathieu, gasymov, dense, weights };

inline const char* to_string(Experiment e) {
  switch (e) {
    case Experiment::gaps: return "gaps";
    case Experiment::adapted: return "adapted";
    case Experiment::oracle: return "oracle";
    case Experiment::theorem1: return "theorem1";
    case Experiment::theorem4: return "theorem4";
    case Experiment::theorem5: return "theorem5";
    case Experiment::mathieu: return "mathieu";
    case Experiment::gasymov: return "gasymov";
    case Experiment::dense: return "dense";
    case Experiment::weights: return "weights";
  }
  return "?";
}

inline Experiment parse_experiment(const std::string& s) {
  if (s == "weights_check") return Experiment::weights;
  for (auto e : {Experiment::gaps, Experiment::adapted, Experiment::oracle, Experiment::theorem1, Experiment::theorem4,
                 Experiment::theorem5, Experiment::mathieu, Experiment::gasymov, Experiment::dense,
                 Experiment::weights})
    if (s == to_string(e)) return e;
  throw ConfigError("unknown experiment '" + s + "'");
}

struct PotentialSpec {
  std::string type = "mathieu";
  double mu = 1.0;
  std::vector<std::tuple<int, double, double>> fourier;  // (n, re, im)
  std::vector<Complex> gasymov;
  RandomPotentialSpec random{};
  json source;
};

struct Tolerances {
  double neumann = 1e-14;
  double agreement = 1e-6;  // block vs oracle, times max(1, n^2)
  double collapse = 1e-7;   // oracle gap counted as closed
  double roundtrip = 1e-10;
  double conjugate = 1e-10;
};

struct ExperimentConfig {
  std::optional<Experiment> experiment;
  PotentialSpec potential;
  Weight weight;
  std::vector<Weight> weights;  // empty: use `weight`
  int n_lo = 1, n_hi = 10;
  int M_thresh = 0;  // 0: default threshold
  int m = 0;         // 0: ceil(4||q||) + 1
  int window = 0;    // 0: experiment default
  double alpha = 0.0;
  Tolerances tol{};
  floquet::OracleOptions oracle{};
  double mathieu_c = 1.0;
  std::vector<double> eps_list{0.2, 0.1, 0.05};
  int weights_N = 200;
  std::string output;
  json raw;

  std::vector<Weight> weight_list() const { return weights.empty() ? std::vector<Weight>{weight} : weights; }
};

namespace detail {

/// Checks that obj has only the listed keys.
inline void only_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) throw ConfigError(where + " must be an object");
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!allowed.count(it.key())) throw ConfigError("unknown key '" + it.key() + "' in " + where);
}

inline double number(const json& obj, const std::string& key, const std::string& where) {
  const json& v = obj.at(key);
  if (!v.is_number()) throw ConfigError(where + "." + key + " must be a number");
  return v.get<double>();
}

inline double number_or(const json& obj, const std::string& key, double fallback, const std::string& where) {
  return obj.contains(key) ? number(obj, key, where) : fallback;
}

inline int integer(const json& obj, const std::string& key, const std::string& where) {
  const json& v = obj.at(key);
  if (!v.is_number_integer()) throw ConfigError(where + "." + key + " must be an integer");
  return v.get<int>();
}

inline int integer_or(const json& obj, const std::string& key, int fallback, const std::string& where) {
  return obj.contains(key) ? integer(obj, key, where) : fallback;
}

inline void require_key(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.contains(key)) throw ConfigError(where + " needs '" + key + "'");
}

inline Weight parse_weight(const json& j, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + " must be an object");
  require_key(j, "kind", where);
  if (!j.at("kind").is_string()) throw ConfigError(where + ".kind must be a string");
  const std::string kind = j.at("kind").get<std::string>();
  try {
    if (kind == "trivial") {
      only_keys(j, {"kind"}, where);
      return Weight::trivial();
    }
    if (kind == "polynomial") {
      only_keys(j, {"kind", "r"}, where);
      return Weight::polynomial(number_or(j, "r", 0.0, where));
    }
    if (kind == "exponential") {
      only_keys(j, {"kind", "r", "a"}, where);
      return Weight::exponential(number_or(j, "r", 0.0, where), number_or(j, "a", 1.0, where));
    }
    if (kind == "gevrey") {
      only_keys(j, {"kind", "r", "a", "sigma"}, where);
      require_key(j, "sigma", where);
      return Weight::gevrey(number_or(j, "r", 0.0, where), number_or(j, "a", 1.0, where), number(j, "sigma", where));
    }
    if (kind == "log_tempered") {
      only_keys(j, {"kind", "r", "a", "alpha"}, where);
      require_key(j, "alpha", where);
      return Weight::log_tempered(number_or(j, "r", 0.0, where), number_or(j, "a", 1.0, where),
                                  number(j, "alpha", where));
    }
    if (kind == "superexp") {
      only_keys(j, {"kind", "sigma"}, where);
      require_key(j, "sigma", where);
      return Weight::superexp(number(j, "sigma", where));
    }
    if (kind == "tempered") {
      only_keys(j, {"kind", "eps", "inner"}, where);
      require_key(j, "eps", where);
      require_key(j, "inner", where);
      return Weight::tempered(number(j, "eps", where), parse_weight(j.at("inner"), where + ".inner"));
    }
    if (kind == "table") {
      only_keys(j, {"kind", "values"}, where);
      require_key(j, "values", where);
      if (!j.at("values").is_array()) throw ConfigError(where + ".values must be an array");
      std::vector<double> values;
      for (const auto& v : j.at("values")) {
        if (!v.is_number()) throw ConfigError(where + ".values must hold numbers");
        values.push_back(v.get<double>());
      }
      return Weight::table(std::move(values));
    }
  } catch (const DomainError& e) {
    throw ConfigError(where + ": " + e.what());
  }
  throw ConfigError("unknown weight kind '" + kind + "' in " + where);
}

inline PotentialSpec parse_potential(const json& j) {
  const std::string where = "potential";
  if (!j.is_object()) throw ConfigError("potential must be an object");
  require_key(j, "type", where);
  if (!j.at("type").is_string()) throw ConfigError("potential.type must be a string");
  PotentialSpec p;
  p.type = j.at("type").get<std::string>();
  p.source = j;
  auto pair_list = [&](const json& arr, std::size_t arity, const std::string& key) {
    if (!arr.is_array()) throw ConfigError(where + "." + key + " must be an array");
    for (const auto& e : arr) {
      if (!e.is_array() || e.size() != arity) throw ConfigError(where + "." + key + " entries must have " +
                                                                std::to_string(arity) + " numbers");
      for (const auto& x : e)
        if (!x.is_number()) throw ConfigError(where + "." + key + " entries must be numeric");
    }
  };
  if (p.type == "mathieu") {
    only_keys(j, {"type", "mu"}, where);
    require_key(j, "mu", where);
    p.mu = number(j, "mu", where);
  } else if (p.type == "fourier") {
    only_keys(j, {"type", "coeffs"}, where);
    require_key(j, "coeffs", where);
    pair_list(j.at("coeffs"), 3, "coeffs");
    for (const auto& e : j.at("coeffs")) {
      if (!e[0].is_number_integer()) throw ConfigError("potential.coeffs mode index must be an integer");
      p.fourier.emplace_back(e[0].get<int>(), e[1].get<double>(), e[2].get<double>());
    }
  } else if (p.type == "gasymov") {
    only_keys(j, {"type", "coeffs"}, where);
    require_key(j, "coeffs", where);
    pair_list(j.at("coeffs"), 2, "coeffs");
    for (const auto& e : j.at("coeffs")) p.gasymov.emplace_back(e[0].get<double>(), e[1].get<double>());
  } else if (p.type == "random") {
    only_keys(j, {"type", "decay", "seed", "K", "real", "scale"}, where);
    require_key(j, "decay", where);
    require_key(j, "seed", where);
    p.random.decay = parse_weight(j.at("decay"), "potential.decay");
    const json& s = j.at("seed");
    if (!s.is_number_integer() || (!s.is_number_unsigned() && s.get<std::int64_t>() < 0))
      throw ConfigError("potential.seed must be a nonnegative integer");
    p.random.seed = j.at("seed").get<std::uint64_t>();
    p.random.window = integer_or(j, "K", 16, where);
    if (p.random.window < 1) throw ConfigError("potential.K must be >= 1");
    if (j.contains("real")) {
      if (!j.at("real").is_boolean()) throw ConfigError("potential.real must be a boolean");
      p.random.real = j.at("real").get<bool>();
    }
    p.random.scale = number_or(j, "scale", 1.0, where);
  } else {
    throw ConfigError("unknown potential type '" + p.type + "'");
  }
  return p;
}

inline floquet::Precision parse_precision(const std::string& s) {
  if (s == "double") return floquet::Precision::standard;
  if (s == "extended") return floquet::Precision::extended;
  if (s == "quad") return floquet::Precision::quad;
  throw ConfigError("oracle.precision must be double, extended or quad");
}

}  // namespace detail

inline FourierPotential build_potential(const PotentialSpec& p) {
  if (p.type == "mathieu") return make_mathieu(p.mu);
  if (p.type == "gasymov") return make_gasymov(p.gasymov);
  if (p.type == "random") return make_random(p.random);
  FourierPotential q(0);
  for (const auto& [n, re, im] : p.fourier) q.set(n, Complex(re, im));
  return q;
}

inline ExperimentConfig parse_config(const json& j) {
  using namespace detail;
  only_keys(j, {"experiment", "potential", "weight", "weights", "n_range", "M_thresh", "m", "window", "alpha",
                "tolerances", "oracle", "mathieu", "eps_list", "N", "output"},
            "config");
  ExperimentConfig c;
  c.raw = j;
  if (j.contains("experiment")) {
    if (!j.at("experiment").is_string()) throw ConfigError("experiment must be a string");
    c.experiment = parse_experiment(j.at("experiment").get<std::string>());
  }
  if (j.contains("potential")) c.potential = parse_potential(j.at("potential"));
  if (j.contains("weight")) c.weight = parse_weight(j.at("weight"), "weight");
  if (j.contains("weights")) {
    if (!j.at("weights").is_array()) throw ConfigError("weights must be an array");
    int i = 0;
    for (const auto& w : j.at("weights")) c.weights.push_back(parse_weight(w, "weights[" + std::to_string(i++) + "]"));
  }
  if (j.contains("n_range")) {
    const json& r = j.at("n_range");
    if (!r.is_array() || r.size() != 2 || !r[0].is_number_integer() || !r[1].is_number_integer())
      throw ConfigError("n_range must be [n_lo, n_hi] with integers");
    c.n_lo = r[0].get<int>();
    c.n_hi = r[1].get<int>();
  }
  if (c.n_lo < 1) throw ConfigError("n_range: n_lo must be >= 1");
  if (c.n_hi < c.n_lo) throw ConfigError("n_range: n_hi must be >= n_lo");
  c.M_thresh = integer_or(j, "M_thresh", 0, "config");
  c.m = integer_or(j, "m", 0, "config");
  c.window = integer_or(j, "window", 0, "config");
  if (c.M_thresh < 0 || c.m < 0 || c.window < 0) throw ConfigError("M_thresh, m and window must be >= 0");
  c.alpha = number_or(j, "alpha", 0.0, "config");
  if (j.contains("tolerances")) {
    const json& t = j.at("tolerances");
    only_keys(t, {"neumann", "agreement", "collapse", "roundtrip", "conjugate"}, "tolerances");
    c.tol.neumann = number_or(t, "neumann", c.tol.neumann, "tolerances");
    c.tol.agreement = number_or(t, "agreement", c.tol.agreement, "tolerances");
    c.tol.collapse = number_or(t, "collapse", c.tol.collapse, "tolerances");
    c.tol.roundtrip = number_or(t, "roundtrip", c.tol.roundtrip, "tolerances");
    c.tol.conjugate = number_or(t, "conjugate", c.tol.conjugate, "tolerances");
    for (double v : {c.tol.neumann, c.tol.agreement, c.tol.collapse, c.tol.roundtrip, c.tol.conjugate})
      if (!(v > 0.0)) throw ConfigError("tolerances must be positive");
  }
  if (j.contains("oracle")) {
    const json& o = j.at("oracle");
    only_keys(o, {"precision", "steps_per_oscillation", "steps"}, "oracle");
    if (o.contains("precision")) {
      if (!o.at("precision").is_string()) throw ConfigError("oracle.precision must be a string");
      c.oracle.precision = parse_precision(o.at("precision").get<std::string>());
    }
    c.oracle.steps_per_oscillation = integer_or(o, "steps_per_oscillation", c.oracle.steps_per_oscillation, "oracle");
    c.oracle.steps = integer_or(o, "steps", 0, "oracle");
    if (c.oracle.steps_per_oscillation < 64)
      throw ConfigError("oracle.steps_per_oscillation must be >= 64 to resolve the oscillation");
    if (c.oracle.steps < 0) throw ConfigError("oracle.steps must be >= 0");
  }
  if (j.contains("mathieu")) {
    const json& m = j.at("mathieu");
    only_keys(m, {"c"}, "mathieu");
    c.mathieu_c = number_or(m, "c", c.mathieu_c, "mathieu");
    if (!(c.mathieu_c > 0.0)) throw ConfigError("mathieu.c must be positive");
  }
  if (j.contains("eps_list")) {
    if (!j.at("eps_list").is_array()) throw ConfigError("eps_list must be an array");
    c.eps_list.clear();
    for (const auto& e : j.at("eps_list")) {
      if (!e.is_number() || !(e.get<double>() > 0.0)) throw ConfigError("eps_list entries must be positive numbers");
      c.eps_list.push_back(e.get<double>());
    }
  }
  c.weights_N = integer_or(j, "N", c.weights_N, "config");
  if (c.weights_N < 1) throw ConfigError("N must be >= 1");
  if (j.contains("output")) {
    if (!j.at("output").is_string()) throw ConfigError("output must be a string");
    c.output = j.at("output").get<std::string>();
  }
  return c;
}

inline ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  return parse_config(j);
}

/// The effective settings, defaults included.
inline json echo(const ExperimentConfig& c) {
  json j;
  if (c.experiment) j["experiment"] = to_string(*c.experiment);
  j["potential"] = c.potential.source.is_null() ? json{{"type", "mathieu"}, {"mu", 1.0}} : c.potential.source;
  json ws = json::array();
  for (const auto& w : c.weight_list()) ws.push_back(w.describe());
  j["weights"] = ws;
  j["n_range"] = {c.n_lo, c.n_hi};
  j["M_thresh"] = c.M_thresh;
  j["m"] = c.m;
  j["window"] = c.window;
  j["alpha"] = c.alpha;
  j["tolerances"] = {{"neumann", c.tol.neumann},
                     {"agreement", c.tol.agreement},
                     {"collapse", c.tol.collapse},
                     {"roundtrip", c.tol.roundtrip},
                     {"conjugate", c.tol.conjugate}};
  j["oracle"] = {{"precision", floquet::to_string(c.oracle.precision)},
                 {"steps_per_oscillation", c.oracle.steps_per_oscillation},
                 {"steps", c.oracle.steps}};
  j["mathieu"] = {{"c", c.mathieu_c}};
  j["eps_list"] = c.eps_list;
  j["N"] = c.weights_N;
  if (!c.output.empty()) j["output"] = c.output;
  return j;
}

}  // namespace hillgap::harness
