#ifndef INEQ_CONFIG_IO_HPP
#define INEQ_CONFIG_IO_HPP

// JSON documents for run configurations and sweep specifications. Keys are
// exactly the field names; unknown keys are rejected.

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "config.hpp"
#include "experiment.hpp"

namespace ineq {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

using nlohmann::json;

inline json parse_document(const std::string& text) {
  try {
    json doc = json::parse(text);
    if (!doc.is_object()) throw ParseError("config: top level must be an object");
    return doc;
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("config: malformed JSON: ") + e.what());
  }
}

inline void reject_unknown(const json& doc, const std::set<std::string>& allowed) {
  for (const auto& [key, _] : doc.items()) {
    if (!allowed.contains(key)) throw ConfigError(key, "unknown key");
  }
}

inline std::size_t get_count(const json& v, const std::string& key) {
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
    throw ConfigError(key, "expected a nonnegative integer");
  }
  return v.get<std::size_t>();
}

inline double get_real(const json& v, const std::string& key) {
  if (!v.is_number()) throw ConfigError(key, "expected a number");
  return v.get<double>();
}

inline bool get_bool(const json& v, const std::string& key) {
  if (!v.is_boolean()) throw ConfigError(key, "expected true or false");
  return v.get<bool>();
}

inline std::uint64_t get_u64(const json& v, const std::string& key) {
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
    throw ConfigError(key, "expected an unsigned 64-bit integer");
  }
  return v.get<std::uint64_t>();
}

inline ModelKind get_model(const json& doc) {
  if (!doc.contains("model")) throw ConfigError("model", "required");
  const auto& v = doc["model"];
  if (v == "mixed") return ModelKind::Mixed;
  if (v == "lattice") return ModelKind::Lattice;
  throw ConfigError("model", "expected \"mixed\" or \"lattice\"");
}

inline const json& require(const json& doc, const std::string& key) {
  if (!doc.contains(key)) throw ConfigError(key, "required");
  return doc[key];
}

template <typename F>
auto get_list(const json& doc, const std::string& key, F&& element) {
  const json& v = require(doc, key);
  using T = decltype(element(v, key));
  std::vector<T> out;
  if (v.is_array()) {
    for (const auto& x : v) out.push_back(element(x, key));
  } else {
    out.push_back(element(v, key));
  }
  return out;
}

/// Scalars common to run configs and sweep specs.
inline void apply_shared(const json& doc, SimConfig& c) {
  if (doc.contains("gmax")) c.gmax = get_count(doc["gmax"], "gmax");
  if (doc.contains("init_coop_frac")) c.init_coop_frac = get_real(doc["init_coop_frac"], "init_coop_frac");
  if (doc.contains("lambda_init_lo")) c.lambda_init_lo = get_real(doc["lambda_init_lo"], "lambda_init_lo");
  if (doc.contains("lambda_init_hi")) c.lambda_init_hi = get_real(doc["lambda_init_hi"], "lambda_init_hi");
  if (doc.contains("torus")) c.torus = get_bool(doc["torus"], "torus");
  if (doc.contains("reproduction_includes_self")) {
    c.reproduction_includes_self = get_bool(doc["reproduction_includes_self"], "reproduction_includes_self");
  }
  if (doc.contains("burn_in_frac")) c.burn_in_frac = get_real(doc["burn_in_frac"], "burn_in_frac");
  if (doc.contains("snapshot_every") && !doc["snapshot_every"].is_null()) {
    c.snapshot_every = get_count(doc["snapshot_every"], "snapshot_every");
  }
}

inline void emit_shared(json& doc, const SimConfig& c) {
  doc["gmax"] = c.gmax;
  doc["init_coop_frac"] = c.init_coop_frac;
  doc["lambda_init_lo"] = c.lambda_init_lo;
  doc["lambda_init_hi"] = c.lambda_init_hi;
  doc["torus"] = c.torus;
  doc["reproduction_includes_self"] = c.reproduction_includes_self;
  doc["burn_in_frac"] = c.burn_in_frac;
  if (c.snapshot_every) doc["snapshot_every"] = *c.snapshot_every;
}

inline const std::set<std::string> kSharedKeys = {
    "model", "gmax", "init_coop_frac", "lambda_init_lo", "lambda_init_hi",
    "torus", "reproduction_includes_self", "burn_in_frac", "snapshot_every"};

inline std::set<std::string> with_shared(std::initializer_list<std::string> extra) {
  std::set<std::string> keys = kSharedKeys;
  keys.insert(extra.begin(), extra.end());
  return keys;
}

}  // namespace detail

/// Parses and validates a single-run configuration. Required keys: model,
/// cb, gmax, plus n and ns (mixed) or rows and cols (lattice). Everything
/// else takes its default.
inline SimConfig parse_sim_config(const std::string& text) {
  using namespace detail;
  const json doc = parse_document(text);
  SimConfig c;
  c.model = get_model(doc);
  if (c.model == ModelKind::Mixed) {
    reject_unknown(doc, with_shared({"n", "ns", "cb", "mu", "seed"}));
    c.n = get_count(require(doc, "n"), "n");
    c.ns = get_count(require(doc, "ns"), "ns");
  } else {
    reject_unknown(doc, with_shared({"rows", "cols", "cb", "mu", "seed"}));
    c.rows = get_count(require(doc, "rows"), "rows");
    c.cols = get_count(require(doc, "cols"), "cols");
    c.n = c.rows * c.cols;
  }
  c.cb = get_real(require(doc, "cb"), "cb");
  require(doc, "gmax");
  if (doc.contains("mu")) c.mu = get_real(doc["mu"], "mu");
  if (doc.contains("seed")) c.seed = get_u64(doc["seed"], "seed");
  apply_shared(doc, c);
  validate(c);
  return c;
}

/// Resolved configuration as a document accepted by parse_sim_config.
inline std::string to_json(const SimConfig& c) {
  detail::json doc;
  doc["model"] = model_name(c.model);
  if (c.model == ModelKind::Mixed) {
    doc["n"] = c.n;
    doc["ns"] = c.ns;
  } else {
    doc["rows"] = c.rows;
    doc["cols"] = c.cols;
  }
  doc["cb"] = c.cb;
  doc["mu"] = c.mu;
  doc["seed"] = c.seed;
  detail::emit_shared(doc, c);
  return doc.dump(2) + "\n";
}

inline constexpr const char* kAggregationTimeMean = "time_mean";

/// Parses a sweep specification. List-valued keys (n, ns, rows, cols, cb,
/// mu) also accept a single scalar. Every expanded cell is validated.
inline SweepSpec parse_sweep_spec(const std::string& text) {
  using namespace detail;
  const json doc = parse_document(text);
  SweepSpec s;
  s.model = get_model(doc);
  s.base.model = s.model;
  if (s.model == ModelKind::Mixed) {
    reject_unknown(doc, with_shared({"n", "ns", "cb", "mu", "runs_per_cell", "master_seed", "aggregation"}));
    s.n = get_list(doc, "n", get_count);
    s.ns = get_list(doc, "ns", get_count);
  } else {
    reject_unknown(doc, with_shared({"rows", "cols", "cb", "mu", "runs_per_cell", "master_seed", "aggregation"}));
    s.rows = get_list(doc, "rows", get_count);
    s.cols = get_list(doc, "cols", get_count);
  }
  s.cb = get_list(doc, "cb", get_real);
  if (doc.contains("mu")) s.mu = get_list(doc, "mu", get_real);
  require(doc, "gmax");
  s.runs_per_cell = get_count(require(doc, "runs_per_cell"), "runs_per_cell");
  if (doc.contains("master_seed")) s.master_seed = get_u64(doc["master_seed"], "master_seed");
  if (doc.contains("aggregation") && doc["aggregation"] != kAggregationTimeMean) {
    throw ConfigError("aggregation", "only \"time_mean\" is supported");
  }
  apply_shared(doc, s.base);
  expand_cells(s);
  return s;
}

inline std::string to_json(const SweepSpec& s) {
  detail::json doc;
  doc["model"] = model_name(s.model);
  if (s.model == ModelKind::Mixed) {
    doc["n"] = s.n;
    doc["ns"] = s.ns;
  } else {
    doc["rows"] = s.rows;
    doc["cols"] = s.cols;
  }
  doc["cb"] = s.cb;
  doc["mu"] = s.mu;
  doc["runs_per_cell"] = s.runs_per_cell;
  doc["master_seed"] = s.master_seed;
  doc["aggregation"] = kAggregationTimeMean;
  detail::emit_shared(doc, s.base);
  return doc.dump(2) + "\n";
}

}  // namespace ineq

#endif  // INEQ_CONFIG_IO_HPP
