#ifndef INEQ_CONFIG_HPP
#define INEQ_CONFIG_HPP

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace ineq {

enum class ModelKind { Mixed, Lattice };

inline const char* model_name(ModelKind m) { return m == ModelKind::Mixed ? "mixed" : "lattice"; }

/// A configuration value violated its constraint. `field()` names the key.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& what)
      : std::runtime_error(field + ": " + what), field_(std::move(field)) {}

  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

struct SimConfig {
  ModelKind model = ModelKind::Mixed;
  std::size_t n = 250;  // mixed population size; rows * cols for lattice
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t ns = 8;
  double cb = 0.45;
  double mu = 0.1;
  std::size_t gmax = 15000;
  double init_coop_frac = 0.1;
  double lambda_init_lo = 0.0;
  double lambda_init_hi = 5.0;
  bool torus = true;
  bool reproduction_includes_self = true;
  double burn_in_frac = 1.0 / 3.0;
  std::optional<std::size_t> snapshot_every;
  std::uint64_t seed = 0;

  std::size_t population_size() const { return model == ModelKind::Mixed ? n : rows * cols; }

  /// First generation index inside the aggregation window.
  std::size_t burn_in() const {
    return static_cast<std::size_t>(std::ceil(burn_in_frac * static_cast<double>(gmax)));
  }
};

inline void validate(const SimConfig& c) {
  if (c.model == ModelKind::Mixed) {
    if (c.n < 2) throw ConfigError("n", "requires n >= 2");
    if (c.ns < 1 || c.ns > c.n - 1) throw ConfigError("ns", "requires 1 <= ns <= n-1");
  } else {
    if (c.rows < 3) throw ConfigError("rows", "requires rows >= 3");
    if (c.cols < 3) throw ConfigError("cols", "requires cols >= 3");
  }
  if (!(c.cb > 0.0 && c.cb < 1.0)) throw ConfigError("cb", "requires 0 < c/b < 1");
  if (!(c.mu >= 0.0 && c.mu <= 1.0)) throw ConfigError("mu", "requires 0 <= mu <= 1");
  if (c.gmax < 1) throw ConfigError("gmax", "requires gmax >= 1");
  if (!(c.init_coop_frac >= 0.0 && c.init_coop_frac <= 1.0)) {
    throw ConfigError("init_coop_frac", "requires 0 <= init_coop_frac <= 1");
  }
  if (!(c.lambda_init_lo >= 0.0)) throw ConfigError("lambda_init_lo", "requires lambda_init_lo >= 0");
  if (!(c.lambda_init_hi <= 5.0)) throw ConfigError("lambda_init_hi", "requires lambda_init_hi <= 5");
  if (!(c.lambda_init_lo <= c.lambda_init_hi)) {
    throw ConfigError("lambda_init_lo", "requires lambda_init_lo <= lambda_init_hi");
  }
  if (!(c.burn_in_frac >= 0.0 && c.burn_in_frac < 1.0)) {
    throw ConfigError("burn_in_frac", "requires 0 <= burn_in_frac < 1");
  }
  if (c.snapshot_every && *c.snapshot_every < 1) {
    throw ConfigError("snapshot_every", "requires snapshot_every >= 1");
  }
}

}  // namespace ineq

#endif  // INEQ_CONFIG_HPP
