#ifndef INEQ_MODEL_HPP
#define INEQ_MODEL_HPP

// Core game types: strategies, exact rewards, the normalized prisoner's
// dilemma and the inequity-biased acceptance rule.

#include <algorithm>
#include <array>
#include <cmath>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace ineq {

enum class Strategy : std::uint8_t { Cooperator, Defector };

inline constexpr double kLambdaMin = 0.0;
inline constexpr double kLambdaMax = 5.0;

inline char strategy_char(Strategy s) { return s == Strategy::Cooperator ? 'C' : 'D'; }

/// Signed difference of two rewards, kept as integer counts.
struct RewardDelta {
  std::int64_t units = 0;
  std::int64_t cb_units = 0;

  double value(double cb) const {
    return static_cast<double>(units) + static_cast<double>(cb_units) * cb;
  }

  /// Sign-normalized form: two deltas describe the same distance iff their
  /// magnitudes compare equal.
  RewardDelta magnitude(double cb) const {
    const double v = value(cb);
    if (v < 0.0 || (v == 0.0 && (units < 0 || (units == 0 && cb_units < 0)))) {
      return {-units, -cb_units};
    }
    return *this;
  }

  friend bool operator==(const RewardDelta&, const RewardDelta&) = default;
};

/// Accumulated reward as exact counts of payoff-1 and payoff-c/b receipts.
/// Value is units + cb_units * (c/b).
struct Reward {
  std::uint64_t units = 0;
  std::uint64_t cb_units = 0;

  double value(double cb) const {
    return static_cast<double>(units) + static_cast<double>(cb_units) * cb;
  }

  Reward& operator+=(const Reward& o) {
    units += o.units;
    cb_units += o.cb_units;
    return *this;
  }

  friend bool operator==(const Reward&, const Reward&) = default;
  friend auto operator<=>(const Reward&, const Reward&) = default;
};

inline RewardDelta operator-(const Reward& a, const Reward& b) {
  return {static_cast<std::int64_t>(a.units) - static_cast<std::int64_t>(b.units),
          static_cast<std::int64_t>(a.cb_units) - static_cast<std::int64_t>(b.cb_units)};
}

/// |value(a) - value(b)| evaluated from the integer difference.
inline double reward_distance(const Reward& a, const Reward& b, double cb) {
  return std::fabs((a - b).value(cb));
}

/// Three-way comparison of reward values. Equal pairs are always equal;
/// distinct pairs compare by the sign of their exact difference.
inline std::strong_ordering compare_rewards(const Reward& a, const Reward& b, double cb) {
  if (a == b) return std::strong_ordering::equal;
  const double d = (a - b).value(cb);
  if (d > 0.0) return std::strong_ordering::greater;
  if (d < 0.0) return std::strong_ordering::less;
  return std::strong_ordering::equal;
}

struct AgentState {
  Strategy strategy = Strategy::Defector;
  double lambda = 0.0;
  Reward reward{};

  friend bool operator==(const AgentState&, const AgentState&) = default;
};

struct PayoffParams {
  double cb = 0.5;

  bool valid() const { return cb > 0.0 && cb < 1.0; }
};

struct FehrSchmidtParams {
  double k1 = 0.0;
  double k2 = 0.0;
};

class InvalidParams : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

using PayoffMatrix = std::array<std::array<double, 2>, 2>;

inline std::size_t strategy_index(Strategy s) { return s == Strategy::Cooperator ? 0 : 1; }

/// Row = focal player's strategy, column = opponent's; order (C, D).
inline PayoffMatrix normalized_payoffs(const PayoffParams& p) {
  return {{{1.0, 0.0}, {1.0 + p.cb, p.cb}}};
}

/// Reward increments for the focal player and the opponent of one game.
inline std::pair<Reward, Reward> payoff(Strategy focal, Strategy other) {
  const bool fc = focal == Strategy::Cooperator;
  const bool oc = other == Strategy::Cooperator;
  if (fc && oc) return {{1, 0}, {1, 0}};
  if (fc && !oc) return {{0, 0}, {1, 1}};
  if (!fc && oc) return {{1, 1}, {0, 0}};
  return {{0, 1}, {0, 1}};
}

/// Probability that an agent with sensitivity `lambda_i` and reward `r_i`
/// accepts a partner holding `r_j`.
inline double accept_probability(double lambda_i, const Reward& r_i, const Reward& r_j, double cb) {
  return std::exp(-lambda_i * reward_distance(r_i, r_j, cb));
}

/// Mutual-consent probability that i and j play; symmetric in (i, j).
inline double interaction_probability(double lambda_i, double lambda_j, const Reward& r_i,
                                      const Reward& r_j, double cb) {
  return std::exp(-(lambda_i + lambda_j) * reward_distance(r_i, r_j, cb));
}

/// Real-valued overloads taking a reward gap directly.
inline double accept_probability(double lambda_i, double reward_gap) {
  return std::exp(-lambda_i * std::fabs(reward_gap));
}

inline double interaction_probability(double lambda_i, double lambda_j, double reward_gap) {
  return std::exp(-(lambda_i + lambda_j) * std::fabs(reward_gap));
}

inline void validate(const FehrSchmidtParams& k) {
  if (!(k.k1 < k.k2)) throw InvalidParams("fehr-schmidt: requires k1 < k2");
  if (!(k.k2 >= 0.0 && k.k2 <= 1.0)) throw InvalidParams("fehr-schmidt: requires 0 <= k2 <= 1");
}

// Reference only; the dynamics select partners on raw accumulated reward.
// k1 weights the disadvantageous gap and k2 the advantageous one.
inline double fehr_schmidt_utility(double x_i, double x_j, const FehrSchmidtParams& k) {
  validate(k);
  return x_i - k.k1 * std::max(x_j - x_i, 0.0) - k.k2 * std::max(x_i - x_j, 0.0);
}

}  // namespace ineq

#endif  // INEQ_MODEL_HPP
