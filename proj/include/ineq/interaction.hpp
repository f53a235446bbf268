#ifndef INEQ_INTERACTION_HPP
#define INEQ_INTERACTION_HPP

// Partner choice and the mutual-consent game, shared by both engines.

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "config.hpp"
#include "metrics.hpp"
#include "model.hpp"
#include "rng.hpp"

namespace ineq {

/// Exact-count cooperator placement followed by per-agent lambda draws.
/// Draws: index(n - t) for t < k (partial Fisher-Yates), then n unit() draws.
template <RandomSource R>
std::vector<AgentState> init_agents(std::size_t n, const SimConfig& cfg, R& rng) {
  const auto k = static_cast<std::size_t>(std::llround(cfg.init_coop_frac * static_cast<double>(n)));
  std::vector<std::size_t> slots(n);
  for (std::size_t t = 0; t < n; ++t) slots[t] = t;
  std::vector<AgentState> agents(n);
  for (std::size_t t = 0; t < k; ++t) {
    const std::size_t j = t + rng.index(n - t);
    std::swap(slots[t], slots[j]);
    agents[slots[t]].strategy = Strategy::Cooperator;
  }
  const double span = cfg.lambda_init_hi - cfg.lambda_init_lo;
  for (auto& a : agents) a.lambda = cfg.lambda_init_lo + span * rng.unit();
  return agents;
}

/// Partner of initiator `i` among `candidates`: a uniform choice over the
/// candidates with the smallest reward distance to `i`, which are exactly the
/// maximizers of the acceptance probability when lambda_i > 0. With
/// lambda_i == 0 every candidate is accepted with certainty and all tie.
/// Draws index(ties) only when more than one candidate ties.
template <RandomSource R>
std::size_t select_partner(std::size_t i, std::span<const std::size_t> candidates,
                           std::span<const AgentState> agents, double cb, R& rng,
                           std::vector<std::size_t>& scratch) {
  scratch.clear();
  const AgentState& self = agents[i];
  if (self.lambda == 0.0) {
    scratch.assign(candidates.begin(), candidates.end());
  } else {
    double best = 0.0;
    for (const std::size_t j : candidates) {
      const double d = reward_distance(self.reward, agents[j].reward, cb);
      if (scratch.empty() || d < best) {
        best = d;
        scratch.clear();
        scratch.push_back(j);
      } else if (d == best) {
        scratch.push_back(j);
      }
    }
  }
  if (scratch.size() == 1) return scratch.front();
  return scratch[rng.index(scratch.size())];
}

template <RandomSource R>
std::size_t select_partner(std::size_t i, std::span<const std::size_t> candidates,
                           std::span<const AgentState> agents, double cb, R& rng) {
  std::vector<std::size_t> scratch;
  return select_partner(i, candidates, agents, cb, rng, scratch);
}

/// One unit() draw; plays iff it falls below the interaction probability.
/// A declined game consumes the initiator's turn.
template <RandomSource R>
bool attempt_interaction(std::size_t i, std::size_t j, std::span<AgentState> agents, const PayoffParams& p,
                         R& rng, InteractionTally& tally) {
  AgentState& a = agents[i];
  AgentState& b = agents[j];
  const double prob = interaction_probability(a.lambda, b.lambda, a.reward, b.reward, p.cb);
  if (!(rng.unit() < prob)) {
    ++tally.declined;
    return false;
  }
  const auto [da, db] = payoff(a.strategy, b.strategy);
  a.reward += da;
  b.reward += db;
  tally.count_game(a.strategy, b.strategy);
  return true;
}

inline void reset_rewards(std::span<AgentState> agents) {
  for (auto& a : agents) a.reward = Reward{};
}

}  // namespace ineq

#endif  // INEQ_INTERACTION_HPP
