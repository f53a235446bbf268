#ifndef INEQ_EVOLUTION_HPP
#define INEQ_EVOLUTION_HPP

// Generation-boundary operators: binary tournament, mutation, reproduction.

#include <algorithm>
#include <cstddef>
#include <span>
#include <vector>

#include "model.hpp"
#include "rng.hpp"

namespace ineq {

struct MutationParams {
  double mu = 0.1;
  double lambda_lo = kLambdaMin;
  double lambda_hi = kLambdaMax;
};

/// Winner of a single tournament between agents `a` and `b`: strictly
/// greater reward value wins, an exact tie is settled by index(2).
template <RandomSource R>
std::size_t tournament_winner(std::size_t a, std::size_t b, std::span<const AgentState> agents, double cb,
                              R& rng) {
  const auto order = compare_rewards(agents[a].reward, agents[b].reward, cb);
  if (order > 0) return a;
  if (order < 0) return b;
  return rng.index(2) == 0 ? a : b;
}

/// Two distinct positions of a pool of size m >= 2: index(m) then index(m-1).
template <RandomSource R>
std::pair<std::size_t, std::size_t> draw_distinct_pair(std::size_t m, R& rng) {
  const std::size_t a = rng.index(m);
  std::size_t b = rng.index(m - 1);
  if (b >= a) ++b;
  return {a, b};
}

/// Tournament over the whole population; returns the parent index.
template <RandomSource R>
std::size_t binary_tournament_mixed(std::span<const AgentState> agents, double cb, R& rng) {
  const auto [a, b] = draw_distinct_pair(agents.size(), rng);
  return tournament_winner(a, b, agents, cb, rng);
}

/// Tournament restricted to `pool` (agent indices, size >= 2).
template <RandomSource R>
std::size_t binary_tournament_pool(std::span<const std::size_t> pool, std::span<const AgentState> agents,
                                   double cb, R& rng) {
  const auto [a, b] = draw_distinct_pair(pool.size(), rng);
  return tournament_winner(pool[a], pool[b], agents, cb, rng);
}

/// Type reset and lambda perturbation, each gated by its own unit() < mu.
/// Draws: unit, [index(2)], unit, [normal].
template <RandomSource R>
AgentState mutate(AgentState offspring, const MutationParams& m, R& rng) {
  if (rng.unit() < m.mu) {
    offspring.strategy = rng.index(2) == 0 ? Strategy::Cooperator : Strategy::Defector;
  }
  if (rng.unit() < m.mu) {
    offspring.lambda = std::clamp(offspring.lambda + rng.normal(), m.lambda_lo, m.lambda_hi);
  }
  return offspring;
}

inline AgentState offspring_of(const AgentState& parent) {
  return {parent.strategy, parent.lambda, Reward{}};
}

/// N tournaments, each followed by mutation of its offspring.
template <RandomSource R>
std::vector<AgentState> reproduce_mixed(std::span<const AgentState> agents, double cb, const MutationParams& m,
                                        R& rng) {
  std::vector<AgentState> next;
  next.reserve(agents.size());
  for (std::size_t k = 0; k < agents.size(); ++k) {
    const std::size_t parent = binary_tournament_mixed(agents, cb, rng);
    next.push_back(mutate(offspring_of(agents[parent]), m, rng));
  }
  return next;
}

}  // namespace ineq

#endif  // INEQ_EVOLUTION_HPP
