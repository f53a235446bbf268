#ifndef INEQ_WELLMIXED_HPP
#define INEQ_WELLMIXED_HPP

// Complete-mixing population: every agent can be sampled as a candidate
// partner of every other.
//
// Draw order per generation:
//   1. permutation of initiators (Fisher-Yates, n-1 index draws)
//   2. per initiator: ns candidate draws, optional tie-break, one play draw
//   3. reproduction: per offspring a tournament pair, optional tie coin,
//      then the mutation draws

#include <cstddef>
#include <span>
#include <vector>

#include "config.hpp"
#include "evolution.hpp"
#include "interaction.hpp"
#include "metrics.hpp"
#include "rng.hpp"

namespace ineq {

using Population = std::vector<AgentState>;

template <RandomSource R>
Population init_population(const SimConfig& cfg, R& rng) {
  return init_agents(cfg.n, cfg, rng);
}

/// `ns` distinct indices drawn uniformly from [0, n) without `i`.
template <RandomSource R>
void sample_candidates(std::size_t i, std::size_t n, std::size_t ns, R& rng, std::vector<std::size_t>& out) {
  sample_without_replacement(n - 1, ns, rng, out);
  for (auto& x : out) {
    if (x >= i) ++x;
  }
}

template <RandomSource R>
std::vector<std::size_t> sample_candidates(std::size_t i, std::size_t n, std::size_t ns, R& rng) {
  std::vector<std::size_t> out;
  sample_candidates(i, n, ns, rng, out);
  return out;
}

/// Play phase of one generation. Rewards must be zero on entry.
template <RandomSource R>
GenerationRecord run_generation_mixed(Population& pop, const SimConfig& cfg, R& rng,
                                      std::size_t generation = 0) {
  const std::size_t n = pop.size();
  const PayoffParams p{cfg.cb};
  InteractionTally tally;
  std::vector<std::size_t> candidates;
  std::vector<std::size_t> scratch;
  const auto order = random_permutation(n, rng);
  for (const std::size_t i : order) {
    sample_candidates(i, n, cfg.ns, rng, candidates);
    const std::size_t j = select_partner(i, candidates, pop, cfg.cb, rng, scratch);
    attempt_interaction(i, j, pop, p, rng, tally);
  }
  GenerationRecord rec = population_record(generation, pop);
  rec.tally = tally;
  return rec;
}

/// Full run: `gmax` generations of play then reproduction. Each record
/// describes the population that played that generation.
template <RandomSource R>
std::vector<GenerationRecord> run_simulation_mixed(const SimConfig& cfg, R& rng) {
  validate(cfg);
  const MutationParams m{cfg.mu};
  Population pop = init_population(cfg, rng);
  std::vector<GenerationRecord> records;
  records.reserve(cfg.gmax);
  for (std::size_t g = 0; g < cfg.gmax; ++g) {
    reset_rewards(pop);
    records.push_back(run_generation_mixed(pop, cfg, rng, g));
    pop = reproduce_mixed(pop, cfg.cb, m, rng);
  }
  return records;
}

inline std::vector<GenerationRecord> run_simulation_mixed(const SimConfig& cfg, std::uint64_t seed) {
  RngStream rng(seed);
  return run_simulation_mixed(cfg, rng);
}

}  // namespace ineq

#endif  // INEQ_WELLMIXED_HPP
