#ifndef INEQ_METRICS_HPP
#define INEQ_METRICS_HPP

// Per-generation observables.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "grid.hpp"
#include "model.hpp"

namespace ineq {

struct InteractionTally {
  std::uint64_t cc = 0;
  std::uint64_t cd = 0;
  std::uint64_t dd = 0;
  std::uint64_t declined = 0;

  std::uint64_t played() const { return cc + cd + dd; }
  std::uint64_t attempts() const { return played() + declined; }

  void count_game(Strategy a, Strategy b) {
    const bool ac = a == Strategy::Cooperator;
    const bool bc = b == Strategy::Cooperator;
    if (ac && bc) {
      ++cc;
    } else if (ac || bc) {
      ++cd;
    } else {
      ++dd;
    }
  }

  friend bool operator==(const InteractionTally&, const InteractionTally&) = default;
};

struct GenerationRecord {
  std::size_t generation = 0;
  double f_c = 0.0;
  std::optional<double> mean_lambda_coop;
  double mean_lambda_all = 0.0;
  InteractionTally tally;
  std::optional<std::size_t> largest_coop_cluster;  // lattice only
  std::optional<double> frac_within_cluster;        // lattice only; none if no game played
  std::size_t payoff_classes = 0;

  friend bool operator==(const GenerationRecord&, const GenerationRecord&) = default;
};

inline std::size_t count_cooperators(std::span<const AgentState> agents) {
  return static_cast<std::size_t>(std::count_if(agents.begin(), agents.end(), [](const AgentState& a) {
    return a.strategy == Strategy::Cooperator;
  }));
}

inline double fraction_cooperators(std::span<const AgentState> agents) {
  return static_cast<double>(count_cooperators(agents)) / static_cast<double>(agents.size());
}

inline std::optional<double> mean_lambda_cooperators(std::span<const AgentState> agents) {
  double sum = 0.0;
  std::size_t count = 0;
  for (const auto& a : agents) {
    if (a.strategy == Strategy::Cooperator) {
      sum += a.lambda;
      ++count;
    }
  }
  if (count == 0) return std::nullopt;
  return sum / static_cast<double>(count);
}

inline double mean_lambda_all(std::span<const AgentState> agents) {
  double sum = 0.0;
  for (const auto& a : agents) sum += a.lambda;
  return agents.empty() ? 0.0 : sum / static_cast<double>(agents.size());
}

/// Number of distinct reward pairs (exact equality).
inline std::size_t payoff_classes(std::span<const AgentState> agents) {
  std::vector<Reward> rewards;
  rewards.reserve(agents.size());
  for (const auto& a : agents) rewards.push_back(a.reward);
  std::sort(rewards.begin(), rewards.end());
  return static_cast<std::size_t>(std::unique(rewards.begin(), rewards.end()) - rewards.begin());
}

/// Connected components of cooperator cells.
struct Components {
  static constexpr int kNone = -1;

  std::vector<int> label;         // per cell; kNone for defectors
  std::vector<std::size_t> sizes;  // per component label

  std::size_t largest() const {
    return sizes.empty() ? 0 : *std::max_element(sizes.begin(), sizes.end());
  }
};

/// Flood fill over cooperator cells using the given adjacency. Labels are
/// assigned in row-major order of each component's first cell.
inline Components coop_components(std::span<const AgentState> cells, const Adjacency& adj) {
  Components out;
  out.label.assign(cells.size(), Components::kNone);
  std::vector<std::size_t> stack;
  for (std::size_t seed = 0; seed < cells.size(); ++seed) {
    if (cells[seed].strategy != Strategy::Cooperator || out.label[seed] != Components::kNone) continue;
    const int id = static_cast<int>(out.sizes.size());
    std::size_t size = 0;
    out.label[seed] = id;
    stack.push_back(seed);
    while (!stack.empty()) {
      const std::size_t cell = stack.back();
      stack.pop_back();
      ++size;
      for (const std::size_t nb : adj.of(cell)) {
        if (cells[nb].strategy == Strategy::Cooperator && out.label[nb] == Components::kNone) {
          out.label[nb] = id;
          stack.push_back(nb);
        }
      }
    }
    out.sizes.push_back(size);
  }
  return out;
}

inline Components coop_components(const LatticeGrid& g, bool torus) {
  return coop_components(g.cells, Adjacency(g.rows, g.cols, torus));
}

inline std::size_t largest_coop_cluster(const LatticeGrid& g, bool torus) {
  return coop_components(g, torus).largest();
}

/// Fraction of played games whose endpoints are cooperators in the same
/// component. Games are (cell, cell) pairs; none when no game was played.
inline std::optional<double> within_cluster_fraction(std::span<const std::pair<std::size_t, std::size_t>> games,
                                                     const Components& comps) {
  if (games.empty()) return std::nullopt;
  std::size_t within = 0;
  for (const auto& [a, b] : games) {
    if (comps.label[a] != Components::kNone && comps.label[a] == comps.label[b]) ++within;
  }
  return static_cast<double>(within) / static_cast<double>(games.size());
}

/// Population-level fields of a record; the caller fills tally and lattice columns.
inline GenerationRecord population_record(std::size_t generation, std::span<const AgentState> agents) {
  GenerationRecord rec;
  rec.generation = generation;
  rec.f_c = fraction_cooperators(agents);
  rec.mean_lambda_coop = mean_lambda_cooperators(agents);
  rec.mean_lambda_all = mean_lambda_all(agents);
  rec.payoff_classes = payoff_classes(agents);
  return rec;
}

}  // namespace ineq

#endif  // INEQ_METRICS_HPP
