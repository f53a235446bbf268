#ifndef INEQ_LATTICE_HPP
#define INEQ_LATTICE_HPP

// Spatial variant: candidates are the von Neumann neighbors, reproduction is
// a local tournament, and the whole grid is replaced synchronously.
//
// Draw order per generation:
//   1. permutation of cells (Fisher-Yates)
//   2. per initiating cell: optional tie-break among neighbors, one play draw
//   3. reproduction, cells in row-major order: tournament pair from the
//      local pool, optional tie coin, then the mutation draws

#include <cstddef>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "config.hpp"
#include "evolution.hpp"
#include "grid.hpp"
#include "interaction.hpp"
#include "metrics.hpp"
#include "rng.hpp"

namespace ineq {

template <RandomSource R>
LatticeGrid init_lattice(const SimConfig& cfg, R& rng) {
  LatticeGrid g;
  g.rows = cfg.rows;
  g.cols = cfg.cols;
  g.cells = init_agents(cfg.rows * cfg.cols, cfg, rng);
  return g;
}

/// Play phase of one generation on the grid. Rewards must be zero on entry.
template <RandomSource R>
GenerationRecord run_generation_lattice(LatticeGrid& grid, const SimConfig& cfg, const Adjacency& adj, R& rng,
                                        std::size_t generation = 0) {
  const PayoffParams p{cfg.cb};
  InteractionTally tally;
  std::vector<std::pair<std::size_t, std::size_t>> games;
  std::vector<std::size_t> scratch;
  const auto order = random_permutation(grid.size(), rng);
  for (const std::size_t i : order) {
    const std::size_t j = select_partner(i, adj.of(i), grid.cells, cfg.cb, rng, scratch);
    if (attempt_interaction(i, j, grid.cells, p, rng, tally)) games.emplace_back(i, j);
  }
  GenerationRecord rec = population_record(generation, grid.cells);
  rec.tally = tally;
  const Components comps = coop_components(grid.cells, adj);
  rec.largest_coop_cluster = comps.largest();
  rec.frac_within_cluster = within_cluster_fraction(games, comps);
  return rec;
}

template <RandomSource R>
GenerationRecord run_generation_lattice(LatticeGrid& grid, const SimConfig& cfg, R& rng,
                                        std::size_t generation = 0) {
  return run_generation_lattice(grid, cfg, Adjacency(grid.rows, grid.cols, cfg.torus), rng, generation);
}

/// Reproduction pool of a cell: its neighbors, then the cell itself when
/// `include_self`.
inline std::vector<std::size_t> reproduction_pool(std::size_t cell, const Adjacency& adj, bool include_self) {
  const auto nb = adj.of(cell);
  std::vector<std::size_t> pool(nb.begin(), nb.end());
  if (include_self) pool.push_back(cell);
  return pool;
}

template <RandomSource R>
std::size_t local_binary_tournament(std::size_t cell, const LatticeGrid& grid, const SimConfig& cfg,
                                    const Adjacency& adj, R& rng) {
  const auto pool = reproduction_pool(cell, adj, cfg.reproduction_includes_self);
  return binary_tournament_pool(pool, grid.cells, cfg.cb, rng);
}

template <RandomSource R>
Position local_binary_tournament(Position pos, const LatticeGrid& grid, const SimConfig& cfg, R& rng) {
  const Adjacency adj(grid.rows, grid.cols, cfg.torus);
  return grid.pos(local_binary_tournament(grid.flat(pos), grid, cfg, adj, rng));
}

/// Synchronous replacement: every parent is chosen from `grid` as it stood
/// after play.
template <RandomSource R>
LatticeGrid step_lattice_evolution(const LatticeGrid& grid, const SimConfig& cfg, const Adjacency& adj, R& rng) {
  const MutationParams m{cfg.mu};
  LatticeGrid next(grid.rows, grid.cols);
  for (std::size_t cell = 0; cell < grid.size(); ++cell) {
    const std::size_t parent = local_binary_tournament(cell, grid, cfg, adj, rng);
    next.cells[cell] = mutate(offspring_of(grid.cells[parent]), m, rng);
  }
  return next;
}

template <RandomSource R>
LatticeGrid step_lattice_evolution(const LatticeGrid& grid, const SimConfig& cfg, R& rng) {
  return step_lattice_evolution(grid, cfg, Adjacency(grid.rows, grid.cols, cfg.torus), rng);
}

/// Called with (generation, grid as played, largest cooperative cluster).
using SnapshotSink = std::function<void(std::size_t, const LatticeGrid&, std::size_t)>;

template <RandomSource R>
std::vector<GenerationRecord> run_simulation_lattice(const SimConfig& cfg, R& rng, const SnapshotSink& sink = {}) {
  validate(cfg);
  const Adjacency adj(cfg.rows, cfg.cols, cfg.torus);
  LatticeGrid grid = init_lattice(cfg, rng);
  std::vector<GenerationRecord> records;
  records.reserve(cfg.gmax);
  for (std::size_t g = 0; g < cfg.gmax; ++g) {
    reset_rewards(grid.cells);
    records.push_back(run_generation_lattice(grid, cfg, adj, rng, g));
    if (sink && cfg.snapshot_every && g % *cfg.snapshot_every == 0) {
      sink(g, grid, *records.back().largest_coop_cluster);
    }
    grid = step_lattice_evolution(grid, cfg, adj, rng);
  }
  return records;
}

inline std::vector<GenerationRecord> run_simulation_lattice(const SimConfig& cfg, std::uint64_t seed,
                                                            const SnapshotSink& sink = {}) {
  RngStream rng(seed);
  return run_simulation_lattice(cfg, rng, sink);
}

}  // namespace ineq

#endif  // INEQ_LATTICE_HPP
