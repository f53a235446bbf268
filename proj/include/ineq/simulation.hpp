#ifndef INEQ_SIMULATION_HPP
#define INEQ_SIMULATION_HPP

#include <cstdint>
#include <vector>

#include "config.hpp"
#include "lattice.hpp"
#include "wellmixed.hpp"

namespace ineq {

/// Runs either model, dispatching on cfg.model. The sink only fires for
/// lattice runs with snapshot_every set.
inline std::vector<GenerationRecord> run_simulation(const SimConfig& cfg, std::uint64_t seed,
                                                    const SnapshotSink& sink = {}) {
  return cfg.model == ModelKind::Mixed ? run_simulation_mixed(cfg, seed) : run_simulation_lattice(cfg, seed, sink);
}

}  // namespace ineq

#endif  // INEQ_SIMULATION_HPP
