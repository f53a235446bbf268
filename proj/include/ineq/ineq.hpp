#ifndef INEQ_INEQ_HPP
#define INEQ_INEQ_HPP

#include "config.hpp"
#include "config_io.hpp"
#include "evolution.hpp"
#include "experiment.hpp"
#include "grid.hpp"
#include "interaction.hpp"
#include "lattice.hpp"
#include "metrics.hpp"
#include "model.hpp"
#include "rng.hpp"
#include "simulation.hpp"
#include "wellmixed.hpp"

namespace ineq {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace ineq

#endif  // INEQ_INEQ_HPP
