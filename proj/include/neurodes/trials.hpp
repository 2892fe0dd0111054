#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "neurodes/circuit.hpp"
#include "neurodes/simulate.hpp"

namespace neurodes {

enum class BatchPolicy { serial, parallel };

/// True when the library was built with OpenMP.
bool openmp_enabled();

/// Runs `body(0..n-1)`, serially or across OpenMP threads. Results must be
/// written into per-trial slots by the body; the first exception thrown by
/// any trial is rethrown after the loop finishes.
void for_each_trial(std::size_t n, const std::function<void(std::size_t)>& body, BatchPolicy policy);

/// Seed of trial `t` under master seed `seed`.
std::uint64_t trial_seed(std::uint64_t seed, std::size_t t);

/// Independent seeded runs of one circuit. Trial t uses
/// trial_seed(config.seed, t); outputs are indexed by trial and identical
/// under both policies.
std::vector<SimulationResult> simulate_batch(const CircuitSpec& circuit,
                                             const StimulusProgram& stimulus,
                                             const SimConfig& config, std::size_t n_trials,
                                             BatchPolicy policy);

} // namespace neurodes
