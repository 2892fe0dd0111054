#include "neurodes/trials.hpp"

#include <exception>
#include <mutex>

#include "neurodes/rng.hpp"

namespace neurodes {

bool openmp_enabled() {
#ifdef _OPENMP
    return true;
#else
    return false;
#endif
}

void for_each_trial(std::size_t n, const std::function<void(std::size_t)>& body, BatchPolicy policy) {
    if (policy == BatchPolicy::serial || !openmp_enabled()) {
        for (std::size_t t = 0; t < n; ++t) body(t);
        return;
    }
    std::exception_ptr first_error;
    std::mutex error_mutex;
#pragma omp parallel for schedule(dynamic)
    for (long long t = 0; t < static_cast<long long>(n); ++t) {
        try {
            body(static_cast<std::size_t>(t));
        } catch (...) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!first_error) first_error = std::current_exception();
        }
    }
    if (first_error) std::rethrow_exception(first_error);
}

std::uint64_t trial_seed(std::uint64_t seed, std::size_t t) {
    return derive_seed(seed, static_cast<std::uint64_t>(t));
}

std::vector<SimulationResult> simulate_batch(const CircuitSpec& circuit,
                                             const StimulusProgram& stimulus,
                                             const SimConfig& config, std::size_t n_trials,
                                             BatchPolicy policy) {
    // The relaxation to rest is identical across trials; do it once.
    const std::vector<double> y0 = initial_state(circuit);
    std::vector<SimulationResult> results(n_trials);
    for_each_trial(
        n_trials,
        [&](std::size_t t) {
            SimConfig cfg = config;
            cfg.seed = trial_seed(config.seed, t);
            results[t] = simulate_from(circuit, stimulus, cfg, y0);
        },
        policy);
    return results;
}

} // namespace neurodes
