#pragma once

// Random self-loop-free automata for realization property tests. Every state
// keeps out-degree >= 1 so the winner-to-winner skeleton of the realized
// network is well defined.

#include <random>
#include <string>

#include "neurodes/automaton.hpp"

namespace testutil {

inline neurodes::Automaton random_self_loop_free(std::uint32_t seed) {
    std::mt19937 rng(seed);
    const int n = 3 + static_cast<int>(rng() % 4); // 3..6 states
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double density = 0.3 + 0.5 * unit(rng);

    neurodes::Automaton a;
    for (int i = 0; i < n; ++i) a.add_state("q" + std::to_string(i));
    a.initial = "q0";
    int event = 0;
    for (int i = 0; i < n; ++i) {
        bool has_out = false;
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            if (unit(rng) < density) {
                std::string ev = "e" + std::to_string(event++);
                a.add_event(ev, neurodes::TransitionKind::internal);
                a.add_transition("q" + std::to_string(i), ev, "q" + std::to_string(j));
                has_out = true;
            }
        }
        if (!has_out) {
            int j = static_cast<int>(rng() % static_cast<std::uint32_t>(n - 1));
            if (j >= i) ++j;
            std::string ev = "e" + std::to_string(event++);
            a.add_event(ev, neurodes::TransitionKind::internal);
            a.add_transition("q" + std::to_string(i), ev, "q" + std::to_string(j));
        }
    }
    return a;
}

} // namespace testutil
