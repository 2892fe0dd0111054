#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "neurodes/automaton.hpp"
#include "neurodes/circuit.hpp"
#include "neurodes/profiles.hpp"
#include "neurodes/trials.hpp"

namespace neurodes {

/// Compilation of a self-loop-free automaton into a winner-take-all circuit:
/// one neuron per state, all-to-all fast inhibition, one slow excitatory
/// synapse per transition.
struct RealizationPlan {
    std::map<std::string, std::string> state_to_neuron;
    /// transition index in the source automaton -> synapse index in circuit
    std::vector<std::size_t> transition_synapse;
    CircuitSpec circuit;

    std::string neuron_of(const std::string& state) const;
    std::string state_of(const std::string& neuron) const;
};

RealizationPlan realize(const Automaton& a);
RealizationPlan realize(const Automaton& a, const profiles::RealizationProfile& profile);

struct RoundTripVerdict {
    bool pass = false;
    std::string witness; // first structural mismatch when failing
};

/// Rebuilds the restricted WTA automaton from the plan and compares its
/// internal winner-to-winner skeleton with the source automaton under the
/// plan's state map. The idle state and its edges are outside the
/// comparison.
RoundTripVerdict round_trip_check(const Automaton& a);

struct RealizedRun {
    std::uint64_t seed = 0;
    std::vector<std::string> winner_states; // observed sequence, as source-automaton states
    bool conformant = false;                // sequence starts at the initial state and follows edges
};

/// Simulates the realized circuit `trials` times with one initiating kick to
/// the initial state's neuron; winner sequences are mapped back to source
/// states and checked against the automaton.
std::vector<RealizedRun> realize_and_simulate(const Automaton& a, int trials, std::uint64_t seed);
std::vector<RealizedRun> realize_and_simulate(const Automaton& a, int trials, std::uint64_t seed,
                                              const profiles::RealizationProfile& profile,
                                              BatchPolicy policy);

} // namespace neurodes
