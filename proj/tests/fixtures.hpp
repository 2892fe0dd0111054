#pragma once

// Hand-coded reference automata for the single-neuron models, the synapse
// constructions, and the oscillator. These are written out state by state,
// independent of the builder code they are used to check.

#include <string>
#include <utility>
#include <vector>

#include "neurodes/automaton.hpp"

namespace fixtures {

using neurodes::Automaton;
using neurodes::TransitionKind;

inline Automaton single_lif(const std::string& id) {
    Automaton a;
    a.add_state("i" + id);
    a.initial = "i" + id;
    a.add_event("sigma" + id, TransitionKind::external_excitatory);
    a.add_transition("i" + id, "sigma" + id, "i" + id);
    return a;
}

inline Automaton single_excitable(const std::string& id) {
    Automaton a;
    a.add_state("i" + id);
    a.add_state("s" + id);
    a.initial = "i" + id;
    a.add_event("sigma" + id, TransitionKind::external_excitatory);
    a.add_event("eta" + id, TransitionKind::internal);
    a.add_transition("i" + id, "sigma" + id, "s" + id);
    a.add_transition("s" + id, "eta" + id, "i" + id);
    return a;
}

inline Automaton single_rebound_spiking(const std::string& id) {
    Automaton a = single_excitable(id);
    a.add_event("rho_rebound" + id, TransitionKind::external_inhibitory);
    a.add_transition("i" + id, "rho_rebound" + id, "s" + id);
    return a;
}

inline Automaton single_burster(const std::string& id) {
    Automaton a;
    a.add_state("b" + id);
    a.add_state("i" + id);
    a.add_state("s" + id);
    a.initial = "i" + id;
    a.add_event("sigma" + id, TransitionKind::external_excitatory);
    a.add_event("beta" + id, TransitionKind::external_inhibitory);
    a.add_event("eta" + id, TransitionKind::internal);
    a.add_event("rho" + id, TransitionKind::internal);
    a.add_transition("i" + id, "sigma" + id, "s" + id);
    a.add_transition("i" + id, "beta" + id, "b" + id);
    a.add_transition("s" + id, "eta" + id, "i" + id);
    a.add_transition("b" + id, "rho" + id, "i" + id);
    return a;
}

// Excitatory synapse 1 -> 2 between rebound spikers, outside input only to
// neuron 1: both neurons fire together on sigma1/rho_rebound1 and return
// independently.
inline Automaton excitatory_pair_composite() {
    Automaton a;
    for (const char* s : {"i1i2", "s1s2", "s1i2", "i1s2"}) a.add_state(s);
    a.initial = "i1i2";
    a.add_event("sigma1", TransitionKind::external_excitatory);
    a.add_event("rho_rebound1", TransitionKind::external_inhibitory);
    a.add_event("eta1", TransitionKind::internal);
    a.add_event("eta2", TransitionKind::internal);
    a.add_transition("i1i2", "sigma1", "s1s2");
    a.add_transition("i1i2", "rho_rebound1", "s1s2");
    a.add_transition("s1s2", "eta1", "i1s2");
    a.add_transition("s1s2", "eta2", "s1i2");
    a.add_transition("s1i2", "eta1", "i1i2");
    a.add_transition("i1s2", "eta2", "i1i2");
    return a;
}

// Inhibitory synapse 1 -> 2: neuron 2 rebounds exactly when neuron 1
// returns to rest, so eta1 moves the pair from s1i2 to i1s2.
inline Automaton inhibitory_pair_composite() {
    Automaton a;
    for (const char* s : {"i1i2", "s1i2", "i1s2"}) a.add_state(s);
    a.initial = "i1i2";
    a.add_event("sigma1", TransitionKind::external_excitatory);
    a.add_event("rho_rebound1", TransitionKind::external_inhibitory);
    a.add_event("eta1", TransitionKind::internal);
    a.add_event("eta2", TransitionKind::internal);
    a.add_transition("i1i2", "sigma1", "s1i2");
    a.add_transition("i1i2", "rho_rebound1", "s1i2");
    a.add_transition("s1i2", "eta1", "i1s2");
    a.add_transition("i1s2", "eta2", "i1i2");
    return a;
}

// Mutual inhibition: after one kick the pair alternates forever.
inline Automaton hco_composite() {
    Automaton a;
    for (const char* s : {"i1i2", "s1i2", "i1s2"}) a.add_state(s);
    a.initial = "i1i2";
    a.add_event("sigma1", TransitionKind::external_excitatory);
    a.add_event("rho_rebound1", TransitionKind::external_inhibitory);
    a.add_event("eta1", TransitionKind::internal);
    a.add_event("eta2", TransitionKind::internal);
    a.add_transition("i1i2", "sigma1", "s1i2");
    a.add_transition("i1i2", "rho_rebound1", "s1i2");
    a.add_transition("s1i2", "eta1", "i1s2");
    a.add_transition("i1s2", "eta2", "s1i2");
    return a;
}

// Neuron 2 of the excitatory pair after rewriting: its own kick events are
// gone and neuron 1's onsets fire it instead.
inline Automaton excitatory_target() {
    Automaton a;
    a.add_state("i2");
    a.add_state("s2");
    a.initial = "i2";
    a.add_event("sigma1", TransitionKind::external_excitatory);
    a.add_event("rho_rebound1", TransitionKind::external_inhibitory);
    a.add_event("eta2", TransitionKind::internal);
    a.add_transition("i2", "sigma1", "s2");
    a.add_transition("i2", "rho_rebound1", "s2");
    a.add_transition("s2", "eta2", "i2");
    return a;
}

// Neuron 2 of the inhibitory pair after rewriting: eta1 forces the rebound,
// and neuron 1's kick events are only accepted while neuron 2 is idle.
inline Automaton inhibitory_target() {
    Automaton a;
    a.add_state("i2");
    a.add_state("s2");
    a.initial = "i2";
    a.add_event("eta1", TransitionKind::internal);
    a.add_event("eta2", TransitionKind::internal);
    a.add_event("sigma1", TransitionKind::external_excitatory);
    a.add_event("rho_rebound1", TransitionKind::external_inhibitory);
    a.add_transition("i2", "eta1", "s2");
    a.add_transition("s2", "eta2", "i2");
    a.add_transition("i2", "sigma1", "i2");
    a.add_transition("i2", "rho_rebound1", "i2");
    return a;
}

// Factors of the mutually inhibiting pair (interaction with neuron 1 only).
inline Automaton hco_factor_1() {
    Automaton a;
    a.add_state("i1");
    a.add_state("s1");
    a.initial = "i1";
    a.add_event("sigma1", TransitionKind::external_excitatory);
    a.add_event("rho_rebound1", TransitionKind::external_inhibitory);
    a.add_event("eta1", TransitionKind::internal);
    a.add_event("eta2", TransitionKind::internal);
    a.add_transition("i1", "sigma1", "s1");
    a.add_transition("i1", "rho_rebound1", "s1");
    a.add_transition("s1", "eta1", "i1");
    a.add_transition("i1", "eta2", "s1");
    return a;
}

inline Automaton hco_factor_2() {
    Automaton a;
    a.add_state("i2");
    a.add_state("s2");
    a.initial = "i2";
    a.add_event("eta1", TransitionKind::internal);
    a.add_event("eta2", TransitionKind::internal);
    a.add_event("sigma1", TransitionKind::external_excitatory);
    a.add_event("rho_rebound1", TransitionKind::external_inhibitory);
    a.add_transition("i2", "eta1", "s2");
    a.add_transition("s2", "eta2", "i2");
    a.add_transition("i2", "sigma1", "i2");
    a.add_transition("i2", "rho_rebound1", "i2");
    return a;
}

inline std::vector<std::pair<std::string, Automaton>> all() {
    return {
        {"single_lif", single_lif("1")},
        {"single_excitable", single_excitable("1")},
        {"single_rebound_spiking", single_rebound_spiking("1")},
        {"single_burster", single_burster("1")},
        {"excitatory_pair_composite", excitatory_pair_composite()},
        {"inhibitory_pair_composite", inhibitory_pair_composite()},
        {"hco_composite", hco_composite()},
    };
}

} // namespace fixtures
