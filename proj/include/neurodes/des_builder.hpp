#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "neurodes/automaton.hpp"
#include "neurodes/circuit.hpp"

namespace neurodes {

struct TopologyNeuron {
    std::string id;
    BehaviorClass behavior_class = BehaviorClass::rebound_spiking;
};

struct TopologySynapse {
    std::string pre;
    std::string post;
    SynapseKind kind = SynapseKind::inhibitory;
    SynapseSpeed speed = SynapseSpeed::fast;
};

/// Wiring diagram of a network plus the set of neurons the outside world is
/// allowed to stimulate.
struct NetworkTopology {
    std::vector<TopologyNeuron> neurons;
    std::vector<TopologySynapse> synapses;
    std::set<std::string> interactable;

    const TopologyNeuron* find(const std::string& id) const;
    void validate() const;
};

struct WTAParams {
    int n = 2;
    // optional ordering constraints between winner states, e.g. {"s1","s3"}
    std::vector<std::pair<std::string, std::string>> excitatory_edges;
};

// Event and state naming shared by the builder, the extractor, and the CLI.
std::string state_idle(const std::string& id);
std::string state_spiking(const std::string& id);
std::string state_bursting(const std::string& id);
std::string sym_sigma(const std::string& id);       // excitatory-triggered spike onset
std::string sym_rho_rebound(const std::string& id); // rebound spike onset
std::string sym_eta(const std::string& id);         // return to rest after spiking
std::string sym_beta(const std::string& id);        // rebound burst onset
std::string sym_rho(const std::string& id);         // return to rest after bursting

/// Single-neuron automaton for a behavior class.
Automaton neuron_template(BehaviorClass cls, const std::string& id);

/// Applies the synapse rewriting rules to per-neuron templates: onsets of
/// synaptic targets become synchronized with the events that drive them,
/// and external transitions of non-interactable neurons are pruned.
std::map<std::string, Automaton> apply_synapse(const NetworkTopology& topology,
                                               const std::map<std::string, Automaton>& templates);

/// Templates -> rewriting -> parallel composition -> accessible part.
Automaton build_network_des(const NetworkTopology& topology);

/// N+1 states (idle + one per winner), transitions between every ordered
/// pair of distinct states, one unique event per edge. Winner-to-winner
/// moves are internal; idle edges are external-inhibitory. If the params
/// carry excitatory edges, the ordering restriction is applied on top.
Automaton wta_automaton(const WTAParams& params);

/// Ordering restriction: for every state with designated outgoing edges,
/// the designated winner-to-winner edges stay internal and all of its other
/// winner-to-winner edges become external-excitatory.
Automaton apply_excitatory_restriction(const Automaton& wta,
                                       const std::vector<std::pair<std::string, std::string>>& edges);

/// Winner-to-winner internal skeleton of a (restricted) WTA automaton:
/// the idle state and its edges are dropped, as are external edges.
/// The initial state is picked by the caller.
Automaton internal_winner_subautomaton(const Automaton& wta, const std::string& initial);

/// Topology implied by a continuous circuit: one entry per neuron and
/// synapse; the interactable set is the set of stimulated neurons.
NetworkTopology topology_from_circuit(const CircuitSpec& circuit, const StimulusProgram& stimulus);

} // namespace neurodes
