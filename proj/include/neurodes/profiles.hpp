#pragma once

#include <string>

#include "neurodes/circuit.hpp"

namespace neurodes {
namespace profiles {

/// Default conductance sets, one per behavior class. Parameters are JSON
/// documents in the circuit file format; the simulator itself carries no
/// channel constants.
NeuronSpec excitable(const std::string& id);
NeuronSpec rebound_spiking(const std::string& id);
NeuronSpec spiking_rebound_bursting(const std::string& id);
NeuronSpec make_neuron(BehaviorClass cls, const std::string& id);

/// Rebound-spiking variant tuned for synaptic-timescale handoffs
/// (half-center oscillators and winner-take-all races).
NeuronSpec network_rebound_spiking(const std::string& id);

SynapseSpec synapse(SynapseKind kind, SynapseSpeed speed, const std::string& pre,
                    const std::string& post);

/// Mutually inhibiting pair, interactable via neuron "1".
CircuitSpec hco_circuit();

/// N rebound-spiking neurons with all-to-all fast inhibition and membrane
/// noise.
CircuitSpec wta_circuit(int n, double noise_amplitude);

/// Continuous calibration for realized automata: the winner neuron set,
/// synapse strengths, kick and run timing. One default profile, stored as
/// data and validated by the dynamic-soundness tests.
struct RealizationProfile {
    NeuronSpec neuron;        // id is overwritten per state
    SynapseSpec inhibitory;   // endpoints overwritten
    SynapseSpec excitatory;   // endpoints overwritten
    double noise_amplitude = 0.0; // applied when tie-breaking is needed
    double kick_time = 50.0;      // ms
    double kick_duration = 5.0;   // ms
    double kick_amplitude = 15.0; // uA/cm^2
    double dt = 0.02;             // ms
    double t_end = 1500.0;        // ms
};

RealizationProfile realization_profile();

} // namespace profiles
} // namespace neurodes
