#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "neurodes/circuit.hpp"

namespace neurodes {

/// Full recorded trajectory of one run. Traces share the recording grid
/// `time`; gate traces are kept only when the config asks for them.
struct SimulationResult {
    SimConfig config;
    StimulusProgram stimulus;
    std::uint64_t seed = 0;

    std::vector<double> time; // ms, uniform spacing config.dt * record_stride
    std::vector<std::string> neuron_ids;
    std::vector<std::vector<double>> voltage;              // [neuron][sample], mV
    std::vector<std::vector<std::string>> gate_names;      // [neuron][gate]
    std::vector<std::vector<std::vector<double>>> gates;   // [neuron][gate][sample]
    std::vector<std::vector<double>> synapse_activation;   // [synapse][sample]

    std::size_t neuron_index(const std::string& id) const;
};

/// Per-neuron state vector layout: [V, gate_0, gate_1, ...] with gates in
/// channel order, activation before inactivation.
std::vector<double> resting_state(const NeuronSpec& neuron);

/// Membrane derivative dV/dt for a single neuron state (no synapses).
double membrane_dvdt(const NeuronSpec& neuron, const std::vector<double>& state, double i_ext);

/// Post-synaptic current g * activation * (e_rev - v_post), in uA/cm^2.
double synaptic_current(const SynapseSpec& syn, double v_pre, double v_post, double activation);

/// Initial condition for a whole circuit: every neuron at its resting
/// equilibrium, synapse activations at their presynaptic steady state.
std::vector<double> initial_state(const CircuitSpec& circuit);

/// Fixed-step RK4 integration of the conductance-based circuit under the
/// stimulus program, with optional per-neuron membrane current noise.
/// Deterministic for a given (circuit, stimulus, config).
SimulationResult simulate(const CircuitSpec& circuit, const StimulusProgram& stimulus,
                          const SimConfig& config);

/// As simulate(), starting from a caller-provided full state vector
/// (layout: neurons in order, then synapse activations).
SimulationResult simulate_from(const CircuitSpec& circuit, const StimulusProgram& stimulus,
                               const SimConfig& config, const std::vector<double>& y0);

// ---- leaky integrate-and-fire --------------------------------------------

struct LIFSpec {
    double alpha = 0.1; // leak rate, 1/ms
    double theta = 1.0; // reset threshold
};

struct LIFResult {
    std::vector<double> time;
    std::vector<double> x;
    std::vector<double> reset_times;
};

/// Integrates x' = -alpha x + u with reset to 0 when x exceeds theta.
/// The input is piecewise constant: the sum of the given pulses.
LIFResult simulate_lif(const LIFSpec& spec, const std::vector<Pulse>& input, const SimConfig& config);

} // namespace neurodes
