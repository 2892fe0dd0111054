#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace neurodes {

enum class BehaviorClass {
    lif,
    excitable,
    rebound_spiking,
    spiking_rebound_bursting,
};

std::string to_string(BehaviorClass c);
BehaviorClass behavior_class_from_string(const std::string& s);

/// Voltage-dependent gate: Boltzmann steady state and a Gaussian-bump time
/// constant,
///   x_inf(V) = 1 / (1 + exp((v_half - V) / k))
///   tau_x(V) = tau_base + tau_amp * exp(-((V - tau_v) / tau_sigma)^2)
/// k < 0 gives an inactivation-style (decreasing) steady state.
struct GateKinetics {
    int exponent = 0; // 0 means the gate is absent
    double v_half = 0.0;
    double k = 1.0;
    double tau_base = 1.0;
    double tau_amp = 0.0;
    double tau_v = 0.0;
    double tau_sigma = 30.0;

    double steady_state(double v) const;
    double time_constant(double v) const;
};

struct IonChannel {
    std::string name;
    double g_max = 0.0; // mS/cm^2
    double e_rev = 0.0; // mV
    GateKinetics activation;
    GateKinetics inactivation;

    int gate_count() const {
        return (activation.exponent > 0 ? 1 : 0) + (inactivation.exponent > 0 ? 1 : 0);
    }
};

struct NeuronSpec {
    std::string id;
    BehaviorClass behavior_class = BehaviorClass::excitable;
    double capacitance = 1.0;     // uF/cm^2
    double g_leak = 0.3;          // mS/cm^2
    double e_leak = -54.4;        // mV
    double noise_amplitude = 0.0; // uA/cm^2, current noise std-dev
    std::vector<IonChannel> channels;
};

enum class SynapseKind { excitatory, inhibitory };
enum class SynapseSpeed { fast, slow };

std::string to_string(SynapseKind k);
std::string to_string(SynapseSpeed s);
SynapseKind synapse_kind_from_string(const std::string& s);
SynapseSpeed synapse_speed_from_string(const std::string& s);

struct SynapseSpec {
    std::string pre;
    std::string post;
    SynapseKind kind = SynapseKind::excitatory;
    SynapseSpeed speed = SynapseSpeed::fast;
    double g = 0.0;           // mS/cm^2
    double e_rev = 0.0;       // mV
    double v_half = -20.0;    // presynaptic activation midpoint, mV
    double k = 5.0;           // activation slope, mV
    double tau_rise = 0.5;    // ms
    double tau_decay = 5.0;   // ms

    double steady_activation(double v_pre) const;
};

struct Pulse {
    double start = 0.0;     // ms
    double duration = 0.0;  // ms
    double amplitude = 0.0; // uA/cm^2; sign encodes excitatory (+) / inhibitory (-)
};

struct StimulusProgram {
    // neuron id -> pulse list; kept as a sorted vector for stable iteration
    std::vector<std::pair<std::string, std::vector<Pulse>>> entries;

    const std::vector<Pulse>* pulses_for(const std::string& neuron) const;
    std::vector<Pulse>& at(const std::string& neuron);
    double current_at(const std::string& neuron, double t) const;
    double end_time() const;
};

struct CircuitSpec {
    std::vector<NeuronSpec> neurons;
    std::vector<SynapseSpec> synapses;

    const NeuronSpec* find_neuron(const std::string& id) const;
};

struct SimConfig {
    double dt = 0.01;     // ms
    double t_end = 100.0; // ms
    std::uint64_t seed = 0;
    int record_stride = 1;
    bool record_gates = true;
};

/// Validation throws validation_error with a description of the first
/// problem found.
void validate(const GateKinetics& g, const std::string& where);
void validate(const NeuronSpec& n);
void validate(const SynapseSpec& s, const CircuitSpec& circuit);
void validate(const StimulusProgram& p, const CircuitSpec& circuit);
void validate(const CircuitSpec& c);
void validate(const SimConfig& c);

} // namespace neurodes
