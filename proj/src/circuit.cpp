#include "neurodes/circuit.hpp"

#include <algorithm>
#include <cmath>

#include "neurodes/errors.hpp"

namespace neurodes {

std::string to_string(BehaviorClass c) {
    switch (c) {
    case BehaviorClass::lif: return "LIF";
    case BehaviorClass::excitable: return "EXCITABLE";
    case BehaviorClass::rebound_spiking: return "REBOUND_SPIKING";
    case BehaviorClass::spiking_rebound_bursting: return "SPIKING_REBOUND_BURSTING";
    }
    return "EXCITABLE";
}

BehaviorClass behavior_class_from_string(const std::string& s) {
    if (s == "LIF") return BehaviorClass::lif;
    if (s == "EXCITABLE") return BehaviorClass::excitable;
    if (s == "REBOUND_SPIKING") return BehaviorClass::rebound_spiking;
    if (s == "SPIKING_REBOUND_BURSTING") return BehaviorClass::spiking_rebound_bursting;
    throw validation_error("unknown behavior class: " + s);
}

std::string to_string(SynapseKind k) {
    return k == SynapseKind::excitatory ? "EXCITATORY" : "INHIBITORY";
}

std::string to_string(SynapseSpeed s) {
    return s == SynapseSpeed::fast ? "FAST" : "SLOW";
}

SynapseKind synapse_kind_from_string(const std::string& s) {
    if (s == "EXCITATORY") return SynapseKind::excitatory;
    if (s == "INHIBITORY") return SynapseKind::inhibitory;
    throw validation_error("unknown synapse kind: " + s);
}

SynapseSpeed synapse_speed_from_string(const std::string& s) {
    if (s == "FAST") return SynapseSpeed::fast;
    if (s == "SLOW") return SynapseSpeed::slow;
    throw validation_error("unknown synapse speed: " + s);
}

double GateKinetics::steady_state(double v) const {
    return 1.0 / (1.0 + std::exp((v_half - v) / k));
}

double GateKinetics::time_constant(double v) const {
    const double z = (v - tau_v) / tau_sigma;
    return tau_base + tau_amp * std::exp(-z * z);
}

double SynapseSpec::steady_activation(double v_pre) const {
    return 1.0 / (1.0 + std::exp((v_half - v_pre) / k));
}

const std::vector<Pulse>* StimulusProgram::pulses_for(const std::string& neuron) const {
    for (const auto& [id, pulses] : entries)
        if (id == neuron) return &pulses;
    return nullptr;
}

std::vector<Pulse>& StimulusProgram::at(const std::string& neuron) {
    for (auto& [id, pulses] : entries)
        if (id == neuron) return pulses;
    entries.push_back({neuron, {}});
    return entries.back().second;
}

double StimulusProgram::current_at(const std::string& neuron, double t) const {
    const auto* pulses = pulses_for(neuron);
    if (!pulses) return 0.0;
    for (const auto& p : *pulses)
        if (t >= p.start && t < p.start + p.duration) return p.amplitude;
    return 0.0;
}

double StimulusProgram::end_time() const {
    double end = 0.0;
    for (const auto& [id, pulses] : entries)
        for (const auto& p : pulses) end = std::max(end, p.start + p.duration);
    return end;
}

const NeuronSpec* CircuitSpec::find_neuron(const std::string& id) const {
    for (const auto& n : neurons)
        if (n.id == id) return &n;
    return nullptr;
}

void validate(const GateKinetics& g, const std::string& where) {
    if (g.exponent < 0) throw validation_error(where + ": gate exponent must be >= 0");
    if (g.exponent == 0) return;
    if (g.k == 0.0) throw validation_error(where + ": gate slope k must be nonzero");
    if (g.tau_base <= 0.0) throw validation_error(where + ": tau_base must be > 0");
    if (g.tau_amp < 0.0) throw validation_error(where + ": tau_amp must be >= 0");
    if (g.tau_sigma <= 0.0) throw validation_error(where + ": tau_sigma must be > 0");
    // tau_base > 0 and tau_amp >= 0 make tau positive on all of [-120, 60] mV
}

void validate(const NeuronSpec& n) {
    if (n.id.empty()) throw validation_error("neuron id must be nonempty");
    if (n.behavior_class == BehaviorClass::lif)
        throw validation_error("neuron " + n.id +
                               ": LIF neurons are integrated by the dedicated LIF path, not the "
                               "conductance-based simulator");
    if (!(n.capacitance > 0.0)) throw validation_error("neuron " + n.id + ": capacitance must be > 0");
    if (n.g_leak < 0.0) throw validation_error("neuron " + n.id + ": leak conductance must be >= 0");
    if (n.noise_amplitude < 0.0)
        throw validation_error("neuron " + n.id + ": noise amplitude must be >= 0");
    for (const auto& ch : n.channels) {
        const std::string where = "neuron " + n.id + ", channel " + ch.name;
        if (ch.g_max < 0.0) throw validation_error(where + ": g_max must be >= 0");
        validate(ch.activation, where + " activation");
        validate(ch.inactivation, where + " inactivation");
    }
}

void validate(const SynapseSpec& s, const CircuitSpec& circuit) {
    const std::string where = "synapse " + s.pre + "->" + s.post;
    if (s.pre == s.post) throw validation_error(where + ": self-synapses are not allowed");
    if (!circuit.find_neuron(s.pre)) throw validation_error(where + ": unknown presynaptic neuron");
    if (!circuit.find_neuron(s.post)) throw validation_error(where + ": unknown postsynaptic neuron");
    if (s.g < 0.0) throw validation_error(where + ": conductance must be >= 0");
    if (s.kind == SynapseKind::excitatory && s.e_rev < 0.0)
        throw validation_error(where + ": excitatory reversal must lie above the spiking threshold band (>= 0 mV)");
    if (s.kind == SynapseKind::inhibitory && s.e_rev > -70.0)
        throw validation_error(where + ": inhibitory reversal must lie below the resting band (<= -70 mV)");
    if (s.tau_rise <= 0.0 || s.tau_decay <= 0.0)
        throw validation_error(where + ": time constants must be > 0");
    if (s.k == 0.0) throw validation_error(where + ": activation slope must be nonzero");
}

void validate(const StimulusProgram& p, const CircuitSpec& circuit) {
    for (const auto& [id, pulses] : p.entries) {
        if (!circuit.find_neuron(id))
            throw validation_error("stimulus references unknown neuron " + id);
        std::vector<Pulse> sorted = pulses;
        std::sort(sorted.begin(), sorted.end(),
                  [](const Pulse& a, const Pulse& b) { return a.start < b.start; });
        double prev_end = -1.0;
        for (const auto& pulse : sorted) {
            if (!(pulse.duration > 0.0))
                throw validation_error("stimulus for neuron " + id + ": pulse durations must be > 0");
            if (pulse.start < prev_end)
                throw validation_error("stimulus for neuron " + id + ": pulses overlap");
            prev_end = pulse.start + pulse.duration;
        }
    }
}

void validate(const CircuitSpec& c) {
    if (c.neurons.empty()) throw validation_error("circuit has no neurons");
    std::vector<std::string> ids;
    for (const auto& n : c.neurons) {
        validate(n);
        if (std::find(ids.begin(), ids.end(), n.id) != ids.end())
            throw validation_error("duplicate neuron id: " + n.id);
        ids.push_back(n.id);
    }
    for (const auto& s : c.synapses) validate(s, c);
}

void validate(const SimConfig& c) {
    if (!(c.dt > 0.0)) throw validation_error("config: dt must be > 0");
    if (!(c.t_end >= c.dt)) throw validation_error("config: t_end must be >= dt");
    if (c.record_stride < 1) throw validation_error("config: record_stride must be >= 1");
}

} // namespace neurodes
