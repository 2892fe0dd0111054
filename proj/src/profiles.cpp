#include "neurodes/profiles.hpp"

#include "neurodes/errors.hpp"
#include "neurodes/io.hpp"

namespace neurodes {
namespace profiles {

// Default conductance sets. The squid-axon kinetics are least-squares fits
// of the classical rate functions onto the Boltzmann/Gaussian gate family;
// the calcium and slow-potassium parameters are calibrated against the
// behavior-level tests (spike/no-spike thresholds, rebound, oscillation,
// winner handoff), not against waveforms. The leak reversal of each set is
// chosen so that -65 mV is the resting equilibrium.

namespace {

const char* kExcitable = R"({
  "id": "@", "class": "EXCITABLE",
  "capacitance": 1.0,
  "leak": {"g": 0.404, "e_rev": -58.186669},
  "noise_amplitude": 0.0,
  "channels": [
    {"name": "Na", "g_max": 120.0, "e_rev": 50.0,
     "activation":   {"exponent": 3, "v_half": -39.764, "k": 9.150,
                      "tau": {"base": 0.1011, "amp": 0.3871, "v_peak": -34.501, "sigma": 31.079}},
     "inactivation": {"exponent": 1, "v_half": -62.210, "k": -7.041,
                      "tau": {"base": 1.0864, "amp": 7.3565, "v_peak": -67.842, "sigma": 21.632}}},
    {"name": "K", "g_max": 36.0, "e_rev": -77.0,
     "activation":   {"exponent": 4, "v_half": -52.586, "k": 16.420,
                      "tau": {"base": 1.3352, "amp": 4.4469, "v_peak": -79.072, "sigma": 47.232}}}
  ]
})";

// Adds a low-threshold calcium current that de-inactivates under sustained
// hyperpolarization, plus a small slow potassium current that limits the
// rebound to a single spike.
const char* kReboundSpiking = R"({
  "id": "@", "class": "REBOUND_SPIKING",
  "capacitance": 1.0,
  "leak": {"g": 0.404, "e_rev": -55.762362},
  "noise_amplitude": 0.0,
  "channels": [
    {"name": "Na", "g_max": 120.0, "e_rev": 50.0,
     "activation":   {"exponent": 3, "v_half": -39.764, "k": 9.150,
                      "tau": {"base": 0.1011, "amp": 0.3871, "v_peak": -34.501, "sigma": 31.079}},
     "inactivation": {"exponent": 1, "v_half": -62.210, "k": -7.041,
                      "tau": {"base": 1.0864, "amp": 7.3565, "v_peak": -67.842, "sigma": 21.632}}},
    {"name": "K", "g_max": 36.0, "e_rev": -77.0,
     "activation":   {"exponent": 4, "v_half": -52.586, "k": 16.420,
                      "tau": {"base": 1.3352, "amp": 4.4469, "v_peak": -79.072, "sigma": 47.232}}},
    {"name": "CaT", "g_max": 3.0, "e_rev": 120.0,
     "activation":   {"exponent": 2, "v_half": -57.0, "k": 5.0,
                      "tau": {"base": 2.0, "amp": 2.0, "v_peak": -60.0, "sigma": 25.0}},
     "inactivation": {"exponent": 1, "v_half": -76.0, "k": -4.0,
                      "tau": {"base": 3.0, "amp": 160.0, "v_peak": -80.0, "sigma": 14.0}}},
    {"name": "Ks", "g_max": 1.5, "e_rev": -77.0,
     "activation":   {"exponent": 1, "v_half": -48.0, "k": 8.0,
                      "tau": {"base": 120.0, "amp": 0.0, "v_peak": -50.0, "sigma": 30.0}}}
  ]
})";

// Stronger calcium with slower recovery and a weaker slow potassium: release
// from long hyperpolarization gives a multi-spike burst that the slow
// current terminates.
const char* kBursting = R"({
  "id": "@", "class": "SPIKING_REBOUND_BURSTING",
  "capacitance": 1.0,
  "leak": {"g": 0.404, "e_rev": -58.123287},
  "noise_amplitude": 0.0,
  "channels": [
    {"name": "Na", "g_max": 120.0, "e_rev": 50.0,
     "activation":   {"exponent": 3, "v_half": -39.764, "k": 9.150,
                      "tau": {"base": 0.1011, "amp": 0.3871, "v_peak": -34.501, "sigma": 31.079}},
     "inactivation": {"exponent": 1, "v_half": -62.210, "k": -7.041,
                      "tau": {"base": 1.0864, "amp": 7.3565, "v_peak": -67.842, "sigma": 21.632}}},
    {"name": "K", "g_max": 36.0, "e_rev": -77.0,
     "activation":   {"exponent": 4, "v_half": -52.586, "k": 16.420,
                      "tau": {"base": 1.3352, "amp": 4.4469, "v_peak": -79.072, "sigma": 47.232}}},
    {"name": "CaT", "g_max": 4.0, "e_rev": 120.0,
     "activation":   {"exponent": 2, "v_half": -57.0, "k": 5.0,
                      "tau": {"base": 2.0, "amp": 2.0, "v_peak": -60.0, "sigma": 25.0}},
     "inactivation": {"exponent": 1, "v_half": -76.0, "k": -4.0,
                      "tau": {"base": 4.0, "amp": 160.0, "v_peak": -80.0, "sigma": 16.0}}},
    {"name": "Ks", "g_max": 1.0, "e_rev": -77.0,
     "activation":   {"exponent": 1, "v_half": -48.0, "k": 8.0,
                      "tau": {"base": 120.0, "amp": 0.0, "v_peak": -50.0, "sigma": 30.0}}}
  ]
})";

// Oscillator/winner-take-all variant. The activation midpoint sits above
// the post-spike overshoot so residual calcium cannot re-fire a neuron at
// rest, the inactivation midpoint separates synaptic hyperpolarization
// from the spike afterpotential, and the recovery time constant peaks in
// the subthreshold corridor so the escape keeps its priming through the
// climb.
const char* kNetworkReboundSpiking = R"({
  "id": "@", "class": "REBOUND_SPIKING",
  "capacitance": 1.0,
  "leak": {"g": 0.404, "e_rev": -58.208316},
  "noise_amplitude": 0.0,
  "channels": [
    {"name": "Na", "g_max": 120.0, "e_rev": 50.0,
     "activation":   {"exponent": 3, "v_half": -39.764, "k": 9.150,
                      "tau": {"base": 0.1011, "amp": 0.3871, "v_peak": -34.501, "sigma": 31.079}},
     "inactivation": {"exponent": 1, "v_half": -62.210, "k": -7.041,
                      "tau": {"base": 1.0864, "amp": 7.3565, "v_peak": -67.842, "sigma": 21.632}}},
    {"name": "K", "g_max": 36.0, "e_rev": -77.0,
     "activation":   {"exponent": 4, "v_half": -52.586, "k": 16.420,
                      "tau": {"base": 1.3352, "amp": 4.4469, "v_peak": -79.072, "sigma": 47.232}}},
    {"name": "CaT", "g_max": 14.0, "e_rev": 120.0,
     "activation":   {"exponent": 2, "v_half": -50.0, "k": 5.0,
                      "tau": {"base": 2.0, "amp": 6.0, "v_peak": -62.0, "sigma": 15.0}},
     "inactivation": {"exponent": 1, "v_half": -78.0, "k": -2.0,
                      "tau": {"base": 25.0, "amp": 150.0, "v_peak": -66.0, "sigma": 11.0}}}
  ]
})";

// Realized-automaton neuron: calcium recovery is too slow for
// synapse-length inhibition to trigger a rebound, so state changes come
// only through the slow excitatory synapses; the fast-loading slow
// potassium current blocks re-firing on residual excitation.
const char* kRealizationNeuron = R"({
  "id": "@", "class": "REBOUND_SPIKING",
  "capacitance": 1.0,
  "leak": {"g": 0.404, "e_rev": -55.126573},
  "noise_amplitude": 0.0,
  "channels": [
    {"name": "Na", "g_max": 120.0, "e_rev": 50.0,
     "activation":   {"exponent": 3, "v_half": -39.764, "k": 9.150,
                      "tau": {"base": 0.1011, "amp": 0.3871, "v_peak": -34.501, "sigma": 31.079}},
     "inactivation": {"exponent": 1, "v_half": -62.210, "k": -7.041,
                      "tau": {"base": 1.0864, "amp": 7.3565, "v_peak": -67.842, "sigma": 21.632}}},
    {"name": "K", "g_max": 36.0, "e_rev": -77.0,
     "activation":   {"exponent": 4, "v_half": -52.586, "k": 16.420,
                      "tau": {"base": 1.3352, "amp": 4.4469, "v_peak": -79.072, "sigma": 47.232}}},
    {"name": "CaT", "g_max": 6.0, "e_rev": 120.0,
     "activation":   {"exponent": 2, "v_half": -50.0, "k": 5.0,
                      "tau": {"base": 2.0, "amp": 6.0, "v_peak": -62.0, "sigma": 15.0}},
     "inactivation": {"exponent": 1, "v_half": -78.0, "k": -2.0,
                      "tau": {"base": 480.0, "amp": 0.0, "v_peak": -66.0, "sigma": 11.0}}},
    {"name": "Ks", "g_max": 3.0, "e_rev": -77.0,
     "activation":   {"exponent": 1, "v_half": -45.0, "k": 6.0,
                      "tau": {"base": 20.0, "amp": 25.0, "v_peak": -65.0, "sigma": 10.0}}}
  ]
})";

NeuronSpec from_document(const char* doc, const std::string& id) {
    NeuronSpec n = parse_neuron_json(doc);
    n.id = id;
    return n;
}

// Lateral inhibition for oscillators and races: engages on the presynaptic
// upstroke and amplifies small differences between competing climbs.
SynapseSpec network_inhibitory(const std::string& pre, const std::string& post) {
    SynapseSpec s;
    s.pre = pre;
    s.post = post;
    s.kind = SynapseKind::inhibitory;
    s.speed = SynapseSpeed::fast;
    s.g = 5.0;
    s.e_rev = -85.0;
    s.v_half = -52.0;
    s.k = 1.5;
    s.tau_rise = 0.2;
    s.tau_decay = 15.0;
    return s;
}

} // namespace

NeuronSpec excitable(const std::string& id) { return from_document(kExcitable, id); }

NeuronSpec rebound_spiking(const std::string& id) { return from_document(kReboundSpiking, id); }

NeuronSpec spiking_rebound_bursting(const std::string& id) { return from_document(kBursting, id); }

NeuronSpec network_rebound_spiking(const std::string& id) {
    return from_document(kNetworkReboundSpiking, id);
}

NeuronSpec make_neuron(BehaviorClass cls, const std::string& id) {
    switch (cls) {
    case BehaviorClass::excitable: return excitable(id);
    case BehaviorClass::rebound_spiking: return rebound_spiking(id);
    case BehaviorClass::spiking_rebound_bursting: return spiking_rebound_bursting(id);
    case BehaviorClass::lif: break;
    }
    throw validation_error("no conductance profile for behavior class " + to_string(cls));
}

SynapseSpec synapse(SynapseKind kind, SynapseSpeed speed, const std::string& pre,
                    const std::string& post) {
    SynapseSpec s;
    s.pre = pre;
    s.post = post;
    s.kind = kind;
    s.speed = speed;
    s.v_half = -20.0;
    s.k = 5.0;
    if (kind == SynapseKind::inhibitory) {
        s.e_rev = -85.0;
        s.g = 3.0;
    } else {
        s.e_rev = 0.0;
        s.g = 0.5;
    }
    if (speed == SynapseSpeed::fast) {
        s.tau_rise = 0.5;
        s.tau_decay = 5.0;
    } else {
        s.tau_rise = 5.0;
        s.tau_decay = 100.0;
    }
    return s;
}

CircuitSpec hco_circuit() {
    CircuitSpec c;
    c.neurons.push_back(network_rebound_spiking("1"));
    c.neurons.push_back(network_rebound_spiking("2"));
    c.synapses.push_back(network_inhibitory("1", "2"));
    c.synapses.push_back(network_inhibitory("2", "1"));
    return c;
}

CircuitSpec wta_circuit(int n, double noise_amplitude) {
    if (n < 2) throw validation_error("WTA circuit needs at least 2 neurons");
    CircuitSpec c;
    for (int i = 1; i <= n; ++i) {
        NeuronSpec neuron = network_rebound_spiking(std::to_string(i));
        neuron.noise_amplitude = noise_amplitude;
        c.neurons.push_back(neuron);
    }
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            if (i != j)
                c.synapses.push_back(network_inhibitory(std::to_string(i), std::to_string(j)));
    return c;
}

RealizationProfile realization_profile() {
    RealizationProfile p;
    p.neuron = parse_neuron_json(kRealizationNeuron);
    p.inhibitory = network_inhibitory("@", "@");
    p.excitatory.kind = SynapseKind::excitatory;
    p.excitatory.speed = SynapseSpeed::slow;
    p.excitatory.g = 1.3;
    p.excitatory.e_rev = 0.0;
    p.excitatory.v_half = -20.0;
    p.excitatory.k = 5.0;
    p.excitatory.tau_rise = 5.0;
    p.excitatory.tau_decay = 70.0;
    p.noise_amplitude = 0.15;
    p.kick_time = 50.0;
    p.kick_duration = 5.0;
    p.kick_amplitude = 8.0;
    p.dt = 0.02;
    p.t_end = 1500.0;
    return p;
}

} // namespace profiles
} // namespace neurodes
