#include "neurodes/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "neurodes/errors.hpp"
#include "neurodes/rng.hpp"

namespace neurodes {

namespace {

double int_pow(double x, int n) {
    double r = 1.0;
    for (int i = 0; i < n; ++i) r *= x;
    return r;
}

// Flattened view of a circuit for the integrator.
struct Engine {
    const CircuitSpec& circuit;
    std::vector<std::size_t> v_offset;   // per neuron
    std::vector<std::size_t> syn_pre;    // per synapse: presynaptic neuron index
    std::vector<std::size_t> syn_post;
    std::size_t syn_offset = 0;
    std::size_t dim = 0;

    explicit Engine(const CircuitSpec& c) : circuit(c) {
        std::size_t off = 0;
        for (const auto& n : c.neurons) {
            v_offset.push_back(off);
            off += 1;
            for (const auto& ch : n.channels) off += static_cast<std::size_t>(ch.gate_count());
        }
        syn_offset = off;
        dim = off + c.synapses.size();
        for (const auto& s : c.synapses) {
            syn_pre.push_back(neuron_index(s.pre));
            syn_post.push_back(neuron_index(s.post));
        }
    }

    std::size_t neuron_index(const std::string& id) const {
        for (std::size_t i = 0; i < circuit.neurons.size(); ++i)
            if (circuit.neurons[i].id == id) return i;
        throw validation_error("unknown neuron id: " + id);
    }

    // i_ext holds the per-neuron applied current (stimulus + noise).
    void rhs(const std::vector<double>& y, const std::vector<double>& i_ext,
             std::vector<double>& dy) const {
        for (std::size_t i = 0; i < circuit.neurons.size(); ++i) {
            const NeuronSpec& n = circuit.neurons[i];
            const std::size_t vo = v_offset[i];
            const double v = y[vo];
            double i_ion = n.g_leak * (v - n.e_leak);
            std::size_t g = vo + 1;
            for (const auto& ch : n.channels) {
                double p = 1.0;
                if (ch.activation.exponent > 0) {
                    const double m = y[g];
                    p *= int_pow(m, ch.activation.exponent);
                    dy[g] = (ch.activation.steady_state(v) - m) / ch.activation.time_constant(v);
                    ++g;
                }
                if (ch.inactivation.exponent > 0) {
                    const double h = y[g];
                    p *= int_pow(h, ch.inactivation.exponent);
                    dy[g] = (ch.inactivation.steady_state(v) - h) / ch.inactivation.time_constant(v);
                    ++g;
                }
                i_ion += ch.g_max * p * (v - ch.e_rev);
            }
            dy[vo] = (-i_ion + i_ext[i]) / n.capacitance;
        }
        for (std::size_t s = 0; s < circuit.synapses.size(); ++s) {
            const SynapseSpec& syn = circuit.synapses[s];
            const double act = y[syn_offset + s];
            const double v_pre = y[v_offset[syn_pre[s]]];
            const double v_post = y[v_offset[syn_post[s]]];
            dy[v_offset[syn_post[s]]] +=
                synaptic_current(syn, v_pre, v_post, act) / circuit.neurons[syn_post[s]].capacitance;
            const double target = syn.steady_activation(v_pre);
            const double tau = target > act ? syn.tau_rise : syn.tau_decay;
            dy[syn_offset + s] = (target - act) / tau;
        }
    }

    void rk4_step(std::vector<double>& y, const std::vector<double>& i_ext, double h,
                  std::vector<double>& k1, std::vector<double>& k2, std::vector<double>& k3,
                  std::vector<double>& k4, std::vector<double>& w) const {
        rhs(y, i_ext, k1);
        for (std::size_t i = 0; i < dim; ++i) w[i] = y[i] + 0.5 * h * k1[i];
        rhs(w, i_ext, k2);
        for (std::size_t i = 0; i < dim; ++i) w[i] = y[i] + 0.5 * h * k2[i];
        rhs(w, i_ext, k3);
        for (std::size_t i = 0; i < dim; ++i) w[i] = y[i] + h * k3[i];
        rhs(w, i_ext, k4);
        for (std::size_t i = 0; i < dim; ++i)
            y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
};

std::vector<std::string> gate_labels(const NeuronSpec& n) {
    std::vector<std::string> labels;
    for (const auto& ch : n.channels) {
        if (ch.activation.exponent > 0) labels.push_back(ch.name + ".act");
        if (ch.inactivation.exponent > 0) labels.push_back(ch.name + ".inact");
    }
    return labels;
}

} // namespace

std::size_t SimulationResult::neuron_index(const std::string& id) const {
    for (std::size_t i = 0; i < neuron_ids.size(); ++i)
        if (neuron_ids[i] == id) return i;
    throw validation_error("unknown neuron id in result: " + id);
}

double synaptic_current(const SynapseSpec& syn, double /*v_pre*/, double v_post, double activation) {
    return syn.g * activation * (syn.e_rev - v_post);
}

double membrane_dvdt(const NeuronSpec& neuron, const std::vector<double>& state, double i_ext) {
    const double v = state[0];
    double i_ion = neuron.g_leak * (v - neuron.e_leak);
    std::size_t g = 1;
    for (const auto& ch : neuron.channels) {
        double p = 1.0;
        if (ch.activation.exponent > 0) p *= int_pow(state[g++], ch.activation.exponent);
        if (ch.inactivation.exponent > 0) p *= int_pow(state[g++], ch.inactivation.exponent);
        i_ion += ch.g_max * p * (v - ch.e_rev);
    }
    return (-i_ion + i_ext) / neuron.capacitance;
}

std::vector<double> resting_state(const NeuronSpec& neuron) {
    validate(neuron);
    CircuitSpec single;
    single.neurons.push_back(neuron);
    Engine eng(single);

    std::vector<double> y(eng.dim, 0.0);
    y[0] = -65.0;
    std::size_t g = 1;
    for (const auto& ch : neuron.channels) {
        if (ch.activation.exponent > 0) y[g++] = ch.activation.steady_state(-65.0);
        if (ch.inactivation.exponent > 0) y[g++] = ch.inactivation.steady_state(-65.0);
    }

    const double dt = 0.01;
    const int steps = 50000; // 500 ms relaxation
    std::vector<double> i_ext(1, 0.0);
    std::vector<double> k1(eng.dim), k2(eng.dim), k3(eng.dim), k4(eng.dim), w(eng.dim);
    for (int i = 0; i < steps; ++i) {
        eng.rk4_step(y, i_ext, dt, k1, k2, k3, k4, w);
        if (!std::isfinite(y[0]))
            throw equilibrium_error("neuron " + neuron.id + ": relaxation diverged");
    }
    if (std::abs(membrane_dvdt(neuron, y, 0.0)) >= 1e-3)
        throw equilibrium_error("neuron " + neuron.id +
                                ": no resting equilibrium within tolerance after 500 ms "
                                "(model may be tonically firing)");
    return y;
}

std::vector<double> initial_state(const CircuitSpec& circuit) {
    Engine eng(circuit);
    std::vector<double> y(eng.dim, 0.0);
    for (std::size_t i = 0; i < circuit.neurons.size(); ++i) {
        std::vector<double> rest = resting_state(circuit.neurons[i]);
        std::copy(rest.begin(), rest.end(), y.begin() + static_cast<std::ptrdiff_t>(eng.v_offset[i]));
    }
    for (std::size_t s = 0; s < circuit.synapses.size(); ++s)
        y[eng.syn_offset + s] = circuit.synapses[s].steady_activation(y[eng.v_offset[eng.syn_pre[s]]]);
    return y;
}

SimulationResult simulate(const CircuitSpec& circuit, const StimulusProgram& stimulus,
                          const SimConfig& config) {
    return simulate_from(circuit, stimulus, config, initial_state(circuit));
}

SimulationResult simulate_from(const CircuitSpec& circuit, const StimulusProgram& stimulus,
                               const SimConfig& config, const std::vector<double>& y0) {
    validate(circuit);
    validate(stimulus, circuit);
    validate(config);

    Engine eng(circuit);
    if (y0.size() != eng.dim)
        throw validation_error("initial state has wrong dimension");

    const std::size_t n_neurons = circuit.neurons.size();
    const double dt = config.dt;
    const long long n_steps = std::llround(config.t_end / dt);

    SimulationResult res;
    res.config = config;
    res.stimulus = stimulus;
    res.seed = config.seed;
    for (const auto& n : circuit.neurons) res.neuron_ids.push_back(n.id);
    res.voltage.assign(n_neurons, {});
    if (config.record_gates) {
        res.gates.resize(n_neurons);
        for (std::size_t i = 0; i < n_neurons; ++i) {
            res.gate_names.push_back(gate_labels(circuit.neurons[i]));
            res.gates[i].resize(res.gate_names[i].size());
        }
    }
    res.synapse_activation.assign(circuit.synapses.size(), {});

    // One independent noise stream per neuron, seeded from (seed, id), so a
    // stimulus change does not perturb the noise path of any neuron.
    std::vector<NormalStream> noise;
    noise.reserve(n_neurons);
    for (const auto& n : circuit.neurons)
        noise.emplace_back(derive_seed(config.seed, "noise:" + n.id));
    const double noise_scale = 1.0 / std::sqrt(dt);

    // Stimulus switching times; steps are split there so every RK4 stage
    // sees a constant input.
    std::vector<double> boundaries;
    for (const auto& [id, pulses] : stimulus.entries) {
        for (const auto& p : pulses) {
            boundaries.push_back(p.start);
            boundaries.push_back(p.start + p.duration);
        }
    }
    std::sort(boundaries.begin(), boundaries.end());
    boundaries.erase(std::unique(boundaries.begin(), boundaries.end()), boundaries.end());

    std::vector<double> y = y0;
    std::vector<double> i_ext(n_neurons, 0.0);
    std::vector<double> k1(eng.dim), k2(eng.dim), k3(eng.dim), k4(eng.dim), w(eng.dim);

    auto record = [&](long long step) {
        res.time.push_back(static_cast<double>(step) * dt);
        for (std::size_t i = 0; i < n_neurons; ++i) {
            res.voltage[i].push_back(y[eng.v_offset[i]]);
            if (config.record_gates)
                for (std::size_t g = 0; g < res.gates[i].size(); ++g)
                    res.gates[i][g].push_back(y[eng.v_offset[i] + 1 + g]);
        }
        for (std::size_t s = 0; s < circuit.synapses.size(); ++s)
            res.synapse_activation[s].push_back(y[eng.syn_offset + s]);
    };

    record(0);
    std::size_t next_boundary = 0;
    std::vector<double> noise_current(n_neurons, 0.0);
    for (long long step = 0; step < n_steps; ++step) {
        const double t0 = static_cast<double>(step) * dt;
        const double t1 = static_cast<double>(step + 1) * dt;

        // Noise is piecewise constant over the step.
        for (std::size_t i = 0; i < n_neurons; ++i) {
            noise_current[i] = 0.0;
            const double amp = circuit.neurons[i].noise_amplitude;
            if (amp > 0.0) noise_current[i] = amp * noise_scale * noise[i].next();
        }

        while (next_boundary < boundaries.size() && boundaries[next_boundary] <= t0) ++next_boundary;
        double t = t0;
        std::size_t b = next_boundary;
        while (t < t1 - 1e-12) {
            double t_next = t1;
            if (b < boundaries.size() && boundaries[b] < t1 - 1e-12) t_next = boundaries[b++];
            const double mid = 0.5 * (t + t_next);
            for (std::size_t i = 0; i < n_neurons; ++i)
                i_ext[i] = stimulus.current_at(circuit.neurons[i].id, mid) + noise_current[i];
            eng.rk4_step(y, i_ext, t_next - t, k1, k2, k3, k4, w);
            t = t_next;
        }

        for (std::size_t i = 0; i < n_neurons; ++i) {
            const double v = y[eng.v_offset[i]];
            if (!std::isfinite(v) || std::abs(v) > 1000.0)
                throw divergence_error(circuit.neurons[i].id, t1,
                                       "integration diverged for neuron " + circuit.neurons[i].id +
                                           " at t = " + std::to_string(t1) + " ms");
        }
        if ((step + 1) % config.record_stride == 0) record(step + 1);
    }
    return res;
}

LIFResult simulate_lif(const LIFSpec& spec, const std::vector<Pulse>& input, const SimConfig& config) {
    if (!(spec.alpha > 0.0)) throw validation_error("LIF: alpha must be > 0");
    if (!(spec.theta > 0.0)) throw validation_error("LIF: theta must be > 0");
    validate(config);
    std::vector<Pulse> sorted = input;
    std::sort(sorted.begin(), sorted.end(), [](const Pulse& a, const Pulse& b) { return a.start < b.start; });

    auto u_at = [&](double t) {
        double u = 0.0;
        for (const auto& p : sorted)
            if (t >= p.start && t < p.start + p.duration) u += p.amplitude;
        return u;
    };

    const double dt = config.dt;
    const long long n_steps = std::llround(config.t_end / dt);
    LIFResult res;
    res.time.reserve(static_cast<std::size_t>(n_steps) + 1);
    res.x.reserve(static_cast<std::size_t>(n_steps) + 1);

    double x = 0.0;
    res.time.push_back(0.0);
    res.x.push_back(x);
    for (long long step = 0; step < n_steps; ++step) {
        const double t = static_cast<double>(step) * dt;
        const double u = u_at(t + 0.5 * dt);
        auto f = [&](double xv) { return -spec.alpha * xv + u; };
        const double k1 = f(x);
        const double k2 = f(x + 0.5 * dt * k1);
        const double k3 = f(x + 0.5 * dt * k2);
        const double k4 = f(x + dt * k3);
        x += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        const double t1 = t + dt;
        if (x > spec.theta) {
            x = 0.0;
            res.reset_times.push_back(t1);
        }
        res.time.push_back(t1);
        res.x.push_back(x);
    }
    return res;
}

} // namespace neurodes
