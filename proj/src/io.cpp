#include "neurodes/io.hpp"

#include <array>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "neurodes/errors.hpp"

namespace neurodes {

using nlohmann::json;

namespace {

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", x);
    return buf;
}

[[noreturn]] void parse_fail(const std::string& text, const nlohmann::detail::parse_error& e) {
    // nlohmann reports a byte offset; translate to line:column.
    std::size_t pos = e.byte > 0 ? static_cast<std::size_t>(e.byte - 1) : 0;
    pos = std::min(pos, text.size());
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < pos; ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    throw validation_error("JSON syntax error at line " + std::to_string(line) + ", column " +
                           std::to_string(col) + ": " + e.what());
}

json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const nlohmann::detail::parse_error& e) {
        parse_fail(text, e);
    }
}

void expect_keys(const json& j, const std::vector<std::string>& required,
                 const std::vector<std::string>& optional, const std::string& where) {
    if (!j.is_object()) throw validation_error(where + ": expected a JSON object");
    for (const auto& k : required)
        if (!j.contains(k)) throw validation_error(where + ": missing key \"" + k + "\"");
    for (const auto& [key, value] : j.items()) {
        bool known = false;
        for (const auto& k : required) known = known || key == k;
        for (const auto& k : optional) known = known || key == k;
        if (!known) throw validation_error(where + ": unknown key \"" + key + "\"");
    }
}

double num(const json& j, const std::string& key, const std::string& where) {
    if (!j.at(key).is_number())
        throw validation_error(where + ": \"" + key + "\" must be a number");
    return j.at(key).get<double>();
}

std::string str(const json& j, const std::string& key, const std::string& where) {
    if (!j.at(key).is_string())
        throw validation_error(where + ": \"" + key + "\" must be a string");
    return j.at(key).get<std::string>();
}

GateKinetics parse_gate(const json& j, const std::string& where) {
    expect_keys(j, {"exponent", "v_half", "k", "tau"}, {}, where);
    GateKinetics g;
    g.exponent = static_cast<int>(num(j, "exponent", where));
    g.v_half = num(j, "v_half", where);
    g.k = num(j, "k", where);
    const json& tau = j.at("tau");
    expect_keys(tau, {"base", "amp", "v_peak", "sigma"}, {}, where + ".tau");
    g.tau_base = num(tau, "base", where);
    g.tau_amp = num(tau, "amp", where);
    g.tau_v = num(tau, "v_peak", where);
    g.tau_sigma = num(tau, "sigma", where);
    return g;
}

json gate_to_json(const GateKinetics& g) {
    return json{{"exponent", g.exponent},
                {"v_half", g.v_half},
                {"k", g.k},
                {"tau", {{"base", g.tau_base}, {"amp", g.tau_amp}, {"v_peak", g.tau_v}, {"sigma", g.tau_sigma}}}};
}

NeuronSpec parse_neuron(const json& j, const std::string& where) {
    expect_keys(j, {"id", "class", "capacitance", "leak"}, {"channels", "noise_amplitude"}, where);
    NeuronSpec n;
    n.id = str(j, "id", where);
    n.behavior_class = behavior_class_from_string(str(j, "class", where));
    n.capacitance = num(j, "capacitance", where);
    const json& leak = j.at("leak");
    expect_keys(leak, {"g", "e_rev"}, {}, where + ".leak");
    n.g_leak = num(leak, "g", where);
    n.e_leak = num(leak, "e_rev", where);
    if (j.contains("noise_amplitude")) n.noise_amplitude = num(j, "noise_amplitude", where);
    if (j.contains("channels")) {
        if (!j.at("channels").is_array())
            throw validation_error(where + ": \"channels\" must be an array");
        for (const auto& cj : j.at("channels")) {
            const std::string cw = where + ".channel";
            expect_keys(cj, {"name", "g_max", "e_rev"}, {"activation", "inactivation"}, cw);
            IonChannel ch;
            ch.name = str(cj, "name", cw);
            ch.g_max = num(cj, "g_max", cw);
            ch.e_rev = num(cj, "e_rev", cw);
            if (cj.contains("activation")) ch.activation = parse_gate(cj.at("activation"), cw + ".activation");
            if (cj.contains("inactivation"))
                ch.inactivation = parse_gate(cj.at("inactivation"), cw + ".inactivation");
            n.channels.push_back(ch);
        }
    }
    return n;
}

json neuron_to_json(const NeuronSpec& n) {
    json j{{"id", n.id},
           {"class", to_string(n.behavior_class)},
           {"capacitance", n.capacitance},
           {"leak", {{"g", n.g_leak}, {"e_rev", n.e_leak}}},
           {"noise_amplitude", n.noise_amplitude}};
    json channels = json::array();
    for (const auto& ch : n.channels) {
        json cj{{"name", ch.name}, {"g_max", ch.g_max}, {"e_rev", ch.e_rev}};
        if (ch.activation.exponent > 0) cj["activation"] = gate_to_json(ch.activation);
        if (ch.inactivation.exponent > 0) cj["inactivation"] = gate_to_json(ch.inactivation);
        channels.push_back(cj);
    }
    j["channels"] = channels;
    return j;
}

SynapseSpec parse_synapse(const json& j, const std::string& where) {
    expect_keys(j, {"pre", "post", "kind", "speed", "g", "e_rev"},
                {"v_half", "k", "tau_rise", "tau_decay"}, where);
    SynapseSpec s;
    s.pre = str(j, "pre", where);
    s.post = str(j, "post", where);
    s.kind = synapse_kind_from_string(str(j, "kind", where));
    s.speed = synapse_speed_from_string(str(j, "speed", where));
    s.g = num(j, "g", where);
    s.e_rev = num(j, "e_rev", where);
    if (j.contains("v_half")) s.v_half = num(j, "v_half", where);
    if (j.contains("k")) s.k = num(j, "k", where);
    // speed picks the default decay; explicit values win
    s.tau_decay = s.speed == SynapseSpeed::fast ? 5.0 : 100.0;
    if (j.contains("tau_rise")) s.tau_rise = num(j, "tau_rise", where);
    if (j.contains("tau_decay")) s.tau_decay = num(j, "tau_decay", where);
    return s;
}

json synapse_to_json(const SynapseSpec& s) {
    return json{{"pre", s.pre},         {"post", s.post},
                {"kind", to_string(s.kind)}, {"speed", to_string(s.speed)},
                {"g", s.g},             {"e_rev", s.e_rev},
                {"v_half", s.v_half},   {"k", s.k},
                {"tau_rise", s.tau_rise}, {"tau_decay", s.tau_decay}};
}

} // namespace

NeuronSpec parse_neuron_json(const std::string& text) {
    return parse_neuron(parse_json(text), "neuron");
}

SynapseSpec parse_synapse_json(const std::string& text) {
    return parse_synapse(parse_json(text), "synapse");
}

SimulationBundle parse_bundle_json(const std::string& text) {
    json j = parse_json(text);
    expect_keys(j, {"neurons", "synapses", "stimuli", "config"}, {}, "bundle");
    SimulationBundle b;
    if (!j.at("neurons").is_array()) throw validation_error("bundle: \"neurons\" must be an array");
    for (const auto& nj : j.at("neurons")) b.circuit.neurons.push_back(parse_neuron(nj, "neuron"));
    if (!j.at("synapses").is_array()) throw validation_error("bundle: \"synapses\" must be an array");
    for (const auto& sj : j.at("synapses")) b.circuit.synapses.push_back(parse_synapse(sj, "synapse"));
    if (!j.at("stimuli").is_array()) throw validation_error("bundle: \"stimuli\" must be an array");
    for (const auto& sj : j.at("stimuli")) {
        expect_keys(sj, {"neuron", "pulses"}, {}, "stimulus");
        const std::string id = str(sj, "neuron", "stimulus");
        auto& pulses = b.stimulus.at(id);
        for (const auto& pj : sj.at("pulses")) {
            expect_keys(pj, {"start", "duration", "amplitude"}, {}, "pulse");
            pulses.push_back({num(pj, "start", "pulse"), num(pj, "duration", "pulse"),
                              num(pj, "amplitude", "pulse")});
        }
    }
    const json& cj = j.at("config");
    expect_keys(cj, {"dt", "t_end"}, {"seed", "record_stride", "record_gates"}, "config");
    b.config.dt = num(cj, "dt", "config");
    b.config.t_end = num(cj, "t_end", "config");
    if (cj.contains("seed")) b.config.seed = cj.at("seed").get<std::uint64_t>();
    if (cj.contains("record_stride")) b.config.record_stride = cj.at("record_stride").get<int>();
    if (cj.contains("record_gates")) b.config.record_gates = cj.at("record_gates").get<bool>();
    validate(b.circuit);
    validate(b.stimulus, b.circuit);
    validate(b.config);
    return b;
}

std::string bundle_to_json(const SimulationBundle& bundle) {
    json j;
    j["neurons"] = json::array();
    for (const auto& n : bundle.circuit.neurons) j["neurons"].push_back(neuron_to_json(n));
    j["synapses"] = json::array();
    for (const auto& s : bundle.circuit.synapses) j["synapses"].push_back(synapse_to_json(s));
    j["stimuli"] = json::array();
    for (const auto& [id, pulses] : bundle.stimulus.entries) {
        json pj = json::array();
        for (const auto& p : pulses)
            pj.push_back({{"start", p.start}, {"duration", p.duration}, {"amplitude", p.amplitude}});
        j["stimuli"].push_back({{"neuron", id}, {"pulses", pj}});
    }
    j["config"] = {{"dt", bundle.config.dt},
                   {"t_end", bundle.config.t_end},
                   {"seed", bundle.config.seed},
                   {"record_stride", bundle.config.record_stride},
                   {"record_gates", bundle.config.record_gates}};
    return j.dump(2) + "\n";
}

Automaton parse_automaton_json(const std::string& text) {
    json j = parse_json(text);
    expect_keys(j, {"states", "alphabet", "transitions", "initial"}, {}, "automaton");
    Automaton a;
    for (const auto& s : j.at("states")) a.add_state(s.get<std::string>());
    for (const auto& [sym, kind] : j.at("alphabet").items())
        a.add_event(sym, transition_kind_from_string(kind.get<std::string>()));
    for (const auto& t : j.at("transitions")) {
        if (!t.is_array() || t.size() != 3)
            throw validation_error("automaton: transitions must be [src, event, dst] triples");
        a.add_transition(t[0].get<std::string>(), t[1].get<std::string>(), t[2].get<std::string>());
    }
    a.initial = j.at("initial").get<std::string>();
    a.validate();
    return a;
}

std::string automaton_to_json(const Automaton& a) {
    json j;
    j["states"] = a.states;
    json alpha = json::object();
    for (const auto& [sym, kind] : a.alphabet) alpha[sym] = to_string(kind);
    j["alphabet"] = alpha;
    json ts = json::array();
    for (const auto& t : a.transitions) ts.push_back({t.src, t.event, t.dst});
    j["transitions"] = ts;
    j["initial"] = a.initial;
    return j.dump(2) + "\n";
}

NetworkTopology parse_topology_json(const std::string& text) {
    json j = parse_json(text);
    expect_keys(j, {"neurons", "synapses", "interactable"}, {}, "topology");
    NetworkTopology t;
    for (const auto& nj : j.at("neurons")) {
        expect_keys(nj, {"id", "class"}, {}, "topology neuron");
        t.neurons.push_back({str(nj, "id", "topology neuron"),
                             behavior_class_from_string(str(nj, "class", "topology neuron"))});
    }
    for (const auto& sj : j.at("synapses")) {
        expect_keys(sj, {"pre", "post", "kind", "speed"}, {}, "topology synapse");
        t.synapses.push_back({str(sj, "pre", "synapse"), str(sj, "post", "synapse"),
                              synapse_kind_from_string(str(sj, "kind", "synapse")),
                              synapse_speed_from_string(str(sj, "speed", "synapse"))});
    }
    for (const auto& id : j.at("interactable")) t.interactable.insert(id.get<std::string>());
    t.validate();
    return t;
}

std::string topology_to_json(const NetworkTopology& t) {
    json j;
    j["neurons"] = json::array();
    for (const auto& n : t.neurons)
        j["neurons"].push_back({{"id", n.id}, {"class", to_string(n.behavior_class)}});
    j["synapses"] = json::array();
    for (const auto& s : t.synapses)
        j["synapses"].push_back({{"pre", s.pre},
                                 {"post", s.post},
                                 {"kind", to_string(s.kind)},
                                 {"speed", to_string(s.speed)}});
    j["interactable"] = t.interactable;
    return j.dump(2) + "\n";
}

std::string automaton_to_dot(const Automaton& a) {
    std::ostringstream os;
    os << "digraph automaton {\n  rankdir=LR;\n  node [shape=circle];\n";
    os << "  __start [shape=point, label=\"\"];\n";
    os << "  __start -> \"" << a.initial << "\";\n";
    for (const auto& t : a.transitions) {
        os << "  \"" << t.src << "\" -> \"" << t.dst << "\" [label=\"" << t.event << "\"";
        switch (a.kind_of(t.event)) {
        case TransitionKind::internal: break;
        case TransitionKind::external_excitatory:
            os << ", style=dashed, dir=both, arrowtail=box";
            break;
        case TransitionKind::external_inhibitory:
            os << ", style=dashed, dir=both, arrowtail=odot";
            break;
        }
        os << "];\n";
    }
    os << "}\n";
    return os.str();
}

std::string trace_to_csv(const SimulationResult& result) {
    std::ostringstream os;
    os << "t,neuron_id,v,i_ext\n";
    for (std::size_t s = 0; s < result.time.size(); ++s) {
        for (std::size_t i = 0; i < result.neuron_ids.size(); ++i) {
            os << fmt(result.time[s]) << ',' << result.neuron_ids[i] << ','
               << fmt(result.voltage[i][s]) << ','
               << fmt(result.stimulus.current_at(result.neuron_ids[i], result.time[s])) << '\n';
        }
    }
    return os.str();
}

std::string events_to_csv(const EventTrace& trace) {
    std::ostringstream os;
    os << "time_ms,neuron,symbol,cause\n";
    for (const auto& ev : trace.events) {
        std::string neurons, symbols;
        for (std::size_t i = 0; i < ev.labels.size(); ++i) {
            if (i) {
                neurons += "+";
                symbols += "+";
            }
            neurons += ev.labels[i].neuron;
            symbols += to_string(ev.labels[i].symbol) + ev.labels[i].neuron;
        }
        os << fmt(ev.time) << ',' << neurons << ',' << symbols << ',' << to_string(ev.cause) << '\n';
    }
    return os.str();
}

std::string untimed_to_text(const std::vector<std::string>& tokens) {
    std::string out;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (i) out += ' ';
        out += tokens[i];
    }
    out += '\n';
    return out;
}

std::string trace_to_svg(const SimulationResult& result) {
    const int w = 900, h = 260, pad = 40;
    const std::size_t n = result.neuron_ids.size();
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\""
       << (static_cast<int>(n) * h) << "\">\n";
    const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
    for (std::size_t i = 0; i < n; ++i) {
        const auto& v = result.voltage[i];
        double vmin = *std::min_element(v.begin(), v.end());
        double vmax = *std::max_element(v.begin(), v.end());
        if (vmax - vmin < 1.0) {
            vmax += 1.0;
            vmin -= 1.0;
        }
        const double t_max = result.time.back() > 0 ? result.time.back() : 1.0;
        const int y0 = static_cast<int>(i) * h;
        os << "<rect x=\"0\" y=\"" << y0 << "\" width=\"" << w << "\" height=\"" << h
           << "\" fill=\"white\" stroke=\"#ccc\"/>\n";
        os << "<text x=\"8\" y=\"" << (y0 + 16) << "\" font-size=\"12\">neuron "
           << result.neuron_ids[i] << " [" << fmt(vmin) << ", " << fmt(vmax) << "] mV</text>\n";
        os << "<polyline fill=\"none\" stroke=\"" << colors[i % 6] << "\" stroke-width=\"1\" points=\"";
        const std::size_t stride = std::max<std::size_t>(1, result.time.size() / 4000);
        for (std::size_t s = 0; s < result.time.size(); s += stride) {
            const double x = pad + (w - 2 * pad) * (result.time[s] / t_max);
            const double y = y0 + h - pad - (h - 2 * pad) * ((v[s] - vmin) / (vmax - vmin));
            os << fmt(x) << ',' << fmt(y) << ' ';
        }
        os << "\"/>\n";
    }
    os << "</svg>\n";
    return os.str();
}

// ---- sha256 ----------------------------------------------------------------

namespace {

struct Sha256 {
    std::uint32_t h[8] = {0x6a09e667, 0xbb67ae85, 0x3c6ef372, 0xa54ff53a,
                          0x510e527f, 0x9b05688c, 0x1f83d9ab, 0x5be0cd19};
    std::uint64_t length = 0;
    std::array<std::uint8_t, 64> buf{};
    std::size_t fill = 0;

    static std::uint32_t rotr(std::uint32_t x, int n) { return (x >> n) | (x << (32 - n)); }

    void block(const std::uint8_t* p) {
        static const std::uint32_t k[64] = {
            0x428a2f98, 0x71374491, 0xb5c0fbcf, 0xe9b5dba5, 0x3956c25b, 0x59f111f1, 0x923f82a4,
            0xab1c5ed5, 0xd807aa98, 0x12835b01, 0x243185be, 0x550c7dc3, 0x72be5d74, 0x80deb1fe,
            0x9bdc06a7, 0xc19bf174, 0xe49b69c1, 0xefbe4786, 0x0fc19dc6, 0x240ca1cc, 0x2de92c6f,
            0x4a7484aa, 0x5cb0a9dc, 0x76f988da, 0x983e5152, 0xa831c66d, 0xb00327c8, 0xbf597fc7,
            0xc6e00bf3, 0xd5a79147, 0x06ca6351, 0x14292967, 0x27b70a85, 0x2e1b2138, 0x4d2c6dfc,
            0x53380d13, 0x650a7354, 0x766a0abb, 0x81c2c92e, 0x92722c85, 0xa2bfe8a1, 0xa81a664b,
            0xc24b8b70, 0xc76c51a3, 0xd192e819, 0xd6990624, 0xf40e3585, 0x106aa070, 0x19a4c116,
            0x1e376c08, 0x2748774c, 0x34b0bcb5, 0x391c0cb3, 0x4ed8aa4a, 0x5b9cca4f, 0x682e6ff3,
            0x748f82ee, 0x78a5636f, 0x84c87814, 0x8cc70208, 0x90befffa, 0xa4506ceb, 0xbef9a3f7,
            0xc67178f2};
        std::uint32_t w[64];
        for (int i = 0; i < 16; ++i)
            w[i] = (std::uint32_t(p[4 * i]) << 24) | (std::uint32_t(p[4 * i + 1]) << 16) |
                   (std::uint32_t(p[4 * i + 2]) << 8) | std::uint32_t(p[4 * i + 3]);
        for (int i = 16; i < 64; ++i) {
            const std::uint32_t s0 = rotr(w[i - 15], 7) ^ rotr(w[i - 15], 18) ^ (w[i - 15] >> 3);
            const std::uint32_t s1 = rotr(w[i - 2], 17) ^ rotr(w[i - 2], 19) ^ (w[i - 2] >> 10);
            w[i] = w[i - 16] + s0 + w[i - 7] + s1;
        }
        std::uint32_t a = h[0], b = h[1], c = h[2], d = h[3], e = h[4], f = h[5], g = h[6],
                      hh = h[7];
        for (int i = 0; i < 64; ++i) {
            const std::uint32_t s1 = rotr(e, 6) ^ rotr(e, 11) ^ rotr(e, 25);
            const std::uint32_t ch = (e & f) ^ (~e & g);
            const std::uint32_t t1 = hh + s1 + ch + k[i] + w[i];
            const std::uint32_t s0 = rotr(a, 2) ^ rotr(a, 13) ^ rotr(a, 22);
            const std::uint32_t mj = (a & b) ^ (a & c) ^ (b & c);
            const std::uint32_t t2 = s0 + mj;
            hh = g; g = f; f = e; e = d + t1;
            d = c; c = b; b = a; a = t1 + t2;
        }
        h[0] += a; h[1] += b; h[2] += c; h[3] += d;
        h[4] += e; h[5] += f; h[6] += g; h[7] += hh;
    }

    void update(const std::uint8_t* p, std::size_t n) {
        length += n;
        while (n > 0) {
            const std::size_t take = std::min(n, buf.size() - fill);
            std::memcpy(buf.data() + fill, p, take);
            fill += take;
            p += take;
            n -= take;
            if (fill == buf.size()) {
                block(buf.data());
                fill = 0;
            }
        }
    }

    std::string finish() {
        const std::uint64_t bits = length * 8;
        const std::uint8_t one = 0x80;
        update(&one, 1);
        const std::uint8_t zero = 0;
        while (fill != 56) update(&zero, 1);
        std::uint8_t len[8];
        for (int i = 0; i < 8; ++i) len[i] = static_cast<std::uint8_t>(bits >> (56 - 8 * i));
        update(len, 8);
        static const char* hex = "0123456789abcdef";
        std::string out;
        for (std::uint32_t v : h)
            for (int i = 3; i >= 0; --i) {
                out += hex[(v >> (8 * i + 4)) & 0xf];
                out += hex[(v >> (8 * i)) & 0xf];
            }
        return out;
    }
};

} // namespace

std::string sha256_hex(const std::string& data) {
    Sha256 s;
    s.update(reinterpret_cast<const std::uint8_t*>(data.data()), data.size());
    return s.finish();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw validation_error("cannot open file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw validation_error("cannot write file: " + path);
    out << content;
}

} // namespace neurodes
