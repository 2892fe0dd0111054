#include "neurodes/des_builder.hpp"

#include <algorithm>

#include "neurodes/errors.hpp"

namespace neurodes {

std::string state_idle(const std::string& id) { return "i" + id; }
std::string state_spiking(const std::string& id) { return "s" + id; }
std::string state_bursting(const std::string& id) { return "b" + id; }
std::string sym_sigma(const std::string& id) { return "sigma" + id; }
std::string sym_rho_rebound(const std::string& id) { return "rho_rebound" + id; }
std::string sym_eta(const std::string& id) { return "eta" + id; }
std::string sym_beta(const std::string& id) { return "beta" + id; }
std::string sym_rho(const std::string& id) { return "rho" + id; }

const TopologyNeuron* NetworkTopology::find(const std::string& id) const {
    for (const auto& n : neurons)
        if (n.id == id) return &n;
    return nullptr;
}

void NetworkTopology::validate() const {
    if (neurons.empty()) throw validation_error("topology has no neurons");
    std::set<std::string> ids;
    for (const auto& n : neurons) {
        if (n.id.empty()) throw validation_error("topology neuron id must be nonempty");
        if (!ids.insert(n.id).second) throw validation_error("duplicate topology neuron id: " + n.id);
    }
    for (const auto& s : synapses) {
        if (s.pre == s.post)
            throw validation_error("topology synapse " + s.pre + "->" + s.post + ": no self-synapses");
        if (!ids.count(s.pre) || !ids.count(s.post))
            throw validation_error("topology synapse " + s.pre + "->" + s.post +
                                   " references an unknown neuron");
    }
    for (const auto& id : interactable)
        if (!ids.count(id))
            throw validation_error("interactable neuron " + id + " is not in the topology");
}

Automaton neuron_template(BehaviorClass cls, const std::string& id) {
    Automaton a;
    const std::string i = state_idle(id);
    const std::string s = state_spiking(id);
    switch (cls) {
    case BehaviorClass::lif:
        a.add_state(i);
        a.initial = i;
        a.add_event(sym_sigma(id), TransitionKind::external_excitatory);
        a.add_transition(i, sym_sigma(id), i);
        break;
    case BehaviorClass::excitable:
        a.add_state(i);
        a.add_state(s);
        a.initial = i;
        a.add_event(sym_sigma(id), TransitionKind::external_excitatory);
        a.add_event(sym_eta(id), TransitionKind::internal);
        a.add_transition(i, sym_sigma(id), s);
        a.add_transition(s, sym_eta(id), i);
        break;
    case BehaviorClass::rebound_spiking:
        a.add_state(i);
        a.add_state(s);
        a.initial = i;
        a.add_event(sym_sigma(id), TransitionKind::external_excitatory);
        a.add_event(sym_rho_rebound(id), TransitionKind::external_inhibitory);
        a.add_event(sym_eta(id), TransitionKind::internal);
        a.add_transition(i, sym_sigma(id), s);
        a.add_transition(i, sym_rho_rebound(id), s);
        a.add_transition(s, sym_eta(id), i);
        break;
    case BehaviorClass::spiking_rebound_bursting: {
        const std::string b = state_bursting(id);
        a.add_state(b);
        a.add_state(i);
        a.add_state(s);
        a.initial = i;
        a.add_event(sym_sigma(id), TransitionKind::external_excitatory);
        a.add_event(sym_beta(id), TransitionKind::external_inhibitory);
        a.add_event(sym_eta(id), TransitionKind::internal);
        a.add_event(sym_rho(id), TransitionKind::internal);
        a.add_transition(i, sym_sigma(id), s);
        a.add_transition(i, sym_beta(id), b);
        a.add_transition(s, sym_eta(id), i);
        a.add_transition(b, sym_rho(id), i);
        break;
    }
    }
    return a;
}

namespace {

// Symbols that can appear as spike/burst onsets of a neuron in its template.
std::vector<std::string> own_onset_symbols(BehaviorClass cls, const std::string& id) {
    switch (cls) {
    case BehaviorClass::lif: return {sym_sigma(id)};
    case BehaviorClass::excitable: return {sym_sigma(id)};
    case BehaviorClass::rebound_spiking: return {sym_sigma(id), sym_rho_rebound(id)};
    case BehaviorClass::spiking_rebound_bursting: return {sym_sigma(id), sym_beta(id)};
    }
    return {};
}

std::vector<std::string> return_symbols(BehaviorClass cls, const std::string& id) {
    switch (cls) {
    case BehaviorClass::lif: return {};
    case BehaviorClass::excitable:
    case BehaviorClass::rebound_spiking: return {sym_eta(id)};
    case BehaviorClass::spiking_rebound_bursting: return {sym_eta(id), sym_rho(id)};
    }
    return {};
}

bool rebound_capable(BehaviorClass cls) {
    return cls == BehaviorClass::rebound_spiking || cls == BehaviorClass::spiking_rebound_bursting;
}

} // namespace

std::map<std::string, Automaton> apply_synapse(const NetworkTopology& topology,
                                               const std::map<std::string, Automaton>& templates) {
    topology.validate();
    for (const auto& n : topology.neurons)
        if (!templates.count(n.id))
            throw validation_error("no template automaton for neuron " + n.id);

    std::map<std::string, BehaviorClass> cls;
    for (const auto& n : topology.neurons) cls[n.id] = n.behavior_class;

    for (const auto& syn : topology.synapses) {
        if (cls.at(syn.post) == BehaviorClass::lif)
            throw rewrite_error("synapse " + syn.pre + "->" + syn.post +
                                ": a LIF target has no rewritable onset transition");
        if (cls.at(syn.post) == BehaviorClass::spiking_rebound_bursting)
            throw unsupported_topology_error(
                "synapse " + syn.pre + "->" + syn.post +
                ": interconnections onto spiking-rebound-bursting neurons mix the fast and slow "
                "timescales and are not supported");
    }

    const bool interacts_all = topology.interactable.empty() && topology.synapses.empty();
    auto is_interactable = [&](const std::string& id) {
        return interacts_all || topology.interactable.count(id) != 0;
    };

    // Events that can fire a neuron's own kick from outside.
    auto kick_events = [&](const std::string& id) -> std::vector<std::string> {
        if (!is_interactable(id)) return {};
        return own_onset_symbols(cls.at(id), id);
    };

    // onset_syncs[k]: events of other neurons that force i_k -> s_k. The
    // excitatory case is recursive along chains, so iterate to a fixpoint.
    std::map<std::string, std::set<std::string>> onset_syncs;
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& syn : topology.synapses) {
            std::set<std::string>& sinks = onset_syncs[syn.post];
            const std::size_t before = sinks.size();
            if (syn.kind == SynapseKind::excitatory) {
                for (const auto& e : kick_events(syn.pre)) sinks.insert(e);
                for (const auto& e : onset_syncs[syn.pre]) sinks.insert(e);
            } else if (rebound_capable(cls.at(syn.post))) {
                for (const auto& e : return_symbols(cls.at(syn.pre), syn.pre)) sinks.insert(e);
            }
            if (sinks.size() != before) changed = true;
        }
    }

    std::map<std::string, Automaton> out = templates;

    // Kinds for foreign symbols come from the owning template.
    auto kind_of_symbol = [&](const std::string& sym) {
        for (const auto& [id, a] : templates) {
            auto it = a.alphabet.find(sym);
            if (it != a.alphabet.end()) return it->second;
        }
        throw validation_error("unknown event symbol: " + sym);
    };

    for (const auto& n : topology.neurons) {
        Automaton& a = out.at(n.id);
        for (const auto& sym : onset_syncs[n.id]) {
            a.add_event(sym, kind_of_symbol(sym));
            a.add_transition(state_idle(n.id), sym, state_spiking(n.id));
        }
    }

    // An inhibitory synapse j -> k also gates the external kicks that start
    // j's activity on k being idle: a kick is accepted only when the neuron
    // it would inhibit is quiescent. Internal (synchronized) causes and
    // symbols already used by k are left alone.
    for (const auto& syn : topology.synapses) {
        if (syn.kind != SynapseKind::inhibitory) continue;
        Automaton& a = out.at(syn.post);
        std::set<std::string> guard_syms;
        for (const auto& e : kick_events(syn.pre)) guard_syms.insert(e);
        for (const auto& e : onset_syncs[syn.pre]) guard_syms.insert(e);
        for (const auto& sym : guard_syms) {
            if (kind_of_symbol(sym) == TransitionKind::internal) continue;
            if (onset_syncs[syn.post].count(sym)) continue;
            bool used = false;
            for (const auto& t : a.transitions) used = used || t.event == sym;
            if (used) continue;
            a.add_event(sym, kind_of_symbol(sym));
            a.add_transition(state_idle(syn.post), sym, state_idle(syn.post));
        }
    }

    // Prune the remaining external transitions of non-interactable neurons.
    std::set<std::string> dead;
    for (const auto& n : topology.neurons) {
        if (is_interactable(n.id)) continue;
        Automaton& a = out.at(n.id);
        std::vector<Transition> kept;
        for (const auto& t : a.transitions) {
            bool own_external = false;
            for (const auto& sym : own_onset_symbols(n.behavior_class, n.id))
                if (t.event == sym && a.kind_of(sym) != TransitionKind::internal) own_external = true;
            if (own_external)
                dead.insert(t.event);
            else
                kept.push_back(t);
        }
        a.transitions = std::move(kept);
    }
    // A pruned symbol cannot occur anywhere; drop it from every alphabet.
    for (auto& [id, a] : out) {
        std::erase_if(a.transitions, [&](const Transition& t) { return dead.count(t.event) != 0; });
        std::erase_if(a.alphabet, [&](const auto& kv) { return dead.count(kv.first) != 0; });
    }
    return out;
}

Automaton build_network_des(const NetworkTopology& topology) {
    topology.validate();
    std::map<std::string, Automaton> templates;
    for (const auto& n : topology.neurons)
        templates[n.id] = neuron_template(n.behavior_class, n.id);
    std::map<std::string, Automaton> rewritten = apply_synapse(topology, templates);

    Automaton result = rewritten.at(topology.neurons.front().id);
    for (std::size_t i = 1; i < topology.neurons.size(); ++i)
        result = compose(result, rewritten.at(topology.neurons[i].id));
    result = accessible(result);
    result.validate();
    return result;
}

Automaton wta_automaton(const WTAParams& params) {
    if (params.n < 2) throw validation_error("WTA automaton needs at least 2 neurons");
    Automaton a;
    std::vector<std::string> states{"i"};
    for (int k = 1; k <= params.n; ++k) states.push_back("s" + std::to_string(k));
    for (const auto& s : states) a.add_state(s);
    a.initial = "i";
    for (const auto& src : states) {
        for (const auto& dst : states) {
            if (src == dst) continue;
            const std::string ev = "w_" + src + "_" + dst;
            const bool touches_idle = (src == "i" || dst == "i");
            a.add_event(ev, touches_idle ? TransitionKind::external_inhibitory
                                         : TransitionKind::internal);
            a.add_transition(src, ev, dst);
        }
    }
    if (!params.excitatory_edges.empty()) return apply_excitatory_restriction(a, params.excitatory_edges);
    return a;
}

Automaton apply_excitatory_restriction(const Automaton& wta,
                                       const std::vector<std::pair<std::string, std::string>>& edges) {
    wta.validate();
    // Per-edge kind flips require one symbol per transition.
    std::map<std::string, int> uses;
    for (const auto& t : wta.transitions) ++uses[t.event];
    for (const auto& [sym, n] : uses)
        if (n > 1)
            throw validation_error("restriction needs a unique event per edge; symbol " + sym +
                                   " labels " + std::to_string(n) + " transitions");

    auto is_winner = [](const std::string& s) { return !s.empty() && s[0] == 's'; };
    std::set<std::string> designated_src;
    std::set<std::pair<std::string, std::string>> designated;
    for (const auto& [src, dst] : edges) {
        if (src == dst)
            throw validation_error("restriction edge " + src + "->" + dst + " is a self-loop");
        if (!is_winner(src) || !is_winner(dst))
            throw validation_error("restriction edges must connect winner states: " + src + "->" + dst);
        bool found = false;
        for (const auto& t : wta.transitions)
            if (t.src == src && t.dst == dst) found = true;
        if (!found)
            throw validation_error("restriction edge " + src + "->" + dst + " is not in the automaton");
        designated_src.insert(src);
        designated.insert({src, dst});
    }

    Automaton out = wta;
    for (const auto& t : out.transitions) {
        if (!is_winner(t.src) || !is_winner(t.dst)) continue;
        if (!designated_src.count(t.src)) continue;
        if (designated.count({t.src, t.dst})) continue;
        out.alphabet[t.event] = TransitionKind::external_excitatory;
    }
    return out;
}

Automaton internal_winner_subautomaton(const Automaton& wta, const std::string& initial) {
    Automaton out;
    for (const auto& s : wta.states)
        if (!s.empty() && s[0] == 's') out.add_state(s);
    if (!out.has_state(initial))
        throw validation_error("initial state " + initial + " is not a winner state");
    out.initial = initial;
    for (const auto& t : wta.transitions) {
        if (!out.has_state(t.src) || !out.has_state(t.dst)) continue;
        if (wta.kind_of(t.event) != TransitionKind::internal) continue;
        out.add_event(t.event, TransitionKind::internal);
        out.add_transition(t.src, t.event, t.dst);
    }
    return out;
}

NetworkTopology topology_from_circuit(const CircuitSpec& circuit, const StimulusProgram& stimulus) {
    NetworkTopology topo;
    for (const auto& n : circuit.neurons) topo.neurons.push_back({n.id, n.behavior_class});
    for (const auto& s : circuit.synapses) topo.synapses.push_back({s.pre, s.post, s.kind, s.speed});
    for (const auto& [id, pulses] : stimulus.entries)
        if (!pulses.empty()) topo.interactable.insert(id);
    return topo;
}

} // namespace neurodes
