#include "neurodes/automaton.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <unordered_map>
#include <unordered_set>

#include "neurodes/errors.hpp"

namespace neurodes {

std::string to_string(TransitionKind k) {
    switch (k) {
    case TransitionKind::internal: return "internal";
    case TransitionKind::external_excitatory: return "external_excitatory";
    case TransitionKind::external_inhibitory: return "external_inhibitory";
    }
    return "internal";
}

TransitionKind transition_kind_from_string(const std::string& s) {
    if (s == "internal") return TransitionKind::internal;
    if (s == "external_excitatory") return TransitionKind::external_excitatory;
    if (s == "external_inhibitory") return TransitionKind::external_inhibitory;
    throw validation_error("unknown transition kind: " + s);
}

bool Automaton::has_state(const std::string& s) const {
    return std::find(states.begin(), states.end(), s) != states.end();
}

TransitionKind Automaton::kind_of(const std::string& event) const {
    auto it = alphabet.find(event);
    if (it == alphabet.end()) throw validation_error("event not in alphabet: " + event);
    return it->second;
}

void Automaton::add_state(const std::string& s) {
    if (!has_state(s)) states.push_back(s);
}

void Automaton::add_event(const std::string& symbol, TransitionKind kind) {
    auto it = alphabet.find(symbol);
    if (it != alphabet.end()) {
        if (it->second != kind)
            throw composition_error("conflicting kinds for event " + symbol);
        return;
    }
    alphabet.emplace(symbol, kind);
}

void Automaton::add_transition(const std::string& src, const std::string& event, const std::string& dst) {
    transitions.push_back({src, event, dst});
}

std::optional<std::string> Automaton::step(const std::string& state, const std::string& event) const {
    for (const auto& t : transitions)
        if (t.src == state && t.event == event) return t.dst;
    return std::nullopt;
}

std::vector<Transition> Automaton::out_edges(const std::string& state) const {
    std::vector<Transition> out;
    for (const auto& t : transitions)
        if (t.src == state) out.push_back(t);
    return out;
}

void Automaton::validate() const {
    if (states.empty()) throw validation_error("automaton has no states");
    if (!has_state(initial)) throw validation_error("initial state not in state set: " + initial);
    std::set<std::string> seen;
    for (const auto& s : states)
        if (!seen.insert(s).second) throw validation_error("duplicate state label: " + s);
    std::set<std::pair<std::string, std::string>> keys;
    for (const auto& t : transitions) {
        if (!has_state(t.src)) throw validation_error("transition source not a state: " + t.src);
        if (!has_state(t.dst)) throw validation_error("transition target not a state: " + t.dst);
        if (!alphabet.count(t.event)) throw validation_error("transition event not in alphabet: " + t.event);
        if (!keys.insert({t.src, t.event}).second)
            throw validation_error("nondeterministic on (" + t.src + ", " + t.event + ")");
    }
}

Automaton accessible(const Automaton& a) {
    std::set<std::string> reach;
    std::deque<std::string> frontier{a.initial};
    reach.insert(a.initial);
    while (!frontier.empty()) {
        std::string s = frontier.front();
        frontier.pop_front();
        for (const auto& t : a.transitions)
            if (t.src == s && reach.insert(t.dst).second) frontier.push_back(t.dst);
    }
    Automaton out;
    out.initial = a.initial;
    out.alphabet = a.alphabet;
    for (const auto& s : a.states)
        if (reach.count(s)) out.states.push_back(s);
    for (const auto& t : a.transitions)
        if (reach.count(t.src)) out.transitions.push_back(t);
    return out;
}

Automaton product(const Automaton& a, const Automaton& b) {
    for (const auto& [sym, kind] : a.alphabet) {
        auto it = b.alphabet.find(sym);
        if (it != b.alphabet.end() && it->second != kind)
            throw composition_error("shared event " + sym + " has kind " + to_string(kind) +
                                    " in one component and " + to_string(it->second) + " in the other");
    }
    Automaton out;
    out.alphabet = a.alphabet;
    for (const auto& [sym, kind] : b.alphabet) out.add_event(sym, kind);
    for (const auto& sa : a.states)
        for (const auto& sb : b.states) out.states.push_back(sa + sb);
    out.initial = a.initial + b.initial;

    for (const auto& sa : a.states) {
        for (const auto& sb : b.states) {
            const std::string src = sa + sb;
            for (const auto& [sym, kind] : out.alphabet) {
                (void)kind;
                const bool in_a = a.alphabet.count(sym) != 0;
                const bool in_b = b.alphabet.count(sym) != 0;
                std::optional<std::string> na = in_a ? a.step(sa, sym) : std::nullopt;
                std::optional<std::string> nb = in_b ? b.step(sb, sym) : std::nullopt;
                if (in_a && in_b) {
                    if (na && nb) out.add_transition(src, sym, *na + *nb);
                } else if (in_a) {
                    if (na) out.add_transition(src, sym, *na + sb);
                } else {
                    if (nb) out.add_transition(src, sym, sa + *nb);
                }
            }
        }
    }
    return out;
}

Automaton compose(const Automaton& a, const Automaton& b) {
    return accessible(product(a, b));
}

std::set<std::string> enabled(const Automaton& a, const std::string& state, bool input_present) {
    if (!a.has_state(state)) throw validation_error("state not in automaton: " + state);
    std::set<std::string> external, internal;
    for (const auto& t : a.out_edges(state)) {
        if (a.kind_of(t.event) == TransitionKind::internal)
            internal.insert(t.event);
        else
            external.insert(t.event);
    }
    if (input_present && !external.empty()) return external;
    return internal;
}

std::size_t accepted_prefix_length(const Automaton& a, const EventString& s) {
    std::string state = a.initial;
    std::size_t n = 0;
    for (const auto& ev : s) {
        if (!a.alphabet.count(ev)) return n;
        auto next = a.step(state, ev);
        if (!next) return n;
        state = *next;
        ++n;
    }
    return n;
}

bool accepts(const Automaton& a, const EventString& s) {
    return accepted_prefix_length(a, s) == s.size();
}

std::set<EventString> generate_language(const Automaton& a, std::size_t max_len) {
    std::set<EventString> out;
    // depth-bounded unfolding from the initial state
    std::function<void(const std::string&, EventString&)> walk = [&](const std::string& state,
                                                                     EventString& prefix) {
        out.insert(prefix);
        if (prefix.size() >= max_len) return;
        for (const auto& t : a.out_edges(state)) {
            prefix.push_back(t.event);
            walk(t.dst, prefix);
            prefix.pop_back();
        }
    };
    EventString prefix;
    walk(a.initial, prefix);
    return out;
}

namespace {

// Degree signature: multiset of (direction, event, kind) pairs, used to
// prune the isomorphism search.
std::multiset<std::string> signature(const Automaton& a, const std::string& state) {
    std::multiset<std::string> sig;
    for (const auto& t : a.transitions) {
        if (t.src == state) sig.insert("o:" + t.event + ":" + to_string(a.kind_of(t.event)));
        if (t.dst == state) sig.insert("i:" + t.event + ":" + to_string(a.kind_of(t.event)));
    }
    return sig;
}

bool transitions_match(const Automaton& a, const Automaton& b,
                       const std::map<std::string, std::string>& m) {
    std::set<std::tuple<std::string, std::string, std::string>> eb;
    for (const auto& t : b.transitions) eb.insert({t.src, t.event, t.dst});
    if (a.transitions.size() != b.transitions.size()) return false;
    for (const auto& t : a.transitions) {
        auto is = m.find(t.src);
        auto id = m.find(t.dst);
        if (is == m.end() || id == m.end()) return false;
        if (!eb.count({is->second, t.event, id->second})) return false;
        if (a.kind_of(t.event) != b.kind_of(t.event)) return false;
    }
    return true;
}

} // namespace

std::optional<std::map<std::string, std::string>> isomorphism(const Automaton& a, const Automaton& b) {
    if (a.states.size() != b.states.size()) return std::nullopt;
    if (a.transitions.size() != b.transitions.size()) return std::nullopt;

    // Events must be usable with identical kinds on both sides for every
    // symbol that actually labels a transition.
    auto used = [](const Automaton& x) {
        std::map<std::string, TransitionKind> u;
        for (const auto& t : x.transitions) u.emplace(t.event, x.kind_of(t.event));
        return u;
    };
    if (used(a) != used(b)) return std::nullopt;

    std::map<std::string, std::multiset<std::string>> sig_a, sig_b;
    for (const auto& s : a.states) sig_a[s] = signature(a, s);
    for (const auto& s : b.states) sig_b[s] = signature(b, s);

    std::map<std::string, std::string> m;
    std::set<std::string> taken;

    std::function<bool(std::size_t)> assign = [&](std::size_t idx) -> bool {
        if (idx == a.states.size()) return transitions_match(a, b, m);
        const std::string& sa = a.states[idx];
        for (const auto& sb : b.states) {
            if (taken.count(sb)) continue;
            if (sig_a[sa] != sig_b[sb]) continue;
            if ((sa == a.initial) != (sb == b.initial)) continue;
            m[sa] = sb;
            taken.insert(sb);
            if (assign(idx + 1)) return true;
            m.erase(sa);
            taken.erase(sb);
        }
        return false;
    };
    if (assign(0)) return m;
    return std::nullopt;
}

std::optional<std::string> structural_mismatch(const Automaton& a, const Automaton& b,
                                               const std::map<std::string, std::string>& state_map) {
    if (state_map.size() != a.states.size())
        return "state map does not cover all states of the first automaton";
    std::set<std::string> image;
    for (const auto& s : a.states) {
        auto it = state_map.find(s);
        if (it == state_map.end()) return "state " + s + " missing from map";
        if (!b.has_state(it->second)) return "mapped state " + it->second + " not in second automaton";
        if (!image.insert(it->second).second) return "state map is not injective at " + it->second;
    }
    if (image.size() != b.states.size()) return "state map is not onto the second automaton";
    if (state_map.at(a.initial) != b.initial)
        return "initial state maps to " + state_map.at(a.initial) + ", expected " + b.initial;

    auto edge_multiset = [](const Automaton& x, auto rename) {
        std::multiset<std::tuple<std::string, std::string, std::string>> es;
        for (const auto& t : x.transitions)
            es.insert({rename(t.src), to_string(x.kind_of(t.event)), rename(t.dst)});
        return es;
    };
    auto ea = edge_multiset(a, [&](const std::string& s) { return state_map.at(s); });
    auto eb = edge_multiset(b, [](const std::string& s) { return s; });
    if (ea != eb) {
        for (const auto& e : ea)
            if (!eb.count(e))
                return "edge " + std::get<0>(e) + " -[" + std::get<1>(e) + "]-> " + std::get<2>(e) +
                       " has no counterpart";
        for (const auto& e : eb)
            if (!ea.count(e))
                return "edge " + std::get<0>(e) + " -[" + std::get<1>(e) + "]-> " + std::get<2>(e) +
                       " is not produced by the mapped automaton";
        return "transition multiplicities differ";
    }
    return std::nullopt;
}

} // namespace neurodes
