#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace neurodes {

enum class TransitionKind {
    internal,
    external_excitatory,
    external_inhibitory,
};

std::string to_string(TransitionKind k);
TransitionKind transition_kind_from_string(const std::string& s);

/// A string of event symbols.
using EventString = std::vector<std::string>;

struct Transition {
    std::string src;
    std::string event;
    std::string dst;

    friend bool operator==(const Transition&, const Transition&) = default;
    friend auto operator<=>(const Transition&, const Transition&) = default;
};

/// Finite automaton generating a prefix-closed language. Each event symbol
/// carries one transition kind; the automaton is deterministic per
/// (state, event). There are no marked states.
struct Automaton {
    std::vector<std::string> states;
    std::map<std::string, TransitionKind> alphabet; // symbol -> kind
    std::vector<Transition> transitions;
    std::string initial;

    bool has_state(const std::string& s) const;
    TransitionKind kind_of(const std::string& event) const;

    void add_state(const std::string& s);
    void add_event(const std::string& symbol, TransitionKind kind);
    void add_transition(const std::string& src, const std::string& event, const std::string& dst);

    /// Target of (state, event), if the transition exists.
    std::optional<std::string> step(const std::string& state, const std::string& event) const;

    std::vector<Transition> out_edges(const std::string& state) const;

    /// Throws validation_error on structural problems (unknown initial,
    /// dangling endpoints, nondeterminism, events outside the alphabet).
    void validate() const;
};

/// Sub-automaton of states reachable from the initial state.
Automaton accessible(const Automaton& a);

/// Raw synchronous product: shared events synchronize, private events
/// interleave; state labels are concatenated pairs. Not pruned.
Automaton product(const Automaton& a, const Automaton& b);

/// Parallel composition: product restricted to its accessible part.
/// Throws composition_error if kinds disagree on a shared symbol.
Automaton compose(const Automaton& a, const Automaton& b);

/// Events fireable at `state` under the preemption rule: with input present,
/// external transitions preempt internal ones; without input, external
/// transitions cannot fire.
std::set<std::string> enabled(const Automaton& a, const std::string& state, bool input_present);

/// True iff `s` is generated from the initial state (prefix-closed language).
bool accepts(const Automaton& a, const EventString& s);

/// Length of the longest prefix of `s` that is generated; equals s.size()
/// iff accepts(a, s).
std::size_t accepted_prefix_length(const Automaton& a, const EventString& s);

/// All generated strings of length <= max_len.
std::set<EventString> generate_language(const Automaton& a, std::size_t max_len);

/// State bijection preserving initial, transitions, event symbols, and kinds;
/// std::nullopt when none exists. Degree signatures prune the search.
std::optional<std::map<std::string, std::string>> isomorphism(const Automaton& a, const Automaton& b);

inline bool isomorphic(const Automaton& a, const Automaton& b) {
    return isomorphism(a, b).has_value();
}

/// Checks a given state bijection: transitions must correspond one-to-one
/// with matching kinds; event symbols are not compared. Returns a
/// description of the first mismatch, or std::nullopt if the mapping works.
std::optional<std::string> structural_mismatch(const Automaton& a, const Automaton& b,
                                               const std::map<std::string, std::string>& state_map);

} // namespace neurodes
