#include <doctest.h>

#include <functional>
#include <set>

#include "fixtures.hpp"
#include "neurodes/automaton.hpp"
#include "neurodes/errors.hpp"

using namespace neurodes;

namespace {

EventString str(std::initializer_list<const char*> syms) {
    EventString s;
    for (const char* x : syms) s.push_back(x);
    return s;
}

// Independent reachability count (recursive DFS, no library code).
std::size_t dfs_reachable_count(const Automaton& a) {
    std::set<std::string> seen;
    std::function<void(const std::string&)> go = [&](const std::string& s) {
        if (!seen.insert(s).second) return;
        for (const auto& t : a.transitions)
            if (t.src == s) go(t.dst);
    };
    go(a.initial);
    return seen.size();
}

} // namespace

TEST_CASE("accessible removes isolated states") {
    Automaton a = fixtures::single_excitable("1");
    a.add_state("orphan");
    Automaton pruned = accessible(a);
    CHECK(pruned.states.size() == 2);
    CHECK(!pruned.has_state("orphan"));
}

TEST_CASE("accessible keeps a fully reachable automaton unchanged") {
    Automaton a = fixtures::single_excitable("1");
    Automaton pruned = accessible(a);
    CHECK(pruned.states == a.states);
    CHECK(pruned.transitions == a.transitions);
}

TEST_CASE("accessible is idempotent") {
    for (const auto& [name, a] : fixtures::all()) {
        CAPTURE(name);
        Automaton once = accessible(a);
        Automaton twice = accessible(once);
        CHECK(once.states == twice.states);
        CHECK(once.transitions == twice.transitions);
    }
}

TEST_CASE("mutual inhibition leaves the double-active state unreachable") {
    Automaton prod = product(fixtures::hco_factor_1(), fixtures::hco_factor_2());
    CHECK(prod.states.size() == 4);
    CHECK(dfs_reachable_count(prod) == 3);
    Automaton pruned = accessible(prod);
    CHECK(pruned.states.size() == 3);
    CHECK(!pruned.has_state("s1s2"));
}

TEST_CASE("composing the excitatory pair gives the four-state composite") {
    Automaton c = compose(fixtures::single_rebound_spiking("1"), fixtures::excitatory_target());
    CHECK(c.states.size() == 4);
    CHECK(isomorphic(c, fixtures::excitatory_pair_composite()));
}

TEST_CASE("composing the inhibitory pair gives the three-state cycle") {
    Automaton c = compose(fixtures::single_rebound_spiking("1"), fixtures::inhibitory_target());
    CHECK(c.states.size() == 3);
    CHECK(isomorphic(c, fixtures::inhibitory_pair_composite()));
    // i1i2 -> s1i2 -> i1s2 -> i1i2 via sigma1, eta1, eta2
    CHECK(accepts(c, str({"sigma1", "eta1", "eta2", "sigma1"})));
}

TEST_CASE("composition with a disjoint one-state automaton changes nothing") {
    Automaton unit;
    unit.add_state("u");
    unit.initial = "u";
    for (const auto& [name, a] : fixtures::all()) {
        CAPTURE(name);
        CHECK(isomorphic(compose(a, unit), a));
    }
}

TEST_CASE("composition rejects conflicting kinds on shared events") {
    Automaton a = fixtures::single_excitable("1");
    Automaton b;
    b.add_state("x");
    b.initial = "x";
    b.add_event("sigma1", TransitionKind::internal);
    b.add_transition("x", "sigma1", "x");
    CHECK_THROWS_AS(compose(a, b), composition_error);
}

TEST_CASE("compose is commutative and associative up to isomorphism") {
    Automaton a = fixtures::single_rebound_spiking("1");
    Automaton b = fixtures::inhibitory_target();
    Automaton c = fixtures::single_excitable("3");
    CHECK(isomorphic(compose(a, b), compose(b, a)));
    CHECK(isomorphic(compose(compose(a, b), c), compose(a, compose(b, c))));
    for (const auto& [name, x] : fixtures::all()) {
        CAPTURE(name);
        CHECK(isomorphic(compose(x, c), compose(c, x)));
    }
}

TEST_CASE("composition never grows past the state product and shrinks under synchrony") {
    Automaton n1 = fixtures::single_rebound_spiking("1");
    Automaton exc = compose(n1, fixtures::excitatory_target());
    CHECK(exc.states.size() <= 2 * 2);
    Automaton inh = compose(n1, fixtures::inhibitory_target());
    CHECK(inh.states.size() < 2 * 2);
    // versus the unconnected pair, the synapse also removes transitions
    Automaton free_pair = compose(n1, fixtures::single_rebound_spiking("2"));
    CHECK(exc.transitions.size() < free_pair.transitions.size());
    CHECK(inh.transitions.size() < free_pair.transitions.size());
}

TEST_CASE("enabled applies the preemption rule") {
    Automaton a = fixtures::single_excitable("1");
    CHECK(enabled(a, "i1", false).empty());
    CHECK(enabled(a, "i1", true) == std::set<std::string>{"sigma1"});
    CHECK(enabled(a, "s1", true) == std::set<std::string>{"eta1"});
    CHECK(enabled(a, "s1", false) == std::set<std::string>{"eta1"});
}

TEST_CASE("enabled returns only external events when both kinds leave a state") {
    // two external kicks and one internal alternative from the same state
    Automaton a;
    a.add_state("p");
    a.add_state("q");
    a.initial = "p";
    a.add_event("kick", TransitionKind::external_excitatory);
    a.add_event("drop", TransitionKind::external_inhibitory);
    a.add_event("drift", TransitionKind::internal);
    a.add_transition("p", "kick", "q");
    a.add_transition("p", "drop", "q");
    a.add_transition("p", "drift", "q");
    CHECK(enabled(a, "p", true) == std::set<std::string>{"kick", "drop"});
    CHECK(enabled(a, "p", false) == std::set<std::string>{"drift"});
}

TEST_CASE("accepts follows the generated language") {
    Automaton a = fixtures::single_excitable("1");
    CHECK(accepts(a, str({"sigma1", "eta1", "sigma1", "eta1"})));
    CHECK(!accepts(a, str({"eta1"})));
    CHECK(!accepts(a, str({"sigma1", "sigma1"})));
    CHECK(accepts(a, {}));
    CHECK(!accepts(a, str({"unknown"})));
}

TEST_CASE("accepts traces the inhibitory pair cycle") {
    Automaton c = compose(fixtures::single_rebound_spiking("1"), fixtures::inhibitory_target());
    CHECK(accepts(c, str({"sigma1", "eta1", "eta2", "rho_rebound1", "eta1", "eta2"})));
    CHECK(!accepts(c, str({"sigma1", "eta2"})));
}

TEST_CASE("generate_language enumerates bounded strings") {
    Automaton a = fixtures::single_excitable("1");
    CHECK(generate_language(a, 0) == std::set<EventString>{{}});
    std::set<EventString> expect{{}, str({"sigma1"}), str({"sigma1", "eta1"})};
    CHECK(generate_language(a, 2) == expect);

    Automaton r = fixtures::single_rebound_spiking("1");
    std::set<EventString> expect1{{}, str({"sigma1"}), str({"rho_rebound1"})};
    CHECK(generate_language(r, 1) == expect1);
}

TEST_CASE("accepts agrees with generate_language membership up to length 6") {
    for (const auto& [name, a] : fixtures::all()) {
        CAPTURE(name);
        auto lang = generate_language(a, 6);
        for (const auto& s : lang) CHECK(accepts(a, s));
        // strings just outside the language: extend each string by one event
        for (const auto& s : lang) {
            for (const auto& [sym, kind] : a.alphabet) {
                EventString ext = s;
                ext.push_back(sym);
                if (ext.size() > 6) continue;
                CHECK(accepts(a, ext) == (lang.count(ext) != 0));
            }
        }
    }
}

TEST_CASE("generated languages are prefix closed") {
    for (const auto& [name, a] : fixtures::all()) {
        CAPTURE(name);
        for (const auto& s : generate_language(a, 5)) {
            EventString prefix;
            for (const auto& sym : s) {
                CHECK(accepts(a, prefix));
                prefix.push_back(sym);
            }
        }
    }
}

TEST_CASE("isomorphism finds witnesses and rejects mismatches") {
    Automaton a = fixtures::single_burster("1");
    CHECK(isomorphic(a, a));

    // relabeled copy
    Automaton b = a;
    for (auto& s : b.states) s = "state_" + s;
    for (auto& t : b.transitions) {
        t.src = "state_" + t.src;
        t.dst = "state_" + t.dst;
    }
    b.initial = "state_" + b.initial;
    auto witness = isomorphism(a, b);
    REQUIRE(witness.has_value());
    CHECK(witness->at("i1") == "state_i1");
    CHECK(witness->at("b1") == "state_b1");

    CHECK(!isomorphic(fixtures::excitatory_pair_composite(), fixtures::inhibitory_pair_composite()));
    CHECK(!isomorphic(fixtures::single_excitable("1"), fixtures::single_rebound_spiking("1")));
}

TEST_CASE("validation rejects broken automata") {
    Automaton a;
    a.add_state("x");
    a.initial = "y";
    CHECK_THROWS_AS(a.validate(), validation_error);

    Automaton b = fixtures::single_excitable("1");
    b.add_transition("i1", "sigma1", "i1"); // duplicate (state, event) pair
    CHECK_THROWS_AS(b.validate(), validation_error);
}
