#include <doctest.h>

#include <set>

#include "neurodes/errors.hpp"
#include "neurodes/realization.hpp"
#include "random_automata.hpp"

using namespace neurodes;

namespace {

Automaton cycle3() {
    Automaton a;
    for (const char* s : {"A", "B", "C"}) a.add_state(s);
    a.initial = "A";
    a.add_event("go_ab", TransitionKind::internal);
    a.add_event("go_bc", TransitionKind::internal);
    a.add_event("go_ca", TransitionKind::internal);
    a.add_transition("A", "go_ab", "B");
    a.add_transition("B", "go_bc", "C");
    a.add_transition("C", "go_ca", "A");
    return a;
}

Automaton two_state_swap() {
    Automaton a;
    a.add_state("L");
    a.add_state("R");
    a.initial = "L";
    a.add_event("lr", TransitionKind::internal);
    a.add_event("rl", TransitionKind::internal);
    a.add_transition("L", "lr", "R");
    a.add_transition("R", "rl", "L");
    return a;
}

} // namespace

TEST_CASE("realize counts neurons and synapses from the automaton") {
    RealizationPlan plan = realize(cycle3());
    CHECK(plan.circuit.neurons.size() == 3);
    int inhibitory = 0, excitatory = 0;
    for (const auto& s : plan.circuit.synapses) {
        if (s.kind == SynapseKind::inhibitory) ++inhibitory;
        if (s.kind == SynapseKind::excitatory) ++excitatory;
    }
    CHECK(inhibitory == 3 * 2);
    CHECK(excitatory == 3);
    CHECK(plan.transition_synapse.size() == 3);
    // every state has out-degree exactly 1: no tie-breaking noise needed
    for (const auto& n : plan.circuit.neurons) CHECK(n.noise_amplitude == 0.0);
    // excitatory synapses are slow, inhibitory fast, per the plan layout
    for (std::size_t i : plan.transition_synapse) {
        CHECK(plan.circuit.synapses[i].kind == SynapseKind::excitatory);
        CHECK(plan.circuit.synapses[i].speed == SynapseSpeed::slow);
    }
}

TEST_CASE("realize of the two-state swap gives the oscillator-like circuit") {
    RealizationPlan plan = realize(two_state_swap());
    CHECK(plan.circuit.neurons.size() == 2);
    int inhibitory = 0, excitatory = 0;
    for (const auto& s : plan.circuit.synapses) {
        if (s.kind == SynapseKind::inhibitory) ++inhibitory;
        if (s.kind == SynapseKind::excitatory) ++excitatory;
    }
    CHECK(inhibitory == 2);
    CHECK(excitatory == 2);
}

TEST_CASE("branching states switch tie-breaking noise on") {
    Automaton a = cycle3();
    a.add_event("go_ac", TransitionKind::internal);
    a.add_transition("A", "go_ac", "C");
    RealizationPlan plan = realize(a);
    for (const auto& n : plan.circuit.neurons) CHECK(n.noise_amplitude > 0.0);
}

TEST_CASE("realize rejects self-loops and too-small automata") {
    Automaton a = cycle3();
    a.add_event("stay", TransitionKind::internal);
    a.add_transition("A", "stay", "A");
    CHECK_THROWS_AS(realize(a), validation_error);

    Automaton single;
    single.add_state("only");
    single.initial = "only";
    CHECK_THROWS_AS(realize(single), validation_error);
}

TEST_CASE("round trip of the three-cycle passes") {
    auto verdict = round_trip_check(cycle3());
    CHECK(verdict.pass);
    CHECK(verdict.witness.empty());
}

TEST_CASE("round trip passes on a random family of self-loop-free automata") {
    for (std::uint32_t seed = 0; seed < 50; ++seed) {
        CAPTURE(seed);
        Automaton a = testutil::random_self_loop_free(seed);
        auto verdict = round_trip_check(a);
        CHECK(verdict.pass);
        if (!verdict.pass) CAPTURE(verdict.witness);
    }
}

TEST_CASE("round trip verdict is invariant under state relabeling") {
    for (std::uint32_t seed = 100; seed < 110; ++seed) {
        Automaton a = testutil::random_self_loop_free(seed);
        Automaton b = a;
        for (auto& s : b.states) s = "renamed_" + s;
        for (auto& t : b.transitions) {
            t.src = "renamed_" + t.src;
            t.dst = "renamed_" + t.dst;
        }
        b.initial = "renamed_" + b.initial;
        CHECK(round_trip_check(a).pass == round_trip_check(b).pass);
    }
}

TEST_CASE("structural mismatch reports the first difference") {
    Automaton a = cycle3();
    Automaton b = cycle3();
    b.transitions[2].dst = "B"; // C -> B instead of C -> A (breaks the cycle)
    std::map<std::string, std::string> identity{{"A", "A"}, {"B", "B"}, {"C", "C"}};
    auto mismatch = structural_mismatch(a, b, identity);
    REQUIRE(mismatch.has_value());
    CHECK(mismatch->find("C") != std::string::npos);
}

TEST_CASE("realized three-cycle simulates to cycle-consistent winner sequences") {
    auto runs = realize_and_simulate(cycle3(), 2, 31);
    REQUIRE(runs.size() == 2);
    for (const auto& run : runs) {
        CAPTURE(run.seed);
        CHECK(run.conformant);
        REQUIRE(run.winner_states.size() >= 6);
        CHECK(run.winner_states.front() == "A");
        const std::vector<std::string> order{"A", "B", "C"};
        for (std::size_t i = 0; i < run.winner_states.size(); ++i)
            CHECK(run.winner_states[i] == order[i % 3]);
    }
}
