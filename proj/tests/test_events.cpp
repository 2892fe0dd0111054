#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "neurodes/des_builder.hpp"
#include "neurodes/errors.hpp"
#include "neurodes/events.hpp"
#include "neurodes/profiles.hpp"
#include "neurodes/simulate.hpp"

using namespace neurodes;

namespace {

SimConfig config(double dt, double t_end, std::uint64_t seed = 1) {
    SimConfig c;
    c.dt = dt;
    c.t_end = t_end;
    c.seed = seed;
    return c;
}

StimulusProgram pulse(const std::string& id, double start, double dur, double amp) {
    StimulusProgram s;
    s.at(id).push_back({start, dur, amp});
    return s;
}

std::vector<std::string> tokens(const EventTrace& t) { return untime(t); }

} // namespace

TEST_CASE("spike detection on the excitable pulse scenario") {
    CircuitSpec c;
    c.neurons.push_back(profiles::excitable("1"));
    auto r = simulate(c, pulse("1", 35.0, 2.0, 3.95), config(0.01, 60.0));
    ExtractionConfig ex;
    auto spikes = detect_spikes(r.time, r.voltage[0], ex);
    REQUIRE(spikes.size() == 1);
    CHECK(spikes[0] >= 39.0);
    CHECK(spikes[0] <= 42.0);
}

TEST_CASE("flat trace yields no spikes, empty trace is rejected") {
    ExtractionConfig ex;
    std::vector<double> t{0.0, 0.1, 0.2}, v{-65.0, -65.0, -65.0};
    CHECK(detect_spikes(t, v, ex).empty());
    CHECK_THROWS_AS(detect_spikes({}, {}, ex), validation_error);
}

TEST_CASE("burst grouping follows the inter-spike-interval rule") {
    ExtractionConfig ex;
    CHECK(group_episodes({}, ex).empty());

    auto one = group_episodes({10.0}, ex);
    REQUIRE(one.size() == 1);
    CHECK(one[0].kind == EpisodeKind::spike);
    CHECK(one[0].onset == 10.0);
    CHECK(one[0].offset == 10.0);

    auto burst = group_episodes({10.0, 25.0, 38.0}, ex);
    REQUIRE(burst.size() == 1);
    CHECK(burst[0].kind == EpisodeKind::burst);
    CHECK(burst[0].onset == 10.0);
    CHECK(burst[0].offset == 38.0);
    CHECK(burst[0].spike_count == 3);

    auto split = group_episodes({10.0, 25.0, 90.0}, ex);
    REQUIRE(split.size() == 2);
    CHECK(split[0].kind == EpisodeKind::burst);
    CHECK(split[1].kind == EpisodeKind::spike);
}

TEST_CASE("excitable pulse extracts onset then return") {
    CircuitSpec c;
    c.neurons.push_back(profiles::excitable("1"));
    auto r = simulate(c, pulse("1", 35.0, 2.0, 3.95), config(0.01, 120.0));
    ExtractionConfig ex;
    auto trace = extract_trace(r, c, ex);
    REQUIRE(trace.events.size() == 2);
    CHECK(trace.events[0].token() == "sigma1");
    CHECK(trace.events[0].cause == EventCause::external_excitatory);
    CHECK(trace.events[1].token() == "eta1");
    CHECK(trace.events[1].cause == EventCause::internal);
    CHECK(trace.events[0].time < trace.events[1].time);
    CHECK(trace.truncated_episodes == 0);
}

TEST_CASE("burster extracts burst onset and burst return") {
    CircuitSpec c;
    c.neurons.push_back(profiles::spiking_rebound_bursting("1"));
    auto r = simulate(c, pulse("1", 50.0, 200.0, -2.0), config(0.01, 600.0));
    ExtractionConfig ex;
    auto trace = extract_trace(r, c, ex);
    CHECK(tokens(trace) == std::vector<std::string>{"beta1", "rho1"});
    // depolarizing pulse: plain spike episode
    auto d = simulate(c, pulse("1", 20.0, 2.0, 5.0), config(0.01, 300.0));
    auto dt = extract_trace(d, c, ex);
    CHECK(tokens(dt) == std::vector<std::string>{"sigma1", "eta1"});
}

TEST_CASE("rebound spiker under an inhibitory pulse extracts rebound then return") {
    CircuitSpec c;
    c.neurons.push_back(profiles::rebound_spiking("1"));
    auto r = simulate(c, pulse("1", 50.0, 200.0, -2.0), config(0.01, 600.0));
    ExtractionConfig ex;
    auto trace = extract_trace(r, c, ex);
    CHECK(tokens(trace) == std::vector<std::string>{"rho_rebound1", "eta1"});
}

TEST_CASE("two sequential pulses alternate onset and return") {
    CircuitSpec c;
    c.neurons.push_back(profiles::excitable("1"));
    StimulusProgram stim;
    stim.at("1").push_back({20.0, 2.0, 5.0});
    stim.at("1").push_back({120.0, 2.0, 5.0});
    auto r = simulate(c, stim, config(0.01, 220.0));
    ExtractionConfig ex;
    auto trace = extract_trace(r, c, ex);
    CHECK(tokens(trace) == std::vector<std::string>{"sigma1", "eta1", "sigma1", "eta1"});
}

TEST_CASE("oscillator trace is a kick followed by alternating returns") {
    CircuitSpec c = profiles::hco_circuit();
    auto r = simulate(c, pulse("1", 20.0, 5.0, 8.0), config(0.02, 1500.0));
    ExtractionConfig ex;
    auto trace = extract_trace(r, c, ex);
    auto toks = tokens(trace);
    REQUIRE(toks.size() >= 21); // >= 10 full alternation cycles
    CHECK(toks[0] == "sigma1");
    for (std::size_t i = 1; i < toks.size(); ++i)
        CHECK(toks[i] == (i % 2 == 1 ? "eta1" : "eta2"));
    // the composed network automaton accepts the untimed string
    Automaton des = build_network_des(topology_from_circuit(c, r.stimulus));
    CHECK(accepts(des, toks));
}

TEST_CASE("per-neuron onsets and returns alternate in every episode list") {
    CircuitSpec c = profiles::hco_circuit();
    auto r = simulate(c, pulse("1", 20.0, 5.0, 8.0), config(0.02, 1200.0));
    ExtractionConfig ex;
    auto episodes = extract_episodes(r, c, ex);
    for (const auto& [id, eps] : episodes) {
        for (std::size_t i = 0; i < eps.size(); ++i) {
            if (i + 1 < eps.size()) {
                REQUIRE(eps[i].return_time.has_value());
                CHECK(*eps[i].return_time > eps[i].offset);
                CHECK(*eps[i].return_time < eps[i + 1].onset);
            }
        }
    }
}

TEST_CASE("episode counts match onset and completed return counts") {
    CircuitSpec c;
    c.neurons.push_back(profiles::excitable("1"));
    StimulusProgram stim;
    stim.at("1").push_back({20.0, 2.0, 5.0});
    stim.at("1").push_back({90.0, 2.0, 5.0});
    auto r = simulate(c, stim, config(0.01, 100.0)); // second episode cut off by t_end
    ExtractionConfig ex;
    auto trace = extract_trace(r, c, ex);
    CHECK(trace.truncated_episodes == 1);
    auto toks = tokens(trace);
    CHECK(toks == std::vector<std::string>{"sigma1", "eta1", "sigma1"});
}

TEST_CASE("untimed strings are invariant under time-grid refinement") {
    CircuitSpec c = profiles::hco_circuit();
    ExtractionConfig ex;
    auto run = [&](double dt) {
        auto r = simulate(c, pulse("1", 20.0, 5.0, 8.0), config(dt, 800.0));
        return tokens(extract_trace(r, c, ex));
    };
    CHECK(run(0.02) == run(0.01));

    CircuitSpec b;
    b.neurons.push_back(profiles::spiking_rebound_bursting("1"));
    auto run_b = [&](double dt) {
        auto r = simulate(b, pulse("1", 50.0, 200.0, -2.0), config(dt, 500.0));
        return tokens(extract_trace(r, b, ex));
    };
    CHECK(run_b(0.02) == run_b(0.01));
}

TEST_CASE("extraction is deterministic") {
    CircuitSpec c = profiles::wta_circuit(3, 0.15);
    ExtractionConfig ex;
    auto r1 = simulate(c, pulse("1", 20.0, 5.0, 8.0), config(0.02, 400.0, 9));
    auto r2 = simulate(c, pulse("1", 20.0, 5.0, 8.0), config(0.02, 400.0, 9));
    auto t1 = extract_trace(r1, c, ex);
    auto t2 = extract_trace(r2, c, ex);
    CHECK(tokens(t1) == tokens(t2));
    REQUIRE(t1.events.size() == t2.events.size());
    for (std::size_t i = 0; i < t1.events.size(); ++i) CHECK(t1.events[i].time == t2.events[i].time);
}

TEST_CASE("winner sequence never repeats a winner consecutively") {
    CircuitSpec c = profiles::wta_circuit(3, 0.15);
    ExtractionConfig ex;
    auto r = simulate(c, pulse("1", 20.0, 5.0, 8.0), config(0.02, 900.0, 5));
    auto seq = winner_sequence(r, c, ex);
    REQUIRE(seq.size() >= 6);
    for (std::size_t i = 1; i < seq.size(); ++i) CHECK(seq[i] != seq[i - 1]);
    CHECK(max_simultaneously_above(r, 0.0) == 1);
}

TEST_CASE("ambiguous attribution is an error") {
    CircuitSpec c;
    c.neurons.push_back(profiles::rebound_spiking("1"));
    // a negative pulse ends just before a positive one triggers the spike
    StimulusProgram stim;
    stim.at("1").push_back({30.0, 10.0, -1.0});
    stim.at("1").push_back({42.0, 2.0, 6.0});
    auto r = simulate(c, stim, config(0.01, 200.0));
    ExtractionConfig ex;
    CHECK_THROWS_AS(extract_trace(r, c, ex), attribution_error);
}

TEST_CASE("extraction config is validated") {
    ExtractionConfig ex;
    ex.rest_band = 0.0;
    CHECK_THROWS_AS(validate(ex), validation_error);
    ex = {};
    ex.min_spikes_per_burst = 1;
    CHECK_THROWS_AS(validate(ex), validation_error);
    ex = {};
    CircuitSpec c;
    c.neurons.push_back(profiles::excitable("1"));
    StimulusProgram none;
    auto r = simulate(c, none, config(0.01, 50.0));
    ex.spike_threshold = -64.0; // inside the rest band
    CHECK_THROWS_AS(extract_trace(r, c, ex), validation_error);
}
