#include "neurodes/realization.hpp"

#include <algorithm>

#include "neurodes/des_builder.hpp"
#include "neurodes/errors.hpp"
#include "neurodes/events.hpp"

namespace neurodes {

std::string RealizationPlan::neuron_of(const std::string& state) const {
    auto it = state_to_neuron.find(state);
    if (it == state_to_neuron.end()) throw validation_error("state not in plan: " + state);
    return it->second;
}

std::string RealizationPlan::state_of(const std::string& neuron) const {
    for (const auto& [state, id] : state_to_neuron)
        if (id == neuron) return state;
    throw validation_error("neuron not in plan: " + neuron);
}

RealizationPlan realize(const Automaton& a) { return realize(a, profiles::realization_profile()); }

RealizationPlan realize(const Automaton& a, const profiles::RealizationProfile& profile) {
    a.validate();
    if (a.states.size() < 2)
        throw validation_error("realization needs at least 2 states");
    for (const auto& t : a.transitions)
        if (t.src == t.dst)
            throw validation_error("realization rejects self-loops; found one at state " + t.src +
                                   " on event " + t.event);

    RealizationPlan plan;
    // Tie-breaking noise is needed unless every state hands over to exactly
    // one successor.
    std::map<std::string, int> out_degree;
    for (const auto& s : a.states) out_degree[s] = 0;
    for (const auto& t : a.transitions) ++out_degree[t.src];
    bool needs_noise = false;
    for (const auto& [s, d] : out_degree)
        if (d != 1) needs_noise = true;

    for (std::size_t i = 0; i < a.states.size(); ++i) {
        const std::string id = std::to_string(i + 1);
        plan.state_to_neuron[a.states[i]] = id;
        NeuronSpec n = profile.neuron;
        n.id = id;
        n.noise_amplitude = needs_noise ? profile.noise_amplitude : 0.0;
        plan.circuit.neurons.push_back(n);
    }
    for (const auto& sa : a.states) {
        for (const auto& sb : a.states) {
            if (sa == sb) continue;
            SynapseSpec syn = profile.inhibitory;
            syn.pre = plan.neuron_of(sa);
            syn.post = plan.neuron_of(sb);
            plan.circuit.synapses.push_back(syn);
        }
    }
    for (const auto& t : a.transitions) {
        SynapseSpec syn = profile.excitatory;
        syn.pre = plan.neuron_of(t.src);
        syn.post = plan.neuron_of(t.dst);
        plan.transition_synapse.push_back(plan.circuit.synapses.size());
        plan.circuit.synapses.push_back(syn);
    }
    validate(plan.circuit);
    return plan;
}

RoundTripVerdict round_trip_check(const Automaton& a) {
    RealizationPlan plan = realize(a);
    const int n = static_cast<int>(a.states.size());

    WTAParams params;
    params.n = n;
    Automaton wta = wta_automaton(params);

    std::vector<std::pair<std::string, std::string>> edges;
    for (const auto& t : a.transitions)
        edges.push_back({"s" + plan.neuron_of(t.src), "s" + plan.neuron_of(t.dst)});
    Automaton restricted = apply_excitatory_restriction(wta, edges);
    Automaton skeleton =
        internal_winner_subautomaton(restricted, "s" + plan.neuron_of(a.initial));

    std::map<std::string, std::string> state_map;
    for (const auto& s : a.states) state_map[s] = "s" + plan.neuron_of(s);

    RoundTripVerdict verdict;
    auto mismatch = structural_mismatch(a, skeleton, state_map);
    verdict.pass = !mismatch.has_value();
    if (mismatch) verdict.witness = *mismatch;
    return verdict;
}

std::vector<RealizedRun> realize_and_simulate(const Automaton& a, int trials, std::uint64_t seed) {
    return realize_and_simulate(a, trials, seed, profiles::realization_profile(),
                                BatchPolicy::parallel);
}

std::vector<RealizedRun> realize_and_simulate(const Automaton& a, int trials, std::uint64_t seed,
                                              const profiles::RealizationProfile& profile,
                                              BatchPolicy policy) {
    RealizationPlan plan = realize(a, profile);

    StimulusProgram stimulus;
    stimulus.at(plan.neuron_of(a.initial))
        .push_back({profile.kick_time, profile.kick_duration, profile.kick_amplitude});

    SimConfig config;
    config.dt = profile.dt;
    config.t_end = profile.t_end;
    config.seed = seed;
    config.record_gates = false;
    config.record_stride = 5;

    // Path acceptance runs over the winner skeleton of the restricted WTA:
    // one unique event per ordered winner pair.
    WTAParams params;
    params.n = static_cast<int>(a.states.size());
    std::vector<std::pair<std::string, std::string>> edges;
    for (const auto& t : a.transitions)
        edges.push_back({"s" + plan.neuron_of(t.src), "s" + plan.neuron_of(t.dst)});
    Automaton skeleton = internal_winner_subautomaton(
        apply_excitatory_restriction(wta_automaton(params), edges), "s" + plan.neuron_of(a.initial));

    std::vector<SimulationResult> results =
        simulate_batch(plan.circuit, stimulus, config, static_cast<std::size_t>(trials), policy);

    ExtractionConfig ex;
    std::vector<RealizedRun> runs(results.size());
    for (std::size_t t = 0; t < results.size(); ++t) {
        RealizedRun run;
        run.seed = results[t].seed;
        std::vector<std::string> winners = winner_sequence(results[t], plan.circuit, ex);
        for (const auto& id : winners) run.winner_states.push_back(plan.state_of(id));

        run.conformant = !winners.empty() && run.winner_states.front() == a.initial;
        if (run.conformant) {
            EventString path;
            for (std::size_t i = 0; i + 1 < winners.size(); ++i)
                path.push_back("w_s" + winners[i] + "_s" + winners[i + 1]);
            run.conformant = accepts(skeleton, path);
        }
        runs[t] = std::move(run);
    }
    return runs;
}

} // namespace neurodes
