#include "neurodes/events.hpp"

#include <algorithm>
#include <cmath>

#include "neurodes/errors.hpp"
#include "neurodes/rng.hpp"

namespace neurodes {

std::string to_string(EventSymbol s) {
    switch (s) {
    case EventSymbol::sigma: return "sigma";
    case EventSymbol::rho_rebound: return "rho_rebound";
    case EventSymbol::eta: return "eta";
    case EventSymbol::beta: return "beta";
    case EventSymbol::rho: return "rho";
    }
    return "sigma";
}

std::string to_string(EventCause c) {
    switch (c) {
    case EventCause::internal: return "internal";
    case EventCause::external_excitatory: return "external_excitatory";
    case EventCause::external_inhibitory: return "external_inhibitory";
    }
    return "internal";
}

std::string Event::token() const {
    std::string out;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (i) out += "+";
        out += labels[i].token();
    }
    return out;
}

void validate(const ExtractionConfig& c) {
    if (!(c.rest_band > 0.0)) throw validation_error("extraction: rest_band must be > 0");
    if (!(c.rest_dwell > 0.0)) throw validation_error("extraction: rest_dwell must be > 0");
    if (!(c.burst_isi > 0.0)) throw validation_error("extraction: burst_isi must be > 0");
    if (c.min_spikes_per_burst < 2)
        throw validation_error("extraction: min_spikes_per_burst must be >= 2");
    if (!(c.attribution_window > 0.0))
        throw validation_error("extraction: attribution_window must be > 0");
    if (!(c.sync_window > 0.0)) throw validation_error("extraction: sync_window must be > 0");
}

std::vector<double> detect_spikes(const std::vector<double>& time, const std::vector<double>& voltage,
                                  const ExtractionConfig& config) {
    if (time.size() != voltage.size()) throw validation_error("trace arrays disagree in length");
    if (time.empty()) throw validation_error("empty voltage trace");
    std::vector<double> out;
    for (std::size_t i = 1; i < voltage.size(); ++i)
        if (voltage[i - 1] <= config.spike_threshold && voltage[i] > config.spike_threshold)
            out.push_back(time[i]);
    return out;
}

std::vector<Episode> group_episodes(const std::vector<double>& spike_times,
                                    const ExtractionConfig& config) {
    std::vector<Episode> out;
    std::size_t i = 0;
    while (i < spike_times.size()) {
        std::size_t j = i;
        while (j + 1 < spike_times.size() && spike_times[j + 1] - spike_times[j] <= config.burst_isi)
            ++j;
        Episode ep;
        ep.onset = spike_times[i];
        ep.offset = spike_times[j];
        ep.spike_count = static_cast<int>(j - i + 1);
        ep.kind = ep.spike_count >= config.min_spikes_per_burst ? EpisodeKind::burst
                                                                : EpisodeKind::spike;
        out.push_back(ep);
        i = j + 1;
    }
    return out;
}

namespace {

// First time after `from` where the voltage enters the rest band and stays
// there for the dwell duration; the stamp is the entry time.
std::optional<double> rest_return_time(const std::vector<double>& time,
                                       const std::vector<double>& v, double v_rest, double from,
                                       const ExtractionConfig& config) {
    const double lo = v_rest - config.rest_band;
    const double hi = v_rest + config.rest_band;
    std::size_t i = 0;
    while (i < time.size() && time[i] <= from) ++i;
    while (i < time.size()) {
        if (v[i] >= lo && v[i] <= hi) {
            std::size_t j = i;
            while (j + 1 < time.size() && v[j + 1] >= lo && v[j + 1] <= hi) ++j;
            if (time[j] - time[i] >= config.rest_dwell) return time[i];
            i = j + 1;
        } else {
            ++i;
        }
    }
    return std::nullopt;
}

EventCause attribute_cause(const StimulusProgram& stimulus, const std::string& neuron, double onset,
                           const ExtractionConfig& config) {
    const auto* pulses = stimulus.pulses_for(neuron);
    if (!pulses) return EventCause::internal;
    bool positive = false, negative = false;
    for (const auto& p : *pulses) {
        const double end = p.start + p.duration;
        if (p.amplitude > 0.0) {
            // active at onset, or ended within the window before it
            const bool active = onset >= p.start && onset <= end;
            const bool recent = end <= onset && onset - end <= config.attribution_window;
            if (active || recent) positive = true;
        } else if (p.amplitude < 0.0) {
            const bool recent = end <= onset && onset - end <= config.attribution_window;
            if (recent) negative = true;
        }
    }
    if (positive && negative)
        throw attribution_error(onset, "ambiguous cause attribution at t = " + std::to_string(onset) +
                                           " ms: pulses of both signs fall in the window");
    if (positive) return EventCause::external_excitatory;
    if (negative) return EventCause::external_inhibitory;
    return EventCause::internal;
}

EventSymbol onset_symbol(BehaviorClass cls, EpisodeKind kind, EventCause cause) {
    switch (cls) {
    case BehaviorClass::excitable: return EventSymbol::sigma;
    case BehaviorClass::rebound_spiking:
        return cause == EventCause::external_excitatory ? EventSymbol::sigma
                                                        : EventSymbol::rho_rebound;
    case BehaviorClass::spiking_rebound_bursting:
        return kind == EpisodeKind::burst ? EventSymbol::beta : EventSymbol::sigma;
    case BehaviorClass::lif: return EventSymbol::sigma;
    }
    return EventSymbol::sigma;
}

EventSymbol return_symbol(BehaviorClass cls, EpisodeKind kind) {
    if (cls == BehaviorClass::spiking_rebound_bursting && kind == EpisodeKind::burst)
        return EventSymbol::rho;
    return EventSymbol::eta;
}

EventCause stronger(EventCause a, EventCause b) {
    auto rank = [](EventCause c) {
        switch (c) {
        case EventCause::external_excitatory: return 2;
        case EventCause::external_inhibitory: return 1;
        case EventCause::internal: return 0;
        }
        return 0;
    };
    return rank(a) >= rank(b) ? a : b;
}

std::uint64_t hash_config(const SimConfig& sim, const ExtractionConfig& ex) {
    std::string s = std::to_string(sim.dt) + "|" + std::to_string(sim.t_end) + "|" +
                    std::to_string(sim.record_stride) + "|" + std::to_string(ex.spike_threshold) +
                    "|" + std::to_string(ex.rest_band) + "|" + std::to_string(ex.rest_dwell) + "|" +
                    std::to_string(ex.burst_isi) + "|" + std::to_string(ex.min_spikes_per_burst) +
                    "|" + std::to_string(ex.attribution_window) + "|" + std::to_string(ex.sync_window);
    return hash_string(s);
}

} // namespace

std::map<std::string, std::vector<Episode>> extract_episodes(const SimulationResult& result,
                                                             const CircuitSpec& circuit,
                                                             const ExtractionConfig& config) {
    validate(config);
    std::map<std::string, std::vector<Episode>> out;
    for (std::size_t i = 0; i < result.neuron_ids.size(); ++i) {
        const std::string& id = result.neuron_ids[i];
        const NeuronSpec* spec = circuit.find_neuron(id);
        if (!spec) throw validation_error("result neuron " + id + " is not in the circuit");
        const auto& v = result.voltage[i];
        const double v_rest = v.front();
        if (config.spike_threshold <= v_rest + config.rest_band)
            throw validation_error("extraction: spike threshold must lie above the rest band of " +
                                   id);
        std::vector<double> spikes = detect_spikes(result.time, v, config);
        std::vector<Episode> eps = group_episodes(spikes, config);
        for (auto& ep : eps) {
            ep.return_time = rest_return_time(result.time, v, v_rest, ep.offset, config);
            ep.cause = attribute_cause(result.stimulus, id, ep.onset, config);
        }
        out[id] = std::move(eps);
    }
    return out;
}

EventTrace extract_trace(const SimulationResult& result, const CircuitSpec& circuit,
                         const ExtractionConfig& config) {
    auto episodes = extract_episodes(result, circuit, config);

    struct RawEvent {
        EventLabel label;
        EventCause cause;
        double time;
        bool onset;            // false for return events
        std::string neuron;
        int episode;
        int merged_into = -1;  // index of the event this onset collapsed into
    };
    std::vector<RawEvent> raw;

    std::map<std::string, BehaviorClass> cls;
    for (const auto& n : circuit.neurons) cls[n.id] = n.behavior_class;

    std::map<std::pair<std::string, int>, int> onset_index;  // (neuron, episode) -> raw index
    std::map<std::pair<std::string, int>, int> return_index;

    EventTrace trace;
    trace.seed = result.seed;
    for (const auto& [id, eps] : episodes) {
        for (std::size_t e = 0; e < eps.size(); ++e) {
            const Episode& ep = eps[e];
            RawEvent onset;
            onset.label = {id, onset_symbol(cls.at(id), ep.kind, ep.cause)};
            onset.cause = ep.cause;
            onset.time = ep.onset;
            onset.onset = true;
            onset.neuron = id;
            onset.episode = static_cast<int>(e);
            onset_index[{id, static_cast<int>(e)}] = static_cast<int>(raw.size());
            raw.push_back(onset);
            if (ep.return_time) {
                RawEvent ret;
                ret.label = {id, return_symbol(cls.at(id), ep.kind)};
                ret.cause = EventCause::internal; // returns to rest are endogenous
                ret.time = *ep.return_time;
                ret.onset = false;
                ret.neuron = id;
                ret.episode = static_cast<int>(e);
                return_index[{id, static_cast<int>(e)}] = static_cast<int>(raw.size());
                raw.push_back(ret);
            } else {
                ++trace.truncated_episodes;
            }
        }
    }

    // Synaptically driven onsets are the same singular event as the
    // presynaptic event that forces them: the return of an inhibiting
    // neuron (rebound at release) or the onset of an exciting neuron.
    std::vector<int> order(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (raw[a].time != raw[b].time) return raw[a].time < raw[b].time;
        return raw[a].neuron < raw[b].neuron;
    });

    auto representative = [&](int idx) {
        while (raw[idx].merged_into >= 0) idx = raw[idx].merged_into;
        return idx;
    };

    for (int idx : order) {
        RawEvent& ev = raw[idx];
        if (!ev.onset || ev.cause != EventCause::internal) continue;
        int best = -1;
        double best_gap = config.sync_window + 1.0;
        for (const auto& syn : circuit.synapses) {
            if (syn.post != ev.neuron) continue;
            const auto& pre_eps = episodes.at(syn.pre);
            for (std::size_t e = 0; e < pre_eps.size(); ++e) {
                int cand = -1;
                double t_cand = 0.0;
                if (syn.kind == SynapseKind::inhibitory) {
                    auto it = return_index.find({syn.pre, static_cast<int>(e)});
                    if (it == return_index.end()) continue;
                    cand = it->second;
                    t_cand = raw[cand].time;
                } else {
                    cand = onset_index.at({syn.pre, static_cast<int>(e)});
                    t_cand = raw[cand].time;
                }
                const double gap = std::abs(t_cand - ev.time);
                if (gap <= config.sync_window && gap < best_gap) {
                    best_gap = gap;
                    best = cand;
                }
            }
        }
        if (best >= 0) {
            int rep = representative(best);
            if (rep != idx) {
                ev.merged_into = rep;
                raw[rep].time = std::min(raw[rep].time, ev.time);
            }
        }
    }

    // Surviving events, time-sorted; events on the same recorded step fuse
    // into one composite event.
    std::vector<int> survivors;
    for (std::size_t i = 0; i < raw.size(); ++i)
        if (raw[i].merged_into < 0) survivors.push_back(static_cast<int>(i));
    std::sort(survivors.begin(), survivors.end(), [&](int a, int b) {
        if (raw[a].time != raw[b].time) return raw[a].time < raw[b].time;
        if (raw[a].neuron != raw[b].neuron) return raw[a].neuron < raw[b].neuron;
        return raw[a].onset && !raw[b].onset;
    });

    const double step = result.time.size() > 1 ? result.time[1] - result.time[0] : 1.0;
    for (int idx : survivors) {
        const RawEvent& ev = raw[idx];
        if (!trace.events.empty() && std::abs(trace.events.back().time - ev.time) < 0.5 * step) {
            trace.events.back().labels.push_back(ev.label);
            trace.events.back().cause = stronger(trace.events.back().cause, ev.cause);
        } else {
            Event out;
            out.labels = {ev.label};
            out.cause = ev.cause;
            out.time = ev.time;
            trace.events.push_back(out);
        }
    }
    trace.config_hash = hash_config(result.config, config);
    return trace;
}

std::vector<std::string> untime(const EventTrace& trace) {
    std::vector<std::string> out;
    out.reserve(trace.events.size());
    for (const auto& ev : trace.events) out.push_back(ev.token());
    return out;
}

std::vector<std::string> winner_sequence(const SimulationResult& result, const CircuitSpec& circuit,
                                         const ExtractionConfig& config) {
    auto episodes = extract_episodes(result, circuit, config);
    std::vector<std::pair<double, std::string>> onsets;
    for (const auto& [id, eps] : episodes)
        for (const auto& ep : eps) onsets.push_back({ep.onset, id});
    std::sort(onsets.begin(), onsets.end());
    std::vector<std::string> out;
    for (const auto& [t, id] : onsets) out.push_back(id);
    return out;
}

int max_simultaneously_above(const SimulationResult& result, double threshold) {
    int best = 0;
    if (result.voltage.empty()) return 0;
    const std::size_t samples = result.time.size();
    for (std::size_t s = 0; s < samples; ++s) {
        int count = 0;
        for (const auto& v : result.voltage)
            if (v[s] > threshold) ++count;
        best = std::max(best, count);
    }
    return best;
}

} // namespace neurodes
