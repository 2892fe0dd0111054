#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "neurodes/circuit.hpp"
#include "neurodes/simulate.hpp"

namespace neurodes {

enum class EventSymbol {
    sigma,       // excitatory-triggered spike onset
    rho_rebound, // rebound spike onset
    eta,         // return to rest after spiking
    beta,        // rebound burst onset
    rho,         // return to rest after bursting
};

std::string to_string(EventSymbol s);

enum class EventCause { internal, external_excitatory, external_inhibitory };

std::string to_string(EventCause c);

struct EventLabel {
    std::string neuron;
    EventSymbol symbol = EventSymbol::sigma;

    /// ASCII token, e.g. "sigma1", "rho_rebound2".
    std::string token() const { return to_string(symbol) + neuron; }

    friend bool operator==(const EventLabel&, const EventLabel&) = default;
};

/// One trace event. Simultaneous events are merged into a single composite
/// event carrying several labels.
struct Event {
    std::vector<EventLabel> labels;
    EventCause cause = EventCause::internal;
    double time = 0.0; // ms

    std::string token() const;
};

struct EventTrace {
    std::vector<Event> events;
    std::uint64_t seed = 0;
    std::uint64_t config_hash = 0;
    int truncated_episodes = 0; // episodes cut off by t_end (onset without return)
};

struct ExtractionConfig {
    double spike_threshold = 0.0;      // mV, upward crossing
    double rest_band = 3.0;            // mV around the resting voltage
    double rest_dwell = 10.0;          // ms the trace must stay in the band
    double burst_isi = 30.0;           // ms, max gap inside a burst
    int min_spikes_per_burst = 2;
    double attribution_window = 15.0;  // ms, pulse-to-onset attribution
    double sync_window = 100.0;        // ms, synaptic cause identification
};

void validate(const ExtractionConfig& c);

enum class EpisodeKind { spike, burst };

struct Episode {
    EpisodeKind kind = EpisodeKind::spike;
    double onset = 0.0;   // first spike time
    double offset = 0.0;  // last spike time
    int spike_count = 0;
    std::optional<double> return_time; // rest-band entry after the episode
    EventCause cause = EventCause::internal;
};

/// Times of upward threshold crossings, stamped on the recording grid.
std::vector<double> detect_spikes(const std::vector<double>& time, const std::vector<double>& voltage,
                                  const ExtractionConfig& config);

/// Groups sorted spike times into SPIKE/BURST episodes.
std::vector<Episode> group_episodes(const std::vector<double>& spike_times,
                                    const ExtractionConfig& config);

/// Episode decomposition of every neuron in a result, including return
/// times and input-log cause attribution.
std::map<std::string, std::vector<Episode>> extract_episodes(const SimulationResult& result,
                                                             const CircuitSpec& circuit,
                                                             const ExtractionConfig& config);

/// Full event trace: onset and return events per episode, causes from the
/// stimulus log, synaptically driven onsets identified with the events that
/// force them, and simultaneous events merged.
EventTrace extract_trace(const SimulationResult& result, const CircuitSpec& circuit,
                         const ExtractionConfig& config);

/// Drops timestamps and causes; one token per event.
std::vector<std::string> untime(const EventTrace& trace);

/// Episode onsets across neurons in time order; the activity handoff
/// sequence of a winner-take-all run.
std::vector<std::string> winner_sequence(const SimulationResult& result, const CircuitSpec& circuit,
                                         const ExtractionConfig& config);

/// Largest number of neurons simultaneously above the threshold in any
/// recorded sample.
int max_simultaneously_above(const SimulationResult& result, double threshold);

} // namespace neurodes
