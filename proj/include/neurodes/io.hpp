#pragma once

#include <string>
#include <vector>

#include "neurodes/automaton.hpp"
#include "neurodes/circuit.hpp"
#include "neurodes/des_builder.hpp"
#include "neurodes/events.hpp"
#include "neurodes/simulate.hpp"

namespace neurodes {

/// One simulation input document: circuit, stimulus program, run config.
struct SimulationBundle {
    CircuitSpec circuit;
    StimulusProgram stimulus;
    SimConfig config;
};

// Parsers reject unknown keys and report the JSON path of the offence;
// syntax errors carry line:column positions.
SimulationBundle parse_bundle_json(const std::string& text);
std::string bundle_to_json(const SimulationBundle& bundle);

NeuronSpec parse_neuron_json(const std::string& text);
SynapseSpec parse_synapse_json(const std::string& text);

Automaton parse_automaton_json(const std::string& text);
std::string automaton_to_json(const Automaton& a);

NetworkTopology parse_topology_json(const std::string& text);
std::string topology_to_json(const NetworkTopology& t);

/// DOT rendering: internal edges solid; external-excitatory dashed with a
/// square tail marker; external-inhibitory dashed with a circle tail marker.
std::string automaton_to_dot(const Automaton& a);

/// CSV with header t,neuron_id,v,i_ext; one row per (sample, neuron).
std::string trace_to_csv(const SimulationResult& result);

/// CSV with header time_ms,neuron,symbol,cause.
std::string events_to_csv(const EventTrace& trace);

/// Whitespace-separated untimed tokens, newline terminated.
std::string untimed_to_text(const std::vector<std::string>& tokens);

/// Minimal SVG line plot of all voltage traces.
std::string trace_to_svg(const SimulationResult& result);

std::string sha256_hex(const std::string& data);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

} // namespace neurodes
