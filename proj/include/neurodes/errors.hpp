#pragma once

#include <stdexcept>
#include <string>

namespace neurodes {

/// Base class for all library errors.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Invalid specification, configuration, or input file.
struct validation_error : error {
    using error::error;
};

/// Numerical integration produced a non-finite state.
struct divergence_error : error {
    divergence_error(const std::string& neuron, double time_ms, const std::string& what)
        : error(what), neuron_id(neuron), time(time_ms) {}
    std::string neuron_id;
    double time;
};

/// Event kinds disagree on a shared symbol during composition.
struct composition_error : error {
    using error::error;
};

/// Synapse rewriting applied to a template without rewritable structure.
struct rewrite_error : error {
    using error::error;
};

/// Topology outside the supported construction rules.
struct unsupported_topology_error : error {
    using error::error;
};

/// Both pulse signs fall inside one attribution window.
struct attribution_error : error {
    attribution_error(double time_ms, const std::string& what) : error(what), time(time_ms) {}
    double time;
};

/// Relaxation failed to reach a resting equilibrium.
struct equilibrium_error : error {
    using error::error;
};

} // namespace neurodes
