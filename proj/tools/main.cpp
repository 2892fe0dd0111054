// Command-line front end: simulation, event extraction, DES construction,
// conformance checking, and realization, with reproducible file outputs.
//
// Exit codes: 0 ok, 2 input/validation error, 3 conformance violation.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "neurodes/automaton.hpp"
#include "neurodes/des_builder.hpp"
#include "neurodes/errors.hpp"
#include "neurodes/events.hpp"
#include "neurodes/io.hpp"
#include "neurodes/profiles.hpp"
#include "neurodes/realization.hpp"
#include "neurodes/simulate.hpp"
#include "neurodes/trials.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace neurodes;

namespace {

constexpr const char* kVersion = "0.1.0";

struct CommonOpts {
    std::string out = ".";
    std::optional<double> dt;
    std::optional<double> t_end;
    std::optional<std::uint64_t> seed;
    bool plot = false;
    int trials = 1;
    std::string stimuli_file;
};

std::vector<std::string> g_argv;

struct Manifest {
    std::string subcommand;
    json inputs = json::object();
    json config = json::object();
    std::vector<std::string> outputs;

    void add_input(const std::string& label, const std::string& path, const std::string& content) {
        inputs[label] = {{"path", path}, {"sha256", sha256_hex(content)}};
    }

    void write(const std::string& out_dir) {
        json j;
        j["tool"] = "neurodes";
        j["version"] = kVersion;
        j["subcommand"] = subcommand;
        j["argv"] = g_argv;
        j["inputs"] = inputs;
        j["config"] = config;
        j["outputs"] = outputs;
        write_file((fs::path(out_dir) / "manifest.json").string(), j.dump(2) + "\n");
    }
};

void ensure_out(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw validation_error("cannot create output directory " + dir);
}

void emit(Manifest& m, const std::string& out_dir, const std::string& name,
          const std::string& content) {
    write_file((fs::path(out_dir) / name).string(), content);
    m.outputs.push_back(name);
}

SimulationBundle load_bundle(const CommonOpts& opts, const std::string& path, Manifest& m) {
    std::string text = read_file(path);
    m.add_input("bundle", path, text);
    SimulationBundle b = parse_bundle_json(text);
    if (!opts.stimuli_file.empty()) {
        std::string stext = read_file(opts.stimuli_file);
        m.add_input("stimuli", opts.stimuli_file, stext);
        SimulationBundle override_doc = parse_bundle_json(stext);
        b.stimulus = override_doc.stimulus;
        validate(b.stimulus, b.circuit);
    }
    if (opts.dt) b.config.dt = *opts.dt;
    if (opts.t_end) b.config.t_end = *opts.t_end;
    if (opts.seed) b.config.seed = *opts.seed;
    validate(b.config);
    m.config = {{"dt", b.config.dt},
                {"t_end", b.config.t_end},
                {"seed", b.config.seed},
                {"record_stride", b.config.record_stride},
                {"trials", opts.trials}};
    return b;
}

Automaton load_automaton(const std::string& path, const std::string& label, Manifest& m) {
    std::string text = read_file(path);
    m.add_input(label, path, text);
    return parse_automaton_json(text);
}

std::string trial_suffix(int trials, std::size_t t) {
    if (trials <= 1) return "";
    char buf[16];
    std::snprintf(buf, sizeof(buf), "_%03zu", t);
    return buf;
}

int cmd_simulate(const CommonOpts& opts, const std::string& bundle_path) {
    ensure_out(opts.out);
    Manifest m;
    m.subcommand = "simulate";
    SimulationBundle b = load_bundle(opts, bundle_path, m);
    std::vector<SimulationResult> results =
        simulate_batch(b.circuit, b.stimulus, b.config, static_cast<std::size_t>(opts.trials),
                       BatchPolicy::parallel);
    for (std::size_t t = 0; t < results.size(); ++t) {
        const std::string suffix = trial_suffix(opts.trials, t);
        emit(m, opts.out, "trace" + suffix + ".csv", trace_to_csv(results[t]));
        if (opts.plot) emit(m, opts.out, "plot" + suffix + ".svg", trace_to_svg(results[t]));
    }
    m.write(opts.out);
    return 0;
}

int cmd_extract(const CommonOpts& opts, const std::string& bundle_path) {
    ensure_out(opts.out);
    Manifest m;
    m.subcommand = "extract";
    SimulationBundle b = load_bundle(opts, bundle_path, m);
    ExtractionConfig ex;
    std::vector<SimulationResult> results =
        simulate_batch(b.circuit, b.stimulus, b.config, static_cast<std::size_t>(opts.trials),
                       BatchPolicy::parallel);
    for (std::size_t t = 0; t < results.size(); ++t) {
        const std::string suffix = trial_suffix(opts.trials, t);
        EventTrace trace = extract_trace(results[t], b.circuit, ex);
        emit(m, opts.out, "events" + suffix + ".csv", events_to_csv(trace));
        emit(m, opts.out, "untimed" + suffix + ".txt", untimed_to_text(untime(trace)));
    }
    m.write(opts.out);
    return 0;
}

int cmd_check(const CommonOpts& opts, const std::string& bundle_path) {
    ensure_out(opts.out);
    Manifest m;
    m.subcommand = "check";
    SimulationBundle b = load_bundle(opts, bundle_path, m);
    SimulationResult result = simulate(b.circuit, b.stimulus, b.config);
    ExtractionConfig ex;
    EventTrace trace = extract_trace(result, b.circuit, ex);
    std::vector<std::string> untimed = untime(trace);

    NetworkTopology topo = topology_from_circuit(b.circuit, b.stimulus);
    Automaton des = build_network_des(topo);
    std::size_t prefix = accepted_prefix_length(des, untimed);
    const bool conform = prefix == untimed.size();

    json report;
    report["conform"] = conform;
    report["untimed"] = untimed;
    report["accepted_prefix_length"] = prefix;
    if (!conform) {
        std::vector<std::string> failing(untimed.begin(),
                                         untimed.begin() + static_cast<std::ptrdiff_t>(prefix) + 1);
        report["failing_prefix"] = failing;
    }
    emit(m, opts.out, "report.json", report.dump(2) + "\n");
    emit(m, opts.out, "events.csv", events_to_csv(trace));
    emit(m, opts.out, "untimed.txt", untimed_to_text(untimed));
    emit(m, opts.out, "automaton.json", automaton_to_json(des));
    m.write(opts.out);
    if (conform) {
        std::cout << "conform\n";
        return 0;
    }
    std::cout << "violation after " << prefix << " events";
    if (prefix < untimed.size()) std::cout << " at \"" << untimed[prefix] << "\"";
    std::cout << "\n";
    return 3;
}

int emit_automaton(Manifest& m, const CommonOpts& opts, const Automaton& a) {
    emit(m, opts.out, "automaton.json", automaton_to_json(a));
    emit(m, opts.out, "automaton.dot", automaton_to_dot(a));
    m.write(opts.out);
    return 0;
}

int cmd_build_des(const CommonOpts& opts, const std::string& topology_path) {
    ensure_out(opts.out);
    Manifest m;
    m.subcommand = "build-des";
    std::string text = read_file(topology_path);
    m.add_input("topology", topology_path, text);
    NetworkTopology topo = parse_topology_json(text);
    return emit_automaton(m, opts, build_network_des(topo));
}

int cmd_compose(const CommonOpts& opts, const std::string& a_path, const std::string& b_path) {
    ensure_out(opts.out);
    Manifest m;
    m.subcommand = "compose";
    Automaton a = load_automaton(a_path, "a", m);
    Automaton b = load_automaton(b_path, "b", m);
    return emit_automaton(m, opts, compose(a, b));
}

std::vector<std::pair<std::string, std::string>> parse_edges(const std::vector<std::string>& raw) {
    std::vector<std::pair<std::string, std::string>> edges;
    for (const auto& e : raw) {
        auto colon = e.find(':');
        if (colon == std::string::npos)
            throw validation_error("edge must be written src:dst, got \"" + e + "\"");
        edges.push_back({e.substr(0, colon), e.substr(colon + 1)});
    }
    return edges;
}

int cmd_wta(const CommonOpts& opts, int n) {
    ensure_out(opts.out);
    Manifest m;
    m.subcommand = "wta";
    m.config = {{"n", n}};
    WTAParams params;
    params.n = n;
    return emit_automaton(m, opts, wta_automaton(params));
}

int cmd_restrict(const CommonOpts& opts, const std::string& path,
                 const std::vector<std::string>& raw) {
    ensure_out(opts.out);
    Manifest m;
    m.subcommand = "restrict";
    Automaton a = load_automaton(path, "automaton", m);
    m.config = {{"edges", raw}};
    return emit_automaton(m, opts, apply_excitatory_restriction(a, parse_edges(raw)));
}

json plan_to_json(const RealizationPlan& plan, const Automaton& a) {
    json state_map = json::object();
    for (const auto& [state, neuron] : plan.state_to_neuron) state_map[state] = neuron;
    json synapses = json::array();
    for (std::size_t i = 0; i < plan.transition_synapse.size(); ++i) {
        const Transition& t = a.transitions[i];
        const SynapseSpec& s = plan.circuit.synapses[plan.transition_synapse[i]];
        synapses.push_back({{"src_state", t.src},
                            {"event", t.event},
                            {"dst_state", t.dst},
                            {"pre", s.pre},
                            {"post", s.post}});
    }
    SimulationBundle bundle;
    bundle.circuit = plan.circuit;
    json circuit = json::parse(bundle_to_json(bundle));
    return json{{"state_map", state_map}, {"synapses", synapses}, {"circuit", circuit}};
}

int cmd_realize(const CommonOpts& opts, const std::string& path) {
    ensure_out(opts.out);
    Manifest m;
    m.subcommand = "realize";
    Automaton a = load_automaton(path, "automaton", m);
    profiles::RealizationProfile profile = profiles::realization_profile();
    RealizationPlan plan = realize(a, profile);
    emit(m, opts.out, "plan.json", plan_to_json(plan, a).dump(2) + "\n");

    // ready-to-simulate bundle: the realized circuit plus the initiating kick
    SimulationBundle bundle;
    bundle.circuit = plan.circuit;
    bundle.stimulus.at(plan.neuron_of(a.initial))
        .push_back({profile.kick_time, profile.kick_duration, profile.kick_amplitude});
    bundle.config.dt = profile.dt;
    bundle.config.t_end = profile.t_end;
    bundle.config.seed = opts.seed.value_or(0);
    emit(m, opts.out, "bundle.json", bundle_to_json(bundle));
    m.write(opts.out);
    return 0;
}

int cmd_round_trip(const CommonOpts& opts, const std::string& path) {
    ensure_out(opts.out);
    Manifest m;
    m.subcommand = "round-trip";
    Automaton a = load_automaton(path, "automaton", m);
    RoundTripVerdict verdict = round_trip_check(a);
    json report;
    report["pass"] = verdict.pass;
    if (!verdict.pass) report["witness"] = verdict.witness;
    emit(m, opts.out, "report.json", report.dump(2) + "\n");
    m.write(opts.out);
    if (verdict.pass) {
        std::cout << "pass\n";
        return 0;
    }
    std::cout << "fail: " << verdict.witness << "\n";
    return 3;
}

int cmd_export_dot(const CommonOpts& opts, const std::string& path) {
    ensure_out(opts.out);
    Manifest m;
    m.subcommand = "export-dot";
    Automaton a = load_automaton(path, "automaton", m);
    emit(m, opts.out, "automaton.dot", automaton_to_dot(a));
    m.write(opts.out);
    return 0;
}

void add_common(CLI::App* cmd, CommonOpts& opts, bool sim_flags) {
    cmd->add_option("--out", opts.out, "output directory (default: current)");
    if (sim_flags) {
        cmd->add_option("--dt", opts.dt, "integration step, ms");
        cmd->add_option("--t-end", opts.t_end, "simulated time, ms");
        cmd->add_option("--seed", opts.seed, "random seed");
        cmd->add_option("--stimuli", opts.stimuli_file, "replace the bundle's stimuli");
        cmd->add_option("--trials", opts.trials, "number of seeded runs")->check(CLI::PositiveNumber);
        cmd->add_flag("--plot", opts.plot, "write an SVG voltage plot");
    }
}

} // namespace

int main(int argc, char** argv) {
    for (int i = 0; i < argc; ++i) g_argv.push_back(argv[i]);

    CLI::App app{"conductance-based neuromorphic circuits and their discrete-event models"};
    app.require_subcommand(1);

    CommonOpts opts;
    std::string bundle_path, a_path, b_path, topo_path;
    std::vector<std::string> edges;
    int wta_n = 3;

    auto* sim = app.add_subcommand("simulate", "integrate a circuit bundle and write trace CSV");
    sim->add_option("bundle", bundle_path, "circuit+stimulus JSON document")->required();
    add_common(sim, opts, true);

    auto* ext = app.add_subcommand("extract", "simulate and extract the event trace");
    ext->add_option("bundle", bundle_path)->required();
    add_common(ext, opts, true);

    auto* chk = app.add_subcommand("check", "simulate, extract, and check conformance to the DES");
    chk->add_option("bundle", bundle_path)->required();
    add_common(chk, opts, true);

    auto* bd = app.add_subcommand("build-des", "construct the network automaton from a topology");
    bd->add_option("topology", topo_path)->required();
    add_common(bd, opts, false);

    auto* comp = app.add_subcommand("compose", "parallel composition of two automata");
    comp->add_option("a", a_path)->required();
    comp->add_option("b", b_path)->required();
    add_common(comp, opts, false);

    auto* wta = app.add_subcommand("wta", "winner-take-all automaton for N neurons");
    wta->add_option("--n", wta_n, "number of neurons")->required();
    add_common(wta, opts, false);

    auto* rst = app.add_subcommand("restrict", "excitatory ordering restriction on a WTA automaton");
    rst->add_option("automaton", a_path)->required();
    rst->add_option("--edge", edges, "designated internal edge, src:dst")->required();
    add_common(rst, opts, false);

    auto* rlz = app.add_subcommand("realize", "compile an automaton into a WTA circuit");
    rlz->add_option("automaton", a_path)->required();
    rlz->add_option("--seed", opts.seed, "seed stored in the generated bundle");
    add_common(rlz, opts, false);

    auto* rt = app.add_subcommand("round-trip", "verify the realization against the automaton");
    rt->add_option("automaton", a_path)->required();
    add_common(rt, opts, false);

    auto* dot = app.add_subcommand("export-dot", "DOT rendering of an automaton");
    dot->add_option("automaton", a_path)->required();
    add_common(dot, opts, false);

    CLI11_PARSE(app, argc, argv);

    try {
        if (sim->parsed()) return cmd_simulate(opts, bundle_path);
        if (ext->parsed()) return cmd_extract(opts, bundle_path);
        if (chk->parsed()) return cmd_check(opts, bundle_path);
        if (bd->parsed()) return cmd_build_des(opts, topo_path);
        if (comp->parsed()) return cmd_compose(opts, a_path, b_path);
        if (wta->parsed()) return cmd_wta(opts, wta_n);
        if (rst->parsed()) return cmd_restrict(opts, a_path, edges);
        if (rlz->parsed()) return cmd_realize(opts, a_path);
        if (rt->parsed()) return cmd_round_trip(opts, a_path);
        if (dot->parsed()) return cmd_export_dot(opts, a_path);
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
