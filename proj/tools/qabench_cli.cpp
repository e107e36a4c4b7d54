// Copyright 2026 The qabench Authors
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//        http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.

// qabench: generate, solve, encode, benchmark and report on Ising instances.
//
// Exit codes: 0 success, 1 every item failed, 2 usage or parameter error,
// 3 input-format error.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qabench/bench.hpp"
#include "qabench/instances.hpp"
#include "qabench/io.hpp"
#include "qabench/qac.hpp"
#include "qabench/quantum_sim.hpp"
#include "qabench/solvers.hpp"
#include "qabench/topology.hpp"

namespace {

using namespace qabench;
using json = nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitAllFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitFormat = 3;

// Input files that cannot be opened count as input-format errors.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

IsingInstance load_instance(const std::string& path) {
    if (!std::filesystem::exists(path)) {
        throw InputError("cannot open " + path);
    }
    return read_instance(path);
}

json load_json(const std::string& path) {
    if (!std::filesystem::exists(path)) {
        throw InputError("cannot open " + path);
    }
    try {
        return json::parse(read_text_file(path));
    } catch (const json::exception& e) {
        throw FormatError(path + ": " + e.what());
    }
}

void write_json(const std::string& path, const json& j) {
    write_text_file(path, j.dump(2) + "\n");
}

std::string csv_of(const auto& writer) {
    std::ostringstream out;
    writer(out);
    return out.str();
}

// ---- gen --------------------------------------------------------------

struct GenOptions {
    std::string family;
    int grid = 2;
    int k = 1;
    int n_core = 4;
    double hl = 0.25;
    double alpha = 0.25;
    double cap = 1.0;
    std::uint64_t seed = 0;
    std::vector<int> inactive;
    bool reject_range = false;
    std::string out;
};

int run_gen(const GenOptions& o) {
    IsingInstance inst;
    const auto graph = [&] { return build_chimera(o.grid, std::set<int>(o.inactive.begin(), o.inactive.end())); };
    json params = {{"family", o.family}};
    if (o.family == "random_pm1") {
        inst = gen_random_pm1(graph(), o.seed);
        params["grid"] = o.grid;
    } else if (o.family == "range_k") {
        inst = gen_range_k(graph(), o.k, o.seed);
        params["grid"] = o.grid;
        params["k"] = o.k;
    } else if (o.family == "signature") {
        inst = gen_signature(o.n_core);
        params["n_core"] = o.n_core;
    } else if (o.family == "weak_strong") {
        inst = gen_weak_strong(o.hl);
        params["hl"] = o.hl;
    } else if (o.family == "frustrated_loops") {
        FrustratedLoopOptions fl;
        fl.loop_density = o.alpha;
        fl.coupler_cap = o.cap;
        fl.seed = o.seed;
        inst = gen_frustrated_loops(graph(), fl);
        params["grid"] = o.grid;
        params["alpha"] = o.alpha;
        params["cap"] = o.cap;
    } else {
        throw InvalidArgument("unknown family '" + o.family + "'");
    }
    params["inactive_qubits"] = o.inactive;
    inst.metadata["cli"] = {{"command", "gen"}, {"version", kVersion}, {"seed", o.seed}, {"parameters", params}};
    write_instance(o.out, inst, o.reject_range ? RangePolicy::Reject : RangePolicy::Renormalize);
    return kExitOk;
}

// ---- solve ------------------------------------------------------------

struct SolveOptions {
    std::string instance;
    std::string solver = "sa";
    std::string out;
    std::string config_path;
    std::string schedule_path;
    std::uint64_t seed = 0;
    int sweeps = -1;
    int reps = -1;
    double beta_initial = -1;
    double beta_final = -1;
    double temperature = -1;
    double beta = -1;
    int slices = -1;
    std::string readout;
    int readout_slice = -1;
    std::string sweep_order;
    std::vector<double> ladder;
    bool timing = false;
};

SolverConfig build_config(const SolveOptions& o) {
    SolverConfig c;
    if (!o.config_path.empty()) {
        c = solver_config_from_json(load_json(o.config_path));
    }
    c.seed = o.seed;
    if (o.sweeps >= 0) c.sweeps = o.sweeps;
    if (o.reps >= 0) c.repetitions = o.reps;
    if (o.beta_initial >= 0) c.beta_initial = o.beta_initial;
    if (o.beta_final >= 0) c.beta_final = o.beta_final;
    if (o.temperature >= 0) c.temperature = o.temperature;
    if (o.beta >= 0) c.beta = o.beta;
    if (o.slices >= 0) c.trotter_slices = o.slices;
    if (!o.readout.empty()) {
        if (o.readout != "fixed" && o.readout != "best") {
            throw InvalidArgument("--readout must be 'fixed' or 'best'");
        }
        c.readout = o.readout == "best" ? SliceReadout::Best : SliceReadout::Fixed;
    }
    if (o.readout_slice >= 0) c.readout_slice = o.readout_slice;
    if (!o.sweep_order.empty()) {
        if (o.sweep_order != "random" && o.sweep_order != "sequential") {
            throw InvalidArgument("--sweep-order must be 'random' or 'sequential'");
        }
        c.sweep_order = o.sweep_order == "random" ? SweepOrder::Random : SweepOrder::Sequential;
    }
    if (!o.ladder.empty()) c.ladder = o.ladder;
    c.validate();
    return c;
}

Schedule load_schedule_option(const std::string& path) {
    if (path.empty()) {
        return default_schedule();
    }
    if (!std::filesystem::exists(path)) {
        throw InputError("cannot open " + path);
    }
    return load_schedule_file(path);
}

int run_solve(const SolveOptions& o) {
    const IsingInstance inst = load_instance(o.instance);
    json sidecar = {{"version", kVersion}, {"command", "solve"}, {"instance", o.instance}, {"solver", o.solver},
                    {"seed", o.seed}};
    SampleSet samples;
    if (o.solver == "exact") {
        const ExactResult exact = solve_exact(inst);
        samples.solver_id = "exact";
        for (const auto& s : exact.ground_states) {
            samples.states.push_back(s);
            samples.energies.push_back(exact.ground_energy);
        }
        sidecar["ground_energy"] = exact.ground_energy;
        sidecar["degeneracy"] = exact.ground_states.size();
    } else {
        const Schedule schedule = load_schedule_option(o.schedule_path);
        const SolverConfig config = build_config(o);
        samples = solver_by_name(o.solver, schedule)(inst, config);
        sidecar["config"] = to_json(config);
        sidecar["schedule"] = o.schedule_path.empty() ? json("default") : json(o.schedule_path);
        sidecar["samples"] = sample_set_sidecar(samples);
        sidecar["min_energy"] = *std::min_element(samples.energies.begin(), samples.energies.end());
    }
    sidecar["timing"] = o.timing;
    write_text_file(o.out, csv_of([&](std::ostream& out) { write_samples_csv(out, samples, o.timing); }));
    write_json(o.out + ".json", sidecar);
    return kExitOk;
}

// ---- encode -----------------------------------------------------------

struct EncodeOptions {
    std::string scheme;
    std::string instance;
    std::string out;
    double alpha = 1.0;
    double beta = 0.0;
    std::string penalty_mode = "uniform";
    std::string layout = "linear";
    int grid = 0;
    int c = 2;
    double gamma = 0.0;
    double field_boost = std::nan("");
    double chain_strength = 0.0;
    std::uint64_t seed = 0;
};

int run_encode(const EncodeOptions& o) {
    const IsingInstance logical = load_instance(o.instance);
    IsingInstance physical;
    json params;
    if (o.scheme == "qac") {
        if (o.penalty_mode != "uniform" && o.penalty_mode != "scaled_to_mean") {
            throw InvalidArgument("--penalty-mode must be 'uniform' or 'scaled_to_mean'");
        }
        QacCode code;
        std::optional<HardwareGraph> graph;
        if (o.layout == "linear") {
            code = qac_linear_code(logical.n, o.alpha, o.beta);
        } else if (o.layout == "chimera") {
            graph = build_chimera(o.grid);
            code = qac_chimera_code(*graph, o.alpha, o.beta);
        } else {
            throw InvalidArgument("--layout must be 'linear' or 'chimera'");
        }
        code.penalty_mode = o.penalty_mode == "uniform" ? PenaltyMode::Uniform : PenaltyMode::ScaledToMean;
        physical = qac_encode(logical, code, graph ? &*graph : nullptr);
        params = {{"alpha", o.alpha}, {"beta", o.beta}, {"penalty_mode", o.penalty_mode}, {"layout", o.layout},
                  {"grid", o.grid}};
    } else if (o.scheme == "nqac") {
        NestedCode code;
        code.N = logical.n;
        code.C = o.c;
        code.gamma = o.gamma;
        if (!std::isnan(o.field_boost)) {
            code.field_boost = o.field_boost;
        }
        physical = o.grid > 0 ? nqac_encode_embedded(logical, code, build_chimera(o.grid), o.chain_strength)
                              : nqac_encode(logical, code);
        params = {{"c", o.c}, {"gamma", o.gamma}, {"field_boost", code.boost()}, {"grid", o.grid},
                  {"chain_strength", o.chain_strength}};
    } else {
        throw InvalidArgument("unknown code '" + o.scheme + "'");
    }
    physical.metadata["cli"] = {{"command", "encode"}, {"version", kVersion}, {"scheme", o.scheme},
                                {"seed", o.seed},      {"logical", o.instance}, {"parameters", params}};
    write_instance(o.out, physical, RangePolicy::Renormalize);
    return kExitOk;
}

// ---- bench ------------------------------------------------------------

struct BenchItem {
    std::string path;
    std::string logical_path;
    std::optional<double> size;
};

std::vector<BenchItem> manifest_items(const json& m) {
    std::vector<BenchItem> items;
    for (const auto& e : m.at("instances")) {
        BenchItem item;
        if (e.is_string()) {
            item.path = e.get<std::string>();
        } else {
            item.path = e.at("path").get<std::string>();
            item.logical_path = e.value("logical", std::string());
            if (e.contains("size")) {
                item.size = e.at("size").get<double>();
            }
        }
        items.push_back(std::move(item));
    }
    if (items.empty()) {
        throw InvalidArgument("manifest lists no instances");
    }
    return items;
}

std::string resolve(const std::filesystem::path& base, const std::string& p) {
    const std::filesystem::path path(p);
    return path.is_absolute() ? p : (base / path).string();
}

double ground_energy_of(const IsingInstance& inst) {
    if (inst.ground_energy) {
        return *inst.ground_energy;
    }
    if (inst.n > 64) {
        throw InvalidArgument("no ground energy recorded and n > 64");
    }
    return exact_ground_energy(inst).ground_energy;
}

// Per-repetition 0/1 hits for one instance at one axis point.
using HitFn = std::function<std::vector<double>(std::size_t axis_index, int sweeps, std::uint64_t seed)>;

HitFn stub_hits(const json& stub, int repetitions) {
    const auto success = stub.at("success").get<std::vector<double>>();
    for (double p : success) {
        if (!(p >= 0 && p <= 1)) {
            throw InvalidArgument("stub success probabilities must lie in [0, 1]");
        }
    }
    return [success, repetitions](std::size_t a, int, std::uint64_t seed) {
        if (a >= success.size()) {
            throw InvalidArgument("stub success list is shorter than the axis grid");
        }
        std::vector<double> hits(static_cast<std::size_t>(repetitions));
        Rng rng = make_stream(seed, 0);
        for (auto& h : hits) {
            h = uniform01(rng) < success[a] ? 1.0 : 0.0;
        }
        return hits;
    };
}

HitFn solver_hits(const IsingInstance& physical, const std::optional<IsingInstance>& logical, const json& decode,
                  const Solver& solver, SolverConfig config, int gauges, std::uint64_t master) {
    std::optional<DecodeStrategy> strategy;
    if (!decode.is_null()) {
        const auto name = decode.value("strategy", std::string("majority"));
        if (name != "majority" && name != "energy_min") {
            throw InvalidArgument("decode strategy must be 'majority' or 'energy_min'");
        }
        strategy = name == "majority" ? DecodeStrategy::Majority : DecodeStrategy::EnergyMin;
        if (!logical) {
            throw InvalidArgument("decoding needs a 'logical' instance path");
        }
        if (physical.code.is_null()) {
            throw InvalidArgument("decoding needs an instance with a code block");
        }
    }
    const double target = strategy ? ground_energy_of(*logical) : ground_energy_of(physical);
    return [=](std::size_t a, int sweeps, std::uint64_t seed) {
        SolverConfig c = config;
        c.sweeps = sweeps;
        c.seed = seed;
        const auto avg = gauge_average(physical, solver, c, gauges, derive_seed(master, 0x9a0e + a));
        std::vector<double> hits;
        const double tol = 1e-9 * std::max(1.0, std::abs(target));
        for (std::size_t r = 0; r < avg.pooled.size(); ++r) {
            double e = avg.pooled.energies[r];
            if (strategy) {
                const auto& code = physical.code;
                const std::uint64_t s = derive_seed(seed, r);
                const SpinVector decoded =
                    code.at("type") == "qac"
                        ? qac_decode(avg.pooled.states[r], qac_code_from_json(code), *strategy, *logical, s).logical
                        : nqac_decode(avg.pooled.states[r], nested_code_from_json(code), *strategy, *logical, s).logical;
                e = energy(*logical, decoded);
            }
            hits.push_back(e <= target + tol ? 1.0 : 0.0);
        }
        return hits;
    };
}

int run_bench(const std::string& manifest_path) {
    const json m = load_json(manifest_path);
    const std::filesystem::path base = std::filesystem::path(manifest_path).parent_path();
    std::vector<BenchItem> items;
    std::vector<double> grid;
    std::string solver_name;
    SolverConfig config;
    BootstrapOptions boot;
    double p_d = 0.99;
    double percentile = 0.5;
    int gauges = 1;
    std::uint64_t master = 0;
    std::string out_dir;
    json decode = nullptr;
    std::string schedule_path;
    try {
        items = manifest_items(m);
        solver_name = m.at("solver").get<std::string>();
        if (m.contains("config")) {
            config = solver_config_from_json(m.at("config"));
        }
        const auto& axis = m.at("axis");
        if (axis.value("name", std::string("sweeps")) != "sweeps") {
            throw InvalidArgument("only the 'sweeps' axis is supported");
        }
        grid = axis.at("grid").get<std::vector<double>>();
        if (m.value("metric", std::string("tts")) != "tts") {
            throw InvalidArgument("only the 'tts' metric is supported");
        }
        p_d = m.value("p_d", p_d);
        percentile = m.value("percentile", percentile);
        gauges = m.value("gauges", gauges);
        master = m.value("seed", master);
        if (m.contains("bootstrap")) {
            boot.resamples = m.at("bootstrap").value("resamples", boot.resamples);
            boot.level = m.at("bootstrap").value("level", boot.level);
        }
        boot.seed = derive_seed(master, 0xb007);
        out_dir = resolve(base, m.value("out", std::string("bench_out")));
        decode = m.value("decode", json(nullptr));
        schedule_path = m.value("schedule", std::string());
    } catch (const json::exception& e) {
        throw FormatError(std::string("bad manifest: ") + e.what());
    }
    if (grid.size() < 3) {
        throw InvalidArgument("axis grid needs at least 3 points");
    }
    if (gauges < 1) {
        throw InvalidArgument("gauge count must be >= 1");
    }
    if (!(p_d > 0 && p_d < 1) || !(percentile > 0 && percentile < 1)) {
        throw InvalidArgument("p_d and percentile must lie in (0, 1)");
    }
    config.validate();
    const bool stub = solver_name == "stub";
    Solver solver;
    if (!stub) {
        solver = solver_by_name(solver_name,
                                schedule_path.empty() ? default_schedule() : load_schedule_option(resolve(base, schedule_path)));
    }

    std::vector<std::vector<std::vector<double>>> hits;
    std::vector<double> sizes_ok;
    json item_entries = json::array();
    for (std::size_t i = 0; i < items.size(); ++i) {
        json entry = {{"path", items[i].path}};
        try {
            const IsingInstance inst = load_instance(resolve(base, items[i].path));
            std::optional<IsingInstance> logical;
            if (!items[i].logical_path.empty()) {
                logical = load_instance(resolve(base, items[i].logical_path));
            }
            const HitFn fn = stub ? stub_hits(m.at("stub"), config.repetitions)
                                  : solver_hits(inst, logical, decode, solver, config, gauges, derive_seed(master, i));
            std::vector<std::vector<double>> per_axis;
            for (std::size_t a = 0; a < grid.size(); ++a) {
                const auto sweeps = static_cast<int>(std::lround(grid[a]));
                per_axis.push_back(fn(a, sweeps, derive_seed(master, 1 + i * grid.size() + a)));
            }
            hits.push_back(std::move(per_axis));
            if (items[i].size) {
                sizes_ok.push_back(*items[i].size);
            }
            entry["status"] = "ok";
        } catch (const std::exception& e) {
            entry["status"] = "error";
            entry["error"] = e.what();
        }
        item_entries.push_back(entry);
    }

    std::filesystem::create_directories(out_dir);
    BenchReport report;
    report.metric = "tts";
    report.axis_name = "sweeps";
    report.level = boot.level;
    report.provenance = {{"version", kVersion}, {"manifest", m}, {"master_seed", master},
                         {"bootstrap_seed", boot.seed}, {"items", item_entries}};
    if (hits.empty()) {
        report.flags.push_back("all-items-failed");
        write_text_file(out_dir + "/report.csv", csv_of([&](std::ostream& out) { write_report_csv(out, report); }));
        write_json(out_dir + "/report.json", report_to_json(report));
        return kExitAllFailed;
    }
    const TfScanResult scan = tf_scan_from_hits(grid, hits, p_d, percentile, boot);
    report.scan = scan.curve;
    report.flags = scan.flags;
    if (hits.size() < items.size()) {
        report.flags.push_back("item-errors");
    }
    if (scan.optimum) {
        const auto& best = scan.curve[*scan.optimum];
        report.estimate = best.estimate.optional();
        report.lower = best.lower.optional();
        report.upper = best.upper.optional();
        report.provenance["optimal_sweeps"] = best.axis;
    }
    json report_json = report_to_json(report);

    if (scan.optimum && sizes_ok.size() == hits.size()) {
        std::set<double> distinct(sizes_ok.begin(), sizes_ok.end());
        if (distinct.size() >= 3) {
            std::vector<double> sizes(distinct.begin(), distinct.end());
            std::vector<std::vector<Tts>> by_size(sizes.size());
            for (std::size_t i = 0; i < hits.size(); ++i) {
                const auto k = static_cast<std::size_t>(
                    std::find(sizes.begin(), sizes.end(), sizes_ok[i]) - sizes.begin());
                by_size[k].push_back(scan.instance_tts[i][*scan.optimum]);
            }
            try {
                const ScalingFit fit = scaling_fit(sizes, by_size, percentile, SizeMeasure::Linear, boot);
                report_json["scaling"] = {{"slope", fit.slope},
                                          {"intercept", fit.intercept},
                                          {"slope_lo", fit.slope_interval.lower},
                                          {"slope_hi", fit.slope_interval.upper}};
            } catch (const InvalidArgument& e) {
                report_json["scaling"] = {{"error", e.what()}};
            }
        }
    }

    write_text_file(out_dir + "/report.csv", csv_of([&](std::ostream& out) { write_report_csv(out, report); }));
    write_json(out_dir + "/report.json", report_json);
    write_text_file(out_dir + "/curve.csv", csv_of([&](std::ostream& out) {
                        out << "item,sweeps,success,tts\n";
                        for (std::size_t i = 0; i < scan.success.size(); ++i) {
                            for (std::size_t a = 0; a < grid.size(); ++a) {
                                const Tts& t = scan.instance_tts[i][a];
                                out << i << ',' << format_number(grid[a]) << ',' << format_number(scan.success[i][a])
                                    << ',' << (t.solved() ? format_number(t.value()) : "unsolved") << '\n';
                            }
                        }
                    }));
    return kExitOk;
}

// ---- spectrum ---------------------------------------------------------

struct SpectrumOptions {
    std::string instance;
    std::string schedule_path;
    std::string out;
    int levels = 4;
    int points = 101;
    std::string distribution_out;
    double t_f = 10.0;
    int steps = 1000;
    std::uint64_t seed = 0;
};

int run_spectrum(const SpectrumOptions& o) {
    const IsingInstance inst = load_instance(o.instance);
    const Schedule schedule = load_schedule_option(o.schedule_path);
    if (o.points < 2) {
        throw InvalidArgument("--points must be >= 2");
    }
    std::vector<double> grid;
    for (int g = 0; g < o.points; ++g) {
        grid.push_back(static_cast<double>(g) / (o.points - 1));
    }
    const SpectrumScan scan = spectrum_scan(inst, schedule, grid, o.levels);
    write_text_file(o.out, csv_of([&](std::ostream& out) { write_spectrum_csv(out, scan); }));
    json sidecar = {{"version", kVersion}, {"command", "spectrum"},  {"instance", o.instance},
                    {"levels", o.levels},  {"points", o.points},     {"min_gap", scan.min_gap},
                    {"min_gap_s", scan.min_gap_s}, {"seed", o.seed},
                    {"schedule", o.schedule_path.empty() ? json("default") : json(o.schedule_path)}};
    if (!o.distribution_out.empty()) {
        const Eigen::VectorXd p = anneal_statevector(inst, schedule, o.t_f, o.steps);
        write_text_file(o.distribution_out,
                        csv_of([&](std::ostream& out) { write_distribution_csv(out, p, inst.n); }));
        sidecar["distribution"] = {{"path", o.distribution_out}, {"t_f", o.t_f}, {"steps", o.steps}};
    }
    write_json(o.out + ".json", sidecar);
    return kExitOk;
}

// ---- report -----------------------------------------------------------

struct ReportOptions {
    std::string results;
    std::string instance;
    double ground_energy = std::nan("");
    double p_d = 0.99;
    double t_f = std::nan("");
    int resamples = 1000;
    double level = 0.95;
    std::uint64_t seed = 0;
    std::string out;
};

int run_report(const ReportOptions& o) {
    if (!std::filesystem::exists(o.results)) {
        throw InputError("cannot open " + o.results);
    }
    std::istringstream in(read_text_file(o.results));
    const SampleSet samples = read_samples_csv(in);
    if (samples.size() == 0) {
        throw FormatError(o.results + " holds no samples");
    }
    double ground = o.ground_energy;
    if (std::isnan(ground) && !o.instance.empty()) {
        ground = ground_energy_of(load_instance(o.instance));
    }
    if (std::isnan(ground)) {
        ground = *std::min_element(samples.energies.begin(), samples.energies.end());
    }
    std::vector<double> hits;
    for (double e : samples.energies) {
        hits.push_back(e <= ground + 1e-9 * std::max(1.0, std::abs(ground)) ? 1.0 : 0.0);
    }
    const auto boot = bayesian_bootstrap(hits, weighted_mean, o.resamples, o.level, o.seed);
    json summary = {{"version", kVersion},
                    {"command", "report"},
                    {"results", o.results},
                    {"seed", o.seed},
                    {"repetitions", samples.size()},
                    {"ground_energy", ground},
                    {"min_energy", *std::min_element(samples.energies.begin(), samples.energies.end())},
                    {"success_prob", boot.estimate},
                    {"success_lo", boot.interval.lower},
                    {"success_hi", boot.interval.upper},
                    {"level", o.level},
                    {"resamples", o.resamples}};
    if (!std::isnan(o.t_f)) {
        // uniform weights can sum a little past 1
        const Tts t = tts(std::clamp(boot.estimate, 0.0, 1.0), o.p_d, o.t_f);
        summary["tts"] = t.solved() ? json(t.value()) : json("unsolved");
        summary["p_d"] = o.p_d;
        summary["t_f"] = o.t_f;
    }
    const std::string text = summary.dump(2) + "\n";
    if (o.out.empty()) {
        std::cout << text;
    } else {
        write_text_file(o.out, text);
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"qabench: quantum annealing benchmarking toolkit"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    GenOptions gen;
    auto* gen_cmd = app.add_subcommand("gen", "Generate an instance file");
    gen_cmd->add_option("family", gen.family, "random_pm1 | range_k | signature | weak_strong | frustrated_loops")
        ->required();
    gen_cmd->add_option("--grid", gen.grid, "Chimera grid size s");
    gen_cmd->add_option("--k", gen.k, "range_k coupler range");
    gen_cmd->add_option("--n-core", gen.n_core, "signature core size");
    gen_cmd->add_option("--hl", gen.hl, "weak_strong weak-cell field");
    gen_cmd->add_option("--alpha", gen.alpha, "frustrated_loops loop density");
    gen_cmd->add_option("--cap", gen.cap, "frustrated_loops coupler cap R");
    gen_cmd->add_option("--inactive", gen.inactive, "inactive qubit ids");
    gen_cmd->add_option("--seed", gen.seed, "random seed");
    gen_cmd->add_flag("--reject-out-of-range", gen.reject_range, "fail instead of renormalizing to the device range");
    gen_cmd->add_option("-o,--out", gen.out, "output instance JSON")->required();

    SolveOptions solve;
    auto* solve_cmd = app.add_subcommand("solve", "Solve an instance");
    solve_cmd->add_option("instance", solve.instance, "instance JSON")->required();
    solve_cmd->add_option("--solver", solve.solver, "exact | sa | pt | svmc | sqa");
    solve_cmd->add_option("-o,--out", solve.out, "results CSV (sidecar at <out>.json)")->required();
    solve_cmd->add_option("--config", solve.config_path, "solver config JSON");
    solve_cmd->add_option("--schedule", solve.schedule_path, "schedule CSV s,A,B");
    solve_cmd->add_option("--seed", solve.seed, "master seed");
    solve_cmd->add_option("--sweeps", solve.sweeps);
    solve_cmd->add_option("--reps", solve.reps);
    solve_cmd->add_option("--beta-initial", solve.beta_initial);
    solve_cmd->add_option("--beta-final", solve.beta_final);
    solve_cmd->add_option("--temperature", solve.temperature);
    solve_cmd->add_option("--beta", solve.beta);
    solve_cmd->add_option("--slices", solve.slices);
    solve_cmd->add_option("--readout", solve.readout, "fixed | best");
    solve_cmd->add_option("--readout-slice", solve.readout_slice);
    solve_cmd->add_option("--sweep-order", solve.sweep_order, "random | sequential (SA)");
    solve_cmd->add_option("--ladder", solve.ladder);
    solve_cmd->add_flag("--timing", solve.timing, "record measured wall times (output no longer reproducible)");

    EncodeOptions enc;
    auto* enc_cmd = app.add_subcommand("encode", "Encode an instance with QAC or NQAC");
    enc_cmd->add_option("scheme", enc.scheme, "qac | nqac")->required();
    enc_cmd->add_option("instance", enc.instance, "logical instance JSON")->required();
    enc_cmd->add_option("-o,--out", enc.out, "physical instance JSON")->required();
    enc_cmd->add_option("--alpha", enc.alpha);
    enc_cmd->add_option("--beta", enc.beta);
    enc_cmd->add_option("--penalty-mode", enc.penalty_mode, "uniform | scaled_to_mean");
    enc_cmd->add_option("--layout", enc.layout, "linear | chimera");
    enc_cmd->add_option("--grid", enc.grid, "Chimera grid size (qac chimera layout, nqac embedding)");
    enc_cmd->add_option("--c", enc.c, "nesting level C");
    enc_cmd->add_option("--gamma", enc.gamma, "nqac penalty");
    enc_cmd->add_option("--field-boost", enc.field_boost);
    enc_cmd->add_option("--chain-strength", enc.chain_strength);
    enc_cmd->add_option("--seed", enc.seed);

    std::string manifest;
    auto* bench_cmd = app.add_subcommand("bench", "Run a benchmark manifest");
    bench_cmd->add_option("manifest", manifest, "manifest JSON")->required();
    std::uint64_t bench_seed_unused = 0;
    bench_cmd->add_option("--seed", bench_seed_unused, "accepted for uniformity; the manifest seed is authoritative");

    SpectrumOptions spectrum;
    auto* spectrum_cmd = app.add_subcommand("spectrum", "Instantaneous spectrum along the anneal");
    spectrum_cmd->add_option("instance", spectrum.instance, "instance JSON")->required();
    spectrum_cmd->add_option("-o,--out", spectrum.out, "spectrum CSV")->required();
    spectrum_cmd->add_option("--schedule", spectrum.schedule_path);
    spectrum_cmd->add_option("--levels", spectrum.levels);
    spectrum_cmd->add_option("--points", spectrum.points);
    spectrum_cmd->add_option("--distribution", spectrum.distribution_out, "also write the final anneal distribution");
    spectrum_cmd->add_option("--tf", spectrum.t_f, "anneal time in ns");
    spectrum_cmd->add_option("--steps", spectrum.steps);
    spectrum_cmd->add_option("--seed", spectrum.seed);

    ReportOptions rep;
    auto* rep_cmd = app.add_subcommand("report", "Summarize a results CSV");
    rep_cmd->add_option("results", rep.results, "results CSV")->required();
    rep_cmd->add_option("--instance", rep.instance, "instance JSON supplying the ground energy");
    rep_cmd->add_option("--ground-energy", rep.ground_energy);
    rep_cmd->add_option("--p-d", rep.p_d);
    rep_cmd->add_option("--tf", rep.t_f, "run time per repetition for TTS");
    rep_cmd->add_option("--resamples", rep.resamples);
    rep_cmd->add_option("--level", rep.level);
    rep_cmd->add_option("--seed", rep.seed);
    rep_cmd->add_option("-o,--out", rep.out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*gen_cmd) return run_gen(gen);
        if (*solve_cmd) return run_solve(solve);
        if (*enc_cmd) return run_encode(enc);
        if (*bench_cmd) return run_bench(manifest);
        if (*spectrum_cmd) return run_spectrum(spectrum);
        if (*rep_cmd) return run_report(rep);
    } catch (const FormatError& e) {
        std::cerr << "qabench: input format error: " << e.what() << '\n';
        return kExitFormat;
    } catch (const InputError& e) {
        std::cerr << "qabench: " << e.what() << '\n';
        return kExitFormat;
    } catch (const std::invalid_argument& e) {
        std::cerr << "qabench: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::length_error& e) {
        std::cerr << "qabench: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "qabench: " << e.what() << '\n';
        return kExitAllFailed;
    }
    return kExitUsage;
}
