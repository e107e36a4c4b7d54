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

#include "qabench/solvers.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>

namespace qabench {

void SolverConfig::validate() const {
    if (sweeps < 0) {
        throw InvalidArgument("sweeps must be >= 0");
    }
    if (repetitions < 1) {
        throw InvalidArgument("repetitions must be >= 1");
    }
    if (!(beta_initial > 0) || !(beta_final > 0)) {
        throw InvalidArgument("SA inverse temperatures must be positive");
    }
    if (beta_final < beta_initial) {
        throw InvalidArgument("SA final inverse temperature must be >= initial");
    }
    if (!(temperature > 0)) {
        throw InvalidArgument("temperature must be positive");
    }
    if (!(beta > 0)) {
        throw InvalidArgument("inverse temperature must be positive");
    }
    if (trotter_slices < 1) {
        throw InvalidArgument("trotter_slices must be positive");
    }
}

nlohmann::json to_json(const SolverConfig& c) {
    return {{"sweeps", c.sweeps},
            {"repetitions", c.repetitions},
            {"seed", c.seed},
            {"beta_initial", c.beta_initial},
            {"beta_final", c.beta_final},
            {"sweep_order", c.sweep_order == SweepOrder::Random ? "random" : "sequential"},
            {"cluster_moves", c.cluster_moves},
            {"clusters", c.clusters},
            {"temperature", c.temperature},
            {"beta", c.beta},
            {"trotter_slices", c.trotter_slices},
            {"readout", c.readout == SliceReadout::Best ? "best" : "fixed"},
            {"readout_slice", c.readout_slice},
            {"ladder", c.ladder}};
}

SolverConfig solver_config_from_json(const nlohmann::json& j, SolverConfig c) {
    if (!j.is_object()) {
        throw FormatError("solver config must be a JSON object");
    }
    try {
        c.sweeps = j.value("sweeps", c.sweeps);
        c.repetitions = j.value("repetitions", c.repetitions);
        c.seed = j.value("seed", c.seed);
        c.beta_initial = j.value("beta_initial", c.beta_initial);
        c.beta_final = j.value("beta_final", c.beta_final);
        const std::string order =
            j.value("sweep_order", std::string(c.sweep_order == SweepOrder::Random ? "random" : "sequential"));
        if (order != "random" && order != "sequential") {
            throw FormatError("sweep_order must be 'random' or 'sequential'");
        }
        c.sweep_order = order == "random" ? SweepOrder::Random : SweepOrder::Sequential;
        c.cluster_moves = j.value("cluster_moves", c.cluster_moves);
        c.clusters = j.value("clusters", c.clusters);
        c.temperature = j.value("temperature", c.temperature);
        c.beta = j.value("beta", c.beta);
        c.trotter_slices = j.value("trotter_slices", c.trotter_slices);
        const std::string readout = j.value("readout", std::string(c.readout == SliceReadout::Best ? "best" : "fixed"));
        if (readout != "best" && readout != "fixed") {
            throw FormatError("readout must be 'fixed' or 'best'");
        }
        c.readout = readout == "best" ? SliceReadout::Best : SliceReadout::Fixed;
        c.readout_slice = j.value("readout_slice", c.readout_slice);
        c.ladder = j.value("ladder", c.ladder);
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("bad solver config: ") + e.what());
    }
    return c;
}

bool SampleSet::same_samples(const SampleSet& o) const {
    return states == o.states && energies == o.energies && solver_id == o.solver_id && parameters == o.parameters &&
           seed == o.seed && sweeps == o.sweeps;
}

namespace {

using Clock = std::chrono::steady_clock;

// Runs one independent stream per repetition; results land in rep order.
template <typename Body>
SampleSet run_repetitions(const IsingInstance& instance, const SolverConfig& config, std::string id,
                          nlohmann::json parameters, Body body) {
    const auto reps = static_cast<std::size_t>(config.repetitions);
    SampleSet out;
    out.solver_id = std::move(id);
    out.parameters = std::move(parameters);
    out.seed = config.seed;
    out.sweeps = config.sweeps;
    out.states.resize(reps);
    out.energies.resize(reps);
    out.wall_time.resize(reps);
    parallel_for(reps, [&](std::size_t rep) {
        const auto start = Clock::now();
        Rng rng = make_stream(config.seed, rep);
        out.states[rep] = body(rng);
        out.energies[rep] = energy(instance, out.states[rep]);
        out.wall_time[rep] = std::chrono::duration<double>(Clock::now() - start).count();
    });
    return out;
}

double ramp(int step, int steps, double from, double to) {
    if (steps <= 1) {
        return to;
    }
    return from + (to - from) * static_cast<double>(step) / static_cast<double>(steps - 1);
}

SpinVector random_state(int n, Rng& rng) {
    SpinVector s(static_cast<std::size_t>(n));
    for (auto& v : s) {
        v = random_spin(rng);
    }
    return s;
}

// One Metropolis sweep in index order; returns the energy change.
double metropolis_sweep(const IsingInstance& inst, const Adjacency& adj, SpinVector& s, double beta, Rng& rng,
                        SweepOrder order = SweepOrder::Sequential) {
    double delta_total = 0;
    for (int k = 0; k < inst.n; ++k) {
        const int i = order == SweepOrder::Random ? static_cast<int>(uniform_index(rng, static_cast<std::size_t>(inst.n))) : k;
        const auto ui = static_cast<std::size_t>(i);
        const double delta = -2.0 * s[ui] * local_field(inst, adj, s, i);
        if (delta <= 0 || uniform01(rng) < std::exp(-beta * delta)) {
            s[ui] = static_cast<Spin>(-s[ui]);
            delta_total += delta;
        }
    }
    return delta_total;
}

void cluster_sweep(const IsingInstance& inst, const Adjacency& adj, SpinVector& s, double beta,
                   const std::vector<std::vector<int>>& clusters, std::vector<char>& mark, Rng& rng) {
    for (const auto& cluster : clusters) {
        for (int i : cluster) {
            mark[static_cast<std::size_t>(i)] = 1;
        }
        double delta = 0;
        for (int i : cluster) {
            const auto ui = static_cast<std::size_t>(i);
            double f = inst.h[ui];
            for (const auto& e : adj.of(i)) {
                if (!mark[static_cast<std::size_t>(e.spin)]) {
                    f += e.coupling * s[static_cast<std::size_t>(e.spin)];
                }
            }
            delta += -2.0 * s[ui] * f;
        }
        for (int i : cluster) {
            mark[static_cast<std::size_t>(i)] = 0;
        }
        if (delta <= 0 || uniform01(rng) < std::exp(-beta * delta)) {
            for (int i : cluster) {
                s[static_cast<std::size_t>(i)] = static_cast<Spin>(-s[static_cast<std::size_t>(i)]);
            }
        }
    }
}

// Depth-first branch and bound over a connectivity-greedy spin order.
class BranchAndBound {
public:
    BranchAndBound(const IsingInstance& inst, bool collect_all) : inst_(inst), adj_(build_adjacency(inst)), all_(collect_all) {
        const int n = inst.n;
        order_.reserve(static_cast<std::size_t>(n));
        std::vector<int> linked(static_cast<std::size_t>(n), 0);
        std::vector<bool> used(static_cast<std::size_t>(n), false);
        for (int step = 0; step < n; ++step) {
            int pick = -1;
            for (int v = 0; v < n; ++v) {
                if (used[static_cast<std::size_t>(v)]) {
                    continue;
                }
                if (pick < 0 || linked[static_cast<std::size_t>(v)] > linked[static_cast<std::size_t>(pick)] ||
                    (linked[static_cast<std::size_t>(v)] == linked[static_cast<std::size_t>(pick)] &&
                     adj_.of(v).size() > adj_.of(pick).size())) {
                    pick = v;
                }
            }
            used[static_cast<std::size_t>(pick)] = true;
            order_.push_back(pick);
            for (const auto& e : adj_.of(pick)) {
                ++linked[static_cast<std::size_t>(e.spin)];
            }
        }
        position_.assign(static_cast<std::size_t>(n), 0);
        for (int d = 0; d < n; ++d) {
            position_[static_cast<std::size_t>(order_[static_cast<std::size_t>(d)])] = d;
        }
        // remaining_pairs_[d]: sum |J| over couplers with both ends at depth >= d
        remaining_pairs_.assign(static_cast<std::size_t>(n) + 1, 0.0);
        for (const auto& [key, value] : inst.couplers) {
            const int d = std::min(position_[static_cast<std::size_t>(key.first)], position_[static_cast<std::size_t>(key.second)]);
            remaining_pairs_[static_cast<std::size_t>(d)] += std::abs(value);
        }
        for (int d = n - 1; d >= 0; --d) {
            remaining_pairs_[static_cast<std::size_t>(d)] += remaining_pairs_[static_cast<std::size_t>(d) + 1];
        }
        field_ = inst.h;
        state_.assign(static_cast<std::size_t>(n), Spin{1});
        z2_symmetric_ = std::all_of(inst.h.begin(), inst.h.end(), [](double v) { return v == 0.0; }) && n > 0;
    }

    ExactResult run() {
        best_ = std::numeric_limits<double>::infinity();
        search(0, 0.0);
        ExactResult result;
        if (inst_.n == 0) {
            result.ground_energy = 0;
            result.ground_states.push_back({});
            return result;
        }
        std::vector<SpinVector> candidates = std::move(found_);
        if (z2_symmetric_ && all_) {
            const std::size_t count = candidates.size();
            for (std::size_t k = 0; k < count; ++k) {
                SpinVector flipped = candidates[k];
                for (auto& v : flipped) {
                    v = static_cast<Spin>(-v);
                }
                candidates.push_back(std::move(flipped));
            }
        }
        double ground = std::numeric_limits<double>::infinity();
        std::vector<double> energies;
        for (const auto& c : candidates) {
            energies.push_back(energy(inst_, c));
            ground = std::min(ground, energies.back());
        }
        const double tol = tolerance(ground);
        for (std::size_t k = 0; k < candidates.size(); ++k) {
            if (energies[k] <= ground + tol) {
                result.ground_states.push_back(std::move(candidates[k]));
            }
        }
        std::sort(result.ground_states.begin(), result.ground_states.end(),
                  [](const SpinVector& a, const SpinVector& b) { return index_from_state(a) < index_from_state(b); });
        result.ground_energy = ground;
        return result;
    }

private:
    static double tolerance(double e) { return 1e-9 * std::max(1.0, std::abs(e)); }

    void search(int depth, double partial) {
        const int n = inst_.n;
        if (depth == n) {
            const double tol = tolerance(partial);
            if (partial < best_ - tol) {
                best_ = partial;
                found_.clear();
                found_.push_back(state_);
            } else if (all_ && partial <= best_ + tol) {
                found_.push_back(state_);
            }
            return;
        }
        double bound = partial - remaining_pairs_[static_cast<std::size_t>(depth)];
        for (int d = depth; d < n; ++d) {
            bound -= std::abs(field_[static_cast<std::size_t>(order_[static_cast<std::size_t>(d)])]);
        }
        if (std::isfinite(best_)) {
            const double tol = tolerance(best_);
            if (all_ ? bound > best_ + tol : bound >= best_ - tol) {
                return;
            }
        }
        const int v = order_[static_cast<std::size_t>(depth)];
        const auto uv = static_cast<std::size_t>(v);
        const double f = field_[uv];
        // Try the locally favourable sign first.
        const Spin first = f > 0 ? Spin{-1} : Spin{1};
        for (Spin value : {first, static_cast<Spin>(-first)}) {
            if (depth == 0 && z2_symmetric_ && value != 1) {
                continue;
            }
            state_[uv] = value;
            for (const auto& e : adj_.of(v)) {
                if (position_[static_cast<std::size_t>(e.spin)] > depth) {
                    field_[static_cast<std::size_t>(e.spin)] += e.coupling * value;
                }
            }
            search(depth + 1, partial + value * f);
            for (const auto& e : adj_.of(v)) {
                if (position_[static_cast<std::size_t>(e.spin)] > depth) {
                    field_[static_cast<std::size_t>(e.spin)] -= e.coupling * value;
                }
            }
        }
    }

    const IsingInstance& inst_;
    Adjacency adj_;
    bool all_;
    std::vector<int> order_;
    std::vector<int> position_;
    std::vector<double> remaining_pairs_;
    std::vector<double> field_;
    SpinVector state_;
    bool z2_symmetric_ = false;
    double best_ = 0;
    std::vector<SpinVector> found_;
};

}  // namespace

ExactResult solve_exact(const IsingInstance& instance) {
    if (instance.n > kExactSolverMaxSpins) {
        throw SizeLimitExceeded("exact solver supports at most " + std::to_string(kExactSolverMaxSpins) +
                                " spins, instance has " + std::to_string(instance.n));
    }
    instance.validate();
    return BranchAndBound(instance, true).run();
}

ExactResult exact_ground_energy(const IsingInstance& instance) {
    if (instance.n > 64) {
        throw SizeLimitExceeded("exact ground energy supports at most 64 spins, instance has " +
                                std::to_string(instance.n));
    }
    instance.validate();
    return BranchAndBound(instance, false).run();
}

SampleSet solve_sa(const IsingInstance& instance, const SolverConfig& config) {
    config.validate();
    for (const auto& cluster : config.clusters) {
        for (int i : cluster) {
            if (i < 0 || i >= instance.n) {
                throw InvalidArgument("cluster references spin " + std::to_string(i));
            }
        }
    }
    const Adjacency adj = build_adjacency(instance);
    nlohmann::json params = {{"beta_initial", config.beta_initial},
                             {"beta_final", config.beta_final},
                             {"sweeps", config.sweeps},
                             {"repetitions", config.repetitions},
                             {"sweep_order", config.sweep_order == SweepOrder::Random ? "random" : "sequential"},
                             {"cluster_moves", config.cluster_moves}};
    if (config.cluster_moves) {
        params["clusters"] = config.clusters;
    }
    return run_repetitions(instance, config, "sa", std::move(params), [&](Rng& rng) {
        SpinVector s = random_state(instance.n, rng);
        std::vector<char> mark(static_cast<std::size_t>(instance.n), 0);
        for (int t = 0; t < config.sweeps; ++t) {
            const double beta = ramp(t, config.sweeps, config.beta_initial, config.beta_final);
            metropolis_sweep(instance, adj, s, beta, rng, config.sweep_order);
            if (config.cluster_moves) {
                cluster_sweep(instance, adj, s, beta, config.clusters, mark, rng);
            }
        }
        return s;
    });
}

SampleSet solve_svmc(const IsingInstance& instance, const SolverConfig& config, const Schedule& schedule) {
    config.validate();
    const Adjacency adj = build_adjacency(instance);
    constexpr double pi = 3.14159265358979323846;
    nlohmann::json params = {{"temperature", config.temperature},
                             {"sweeps", config.sweeps},
                             {"repetitions", config.repetitions}};
    return run_repetitions(instance, config, "svmc", std::move(params), [&](Rng& rng) {
        const auto n = static_cast<std::size_t>(instance.n);
        std::vector<double> theta(n, pi / 2);
        std::vector<double> cosine(n, std::cos(pi / 2));
        for (int t = 0; t < config.sweeps; ++t) {
            const auto point = schedule.at(ramp(t, config.sweeps, 0.0, 1.0));
            for (std::size_t i = 0; i < n; ++i) {
                double f = instance.h[i];
                for (const auto& e : adj.of(static_cast<int>(i))) {
                    f += e.coupling * cosine[static_cast<std::size_t>(e.spin)];
                }
                const double proposal = pi * uniform01(rng);
                const double c_new = std::cos(proposal);
                const double delta = -point.a * (std::sin(proposal) - std::sin(theta[i])) + point.b * f * (c_new - cosine[i]);
                if (delta <= 0 || uniform01(rng) < std::exp(-delta / config.temperature)) {
                    theta[i] = proposal;
                    cosine[i] = c_new;
                }
            }
        }
        SpinVector s(n);
        for (std::size_t i = 0; i < n; ++i) {
            s[i] = cosine[i] >= 0 ? Spin{1} : Spin{-1};
        }
        return s;
    });
}

double trotter_coupling(double beta_slice, double transverse_field) {
    constexpr double lo = 1e-12;
    constexpr double hi = 1.0 - 1e-12;
    const double t = std::clamp(std::tanh(beta_slice * transverse_field), lo, hi);
    return -std::log(t) / (2.0 * beta_slice);
}

SampleSet solve_sqa(const IsingInstance& instance, const SolverConfig& config, const Schedule& schedule) {
    config.validate();
    if (config.trotter_slices < 2) {
        throw InvalidArgument("SQA needs at least 2 Trotter slices");
    }
    if (config.readout == SliceReadout::Fixed &&
        (config.readout_slice < 0 || config.readout_slice >= config.trotter_slices)) {
        throw InvalidArgument("readout slice out of range");
    }
    const Adjacency adj = build_adjacency(instance);
    const int slices = config.trotter_slices;
    const double beta_slice = config.beta / slices;
    nlohmann::json params = {{"beta", config.beta},
                             {"trotter_slices", slices},
                             {"readout", config.readout == SliceReadout::Best ? "best" : "fixed"},
                             {"readout_slice", config.readout_slice},
                             {"sweeps", config.sweeps},
                             {"repetitions", config.repetitions}};
    return run_repetitions(instance, config, "sqa", std::move(params), [&](Rng& rng) {
        std::vector<SpinVector> replica(static_cast<std::size_t>(slices));
        for (auto& r : replica) {
            r = random_state(instance.n, rng);
        }
        for (int t = 0; t < config.sweeps; ++t) {
            const auto point = schedule.at(ramp(t, config.sweeps, 0.0, 1.0));
            const double j_perp = trotter_coupling(beta_slice, point.a);
            for (int k = 0; k < slices; ++k) {
                auto& cur = replica[static_cast<std::size_t>(k)];
                const auto& prev = replica[static_cast<std::size_t>((k + slices - 1) % slices)];
                const auto& next = replica[static_cast<std::size_t>((k + 1) % slices)];
                for (int i = 0; i < instance.n; ++i) {
                    const auto ui = static_cast<std::size_t>(i);
                    const double classical = point.b * local_field(instance, adj, cur, i);
                    const double delta = -2.0 * cur[ui] * (classical - j_perp * (prev[ui] + next[ui]));
                    if (delta <= 0 || uniform01(rng) < std::exp(-beta_slice * delta)) {
                        cur[ui] = static_cast<Spin>(-cur[ui]);
                    }
                }
            }
        }
        if (config.readout == SliceReadout::Fixed) {
            return replica[static_cast<std::size_t>(config.readout_slice)];
        }
        std::size_t best = 0;
        double best_energy = energy(instance, replica[0]);
        for (std::size_t k = 1; k < replica.size(); ++k) {
            const double e = energy(instance, replica[k]);
            if (e < best_energy) {
                best_energy = e;
                best = k;
            }
        }
        return replica[best];
    });
}

double exchange_acceptance(double beta_a, double beta_b, double energy_a, double energy_b) {
    const double exponent = (beta_a - beta_b) * (energy_a - energy_b);
    return exponent >= 0 ? 1.0 : std::exp(exponent);
}

SampleSet solve_pt(const IsingInstance& instance, const SolverConfig& config) {
    config.validate();
    const auto& ladder = config.ladder;
    if (ladder.size() < 2) {
        throw InvalidArgument("parallel tempering needs at least 2 rungs");
    }
    for (std::size_t r = 0; r < ladder.size(); ++r) {
        if (!(ladder[r] > 0) || (r > 0 && !(ladder[r] > ladder[r - 1]))) {
            throw InvalidArgument("ladder must hold positive inverse temperatures, strictly increasing");
        }
    }
    const Adjacency adj = build_adjacency(instance);
    nlohmann::json params = {{"ladder", ladder}, {"sweeps", config.sweeps}, {"repetitions", config.repetitions}};
    return run_repetitions(instance, config, "pt", std::move(params), [&](Rng& rng) {
        const std::size_t rungs = ladder.size();
        std::vector<SpinVector> replica(rungs);
        std::vector<double> e(rungs);
        for (std::size_t r = 0; r < rungs; ++r) {
            replica[r] = random_state(instance.n, rng);
            e[r] = energy(instance, replica[r]);
        }
        for (int t = 0; t < config.sweeps; ++t) {
            for (std::size_t r = 0; r < rungs; ++r) {
                e[r] += metropolis_sweep(instance, adj, replica[r], ladder[r], rng);
            }
            for (std::size_t r = 0; r + 1 < rungs; ++r) {
                if (uniform01(rng) < exchange_acceptance(ladder[r], ladder[r + 1], e[r], e[r + 1])) {
                    std::swap(replica[r], replica[r + 1]);
                    std::swap(e[r], e[r + 1]);
                }
            }
        }
        return replica.back();
    });
}

Solver solver_by_name(const std::string& name, const Schedule& schedule) {
    if (name == "sa") {
        return [](const IsingInstance& i, const SolverConfig& c) { return solve_sa(i, c); };
    }
    if (name == "pt") {
        return [](const IsingInstance& i, const SolverConfig& c) { return solve_pt(i, c); };
    }
    if (name == "svmc") {
        return [schedule](const IsingInstance& i, const SolverConfig& c) { return solve_svmc(i, c, schedule); };
    }
    if (name == "sqa") {
        return [schedule](const IsingInstance& i, const SolverConfig& c) { return solve_sqa(i, c, schedule); };
    }
    throw InvalidArgument("unknown solver '" + name + "'");
}

}  // namespace qabench
