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

// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails. Oracles here are computed independently of the library
// wherever the library would otherwise check itself.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include <json.hpp>

#include "qabench/bench.hpp"
#include "qabench/common.hpp"
#include "qabench/instances.hpp"
#include "qabench/ising.hpp"
#include "qabench/qac.hpp"
#include "qabench/quantum_sim.hpp"
#include "qabench/solvers.hpp"
#include "qabench/topology.hpp"

namespace fs = std::filesystem;
using namespace qabench;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

/// Energy by explicit summation, independent of the library's energy().
double direct_energy(const IsingInstance& inst, const SpinVector& s) {
    double e = 0;
    for (int i = 0; i < inst.n; ++i) {
        e += inst.h[static_cast<std::size_t>(i)] * s[static_cast<std::size_t>(i)];
    }
    for (const auto& [key, value] : inst.couplers) {
        e += value * s[static_cast<std::size_t>(key.first)] * s[static_cast<std::size_t>(key.second)];
    }
    return e;
}

SpinVector spins_of(std::uint64_t x, int n) {
    SpinVector s(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        s[static_cast<std::size_t>(i)] = ((x >> i) & 1U) != 0 ? Spin{-1} : Spin{1};
    }
    return s;
}

SpinVector random_spins(int n, Rng& rng) {
    SpinVector s(static_cast<std::size_t>(n));
    for (auto& v : s) {
        v = uniform01(rng) < 0.5 ? Spin{-1} : Spin{1};
    }
    return s;
}

/// Weights on a quarter grid so every energy sum is exact in binary.
double grid_weight(Rng& rng) {
    return static_cast<double>(static_cast<int>(uniform_index(rng, 9)) - 4) / 4.0;
}

IsingInstance random_instance(int n, double density, Rng& rng, bool fields = true) {
    IsingInstance inst(n);
    for (int i = 0; i < n; ++i) {
        if (fields) {
            inst.h[static_cast<std::size_t>(i)] = grid_weight(rng);
        }
        for (int j = i + 1; j < n; ++j) {
            if (uniform01(rng) < density) {
                const double w = grid_weight(rng);
                if (w != 0) {
                    inst.set_coupler(i, j, w);
                }
            }
        }
    }
    return inst;
}

IsingInstance complete_instance(int n, Rng& rng) {
    IsingInstance inst(n);
    for (int i = 0; i < n; ++i) {
        inst.h[static_cast<std::size_t>(i)] = grid_weight(rng);
        for (int j = i + 1; j < n; ++j) {
            double w = grid_weight(rng);
            inst.set_coupler(i, j, w == 0 ? 0.25 : w);
        }
    }
    return inst;
}

/// Exhaustive energies of every basis state.
std::vector<double> all_energies(const IsingInstance& inst) {
    std::vector<double> out(std::size_t{1} << inst.n);
    for (std::uint64_t x = 0; x < out.size(); ++x) {
        out[x] = direct_energy(inst, spins_of(x, inst.n));
    }
    return out;
}

/// One-sided lower bound of a statistic difference from two independent
/// Bayesian bootstrap replicate sets of equal length.
double difference_lower_bound(const std::vector<double>& a, const std::vector<double>& b, double confidence) {
    std::vector<double> diff(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
        diff[k] = a[k] - b[k];
    }
    return quantile(diff, 1.0 - confidence);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v) {
    std::ostringstream o;
    o.precision(6);
    o << v;
    return o.str();
}

// 1 -------------------------------------------------------------------------

Outcome signature_structure() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto inst = gen_signature(4);
    const auto ex = solve_exact(inst);
    // independent enumeration
    const auto energies = all_energies(inst);
    const double min = *std::min_element(energies.begin(), energies.end());
    std::size_t count = 0;
    for (double e : energies) {
        count += e == min;
    }
    const double dt = seconds_since(t0);
    const bool ok = ex.ground_states.size() == 17 && ex.ground_energy == -8.0 && min == -8.0 && count == 17 &&
                    dt < 1.0;
    return {ok, "ground states " + std::to_string(ex.ground_states.size()) + " at " + fmt(ex.ground_energy) +
                    ", enumeration " + std::to_string(count) + ", " + fmt(dt) + " s"};
}

// 2 -------------------------------------------------------------------------

Outcome signature_rejection() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto inst = gen_signature(4);
    const int n = inst.n;
    const std::uint64_t isolated = (std::uint64_t{1} << n) - 1;  // all -1
    std::vector<std::uint64_t> clusters;
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
        if ((x & 0xF) == 0) {
            clusters.push_back(x);  // core all +1, outer free
        }
    }
    constexpr double kConfidence = 0.99;
    constexpr int kResamples = 2000;

    // (a) SA: isolated frequency minus the largest cluster frequency.
    SolverConfig c;
    c.sweeps = 20;
    c.beta_initial = 0.1;
    c.beta_final = 3.0;
    c.repetitions = 10000;
    c.seed = 2026;
    const auto samples = solve_sa(inst, c);
    std::vector<double> labels;
    labels.reserve(samples.size());
    for (const auto& s : samples.states) {
        labels.push_back(static_cast<double>(index_from_state(s)));
    }
    const WeightedStatistic margin = [&](std::span<const double> data, std::span<const double> w) {
        std::map<std::uint64_t, double> freq;
        for (std::size_t k = 0; k < data.size(); ++k) {
            freq[static_cast<std::uint64_t>(data[k])] += w[k];
        }
        double most = 0;
        for (auto x : clusters) {
            most = std::max(most, freq[x]);
        }
        return freq[isolated] - most;
    };
    const auto sa = bayesian_bootstrap(labels, margin, kResamples, 2 * kConfidence - 1, 11);
    const double sa_lower = quantile(sa.replicates, 1.0 - kConfidence);
    const bool sa_ok = sa_lower > 0;

    // (b) closed-system anneal: P(isolated) / mean cluster P, from 10^4
    // measurement shots of the final state.
    const auto probs = anneal_statevector(inst, default_schedule(), 10.0, 1000);
    double exact_cluster = 0;
    for (auto x : clusters) {
        exact_cluster += probs[static_cast<Eigen::Index>(x)];
    }
    const double exact_ratio = probs[static_cast<Eigen::Index>(isolated)] / (exact_cluster / 16.0);
    std::vector<double> cdf(probs.size());
    std::partial_sum(probs.data(), probs.data() + probs.size(), cdf.begin());
    Rng rng = make_stream(12, 0);
    std::vector<double> shots;
    for (int k = 0; k < 10000; ++k) {
        const double u = uniform01(rng) * cdf.back();
        shots.push_back(static_cast<double>(std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin()));
    }
    const WeightedStatistic ratio = [&](std::span<const double> data, std::span<const double> w) {
        double iso = 0;
        double cl = 0;
        for (std::size_t k = 0; k < data.size(); ++k) {
            const auto x = static_cast<std::uint64_t>(data[k]);
            if (x == isolated) {
                iso += w[k];
            } else if ((x & 0xF) == 0) {
                cl += w[k];
            }
        }
        return cl > 0 ? iso / (cl / 16.0) : 1e300;
    };
    const auto qa = bayesian_bootstrap(shots, ratio, kResamples, 2 * kConfidence - 1, 13);
    const double qa_upper = quantile(qa.replicates, kConfidence);
    const bool qa_ok = qa_upper < 1.0 && exact_ratio < 1.0;
    const double dt = seconds_since(t0);
    return {sa_ok && qa_ok && dt < 60,
            "SA iso - max cluster " + fmt(sa.estimate) + " (99% lower " + fmt(sa_lower) + "); quantum ratio " +
                fmt(exact_ratio) + " (99% upper " + fmt(qa_upper) + "), " + fmt(dt) + " s"};
}

// 3 -------------------------------------------------------------------------

Outcome weak_strong() {
    std::string detail;
    bool ok = true;
    for (double h_left : {0.1, 0.25, 0.44}) {
        const auto t0 = std::chrono::steady_clock::now();
        const auto inst = gen_weak_strong(h_left);
        const auto energies = all_energies(inst);
        const double min = *std::min_element(energies.begin(), energies.end());
        std::size_t argmin = 0;
        std::size_t count = 0;
        for (std::size_t x = 0; x < energies.size(); ++x) {
            if (energies[x] == min) {
                argmin = x;
                ++count;
            }
        }
        const bool unique_aligned = count == 1 && argmin == 0;
        // weak cell (0..7) all -1, strong cell (8..15) all +1
        const std::size_t opposed = 0xFF;
        bool stable = true;
        for (int i = 0; i < inst.n; ++i) {
            stable = stable && energies[opposed ^ (std::size_t{1} << i)] > energies[opposed];
        }
        const double dt = seconds_since(t0);
        ok = ok && unique_aligned && stable && dt < 5;
        detail += "h_L=" + fmt(h_left) + (unique_aligned ? " unique" : " NOT-unique") +
                  (stable ? " stable " : " unstable ") + fmt(dt) + "s; ";
    }
    return {ok, detail};
}

// 4 -------------------------------------------------------------------------

Outcome tts_algebra() {
    const Tts a = tts(0.99, 0.99, 5);
    const Tts b = tts(0.5, 0.99, 1);
    const Tts c = tts(0.0, 0.99, 1);
    const double oracle = std::log(0.01) / std::log(0.5);
    const bool ok = a.solved() && a.value() == 5.0 && b.solved() && std::abs(b.value() - 6.6439) <= 1e-4 &&
                    std::abs(b.value() - oracle) < 1e-12 && !c.solved();
    return {ok, "tts(0.99)=" + fmt(a.value()) + " tts(0.5)=" + fmt(b.value()) +
                    (c.solved() ? " p=0 solved?" : " p=0 unsolved")};
}

// 5 -------------------------------------------------------------------------

Outcome gauge_invariance() {
    const auto t0 = std::chrono::steady_clock::now();
    Rng rng = make_stream(5, 0);
    int failures = 0;
    for (int t = 0; t < 1000; ++t) {
        const int n = 2 + static_cast<int>(uniform_index(rng, 15));
        const auto inst = random_instance(n, 0.5, rng);
        const auto gauge = random_spins(n, rng);
        const auto state = random_spins(n, rng);
        const auto gauged = gauge_transform(inst, gauge);
        SpinVector mapped(state.size());
        for (std::size_t i = 0; i < state.size(); ++i) {
            mapped[i] = static_cast<Spin>(gauge[i] * state[i]);
        }
        if (apply_gauge(gauge, state) != mapped || energy(gauged, mapped) != energy(inst, state) ||
            direct_energy(gauged, mapped) != direct_energy(inst, state)) {
            ++failures;
        }
    }
    const double dt = seconds_since(t0);
    return {failures == 0 && dt < 5, std::to_string(failures) + " failures of 1000, " + fmt(dt) + " s"};
}

// 6 -------------------------------------------------------------------------

Outcome planted_solutions() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto graph = build_chimera(2);
    int energy_mismatch = 0;
    int not_minimal = 0;
    for (int k = 0; k < 100; ++k) {
        FrustratedLoopOptions o;
        o.seed = 1000 + static_cast<std::uint64_t>(k);
        const auto inst = gen_frustrated_loops(graph, o);
        double expected = 0;
        for (int length : inst.metadata.at("loop_lengths")) {
            expected -= length - 2;
        }
        const double planted = direct_energy(inst, *inst.planted);
        if (planted != expected || inst.ground_energy != expected) {
            ++energy_mismatch;
        }
        // C_2 has 32 spins, beyond solve_exact's enumeration guard; the
        // branch-and-bound minimum is the exact check.
        const auto ex = exact_ground_energy(inst);
        if (ex.ground_energy < planted) {
            ++not_minimal;
        }
    }
    const double dt = seconds_since(t0);
    return {energy_mismatch == 0 && not_minimal == 0 && dt < 120,
            std::to_string(energy_mismatch) + " energy mismatches, " + std::to_string(not_minimal) +
                " non-minimal plantings over 100 instances, " + fmt(dt) + " s"};
}

// 7 -------------------------------------------------------------------------

/// Codeword energies reproduce the logical spectrum under `map`, their
/// ranking is preserved, decoding a codeword returns it, and the physical
/// ground states decode to a logical ground state.
struct IdentityCounts {
    int energy = 0;
    int ranking = 0;
    int roundtrip = 0;
    int argmin = 0;
};

Outcome qac_identities() {
    const auto t0 = std::chrono::steady_clock::now();
    Rng rng = make_stream(7, 0);
    IdentityCounts qac;
    IdentityCounts nqac;
    int checks = 0;
    for (int trial = 0; trial < 6; ++trial) {
        for (int N = 1; N <= 4; ++N) {
            const auto logical = complete_instance(N, rng);
            const auto logical_e = all_energies(logical);
            const double logical_min = *std::min_element(logical_e.begin(), logical_e.end());

            for (double alpha : {1.0, 0.5}) {
                const double beta = 1.5;
                const auto code = qac_linear_code(N, alpha, beta);
                const auto phys = qac_encode(logical, code);
                // three problem copies plus three penalty couplers per logical qubit
                const double offset = -3.0 * beta * N;
                std::vector<double> code_e;
                for (std::uint64_t x = 0; x < logical_e.size(); ++x) {
                    const auto s = spins_of(x, N);
                    const auto w = qac_codeword(s, code);
                    code_e.push_back(direct_energy(phys, w));
                    qac.energy += std::abs(code_e.back() - (3 * alpha * logical_e[x] + offset)) > 1e-12;
                    for (auto strat : {DecodeStrategy::Majority, DecodeStrategy::EnergyMin}) {
                        qac.roundtrip += qac_decode(w, code, strat, logical, x).logical != s;
                    }
                    ++checks;
                }
                for (std::size_t x = 0; x < code_e.size(); ++x) {
                    for (std::size_t y = 0; y < code_e.size(); ++y) {
                        qac.ranking += (logical_e[x] < logical_e[y]) != (code_e[x] < code_e[y] - 1e-12);
                    }
                }
                for (const auto& g : solve_exact(phys).ground_states) {
                    for (auto strat : {DecodeStrategy::Majority, DecodeStrategy::EnergyMin}) {
                        const auto d = qac_decode(g, code, strat, logical, 3);
                        qac.argmin += direct_energy(logical, d.logical) != logical_min;
                    }
                }
            }

            for (int C = 1; C <= 3; ++C) {
                NestedCode code;
                code.N = N;
                code.C = C;
                code.gamma = 4.0;
                const auto phys = nqac_encode(logical, code);
                const double offset = nqac_penalty_offset(code);
                const double independent_offset = -code.gamma * N * C * (C - 1) / 2.0;
                nqac.energy += offset != independent_offset;
                std::vector<double> code_e;
                for (std::uint64_t x = 0; x < logical_e.size(); ++x) {
                    const auto s = spins_of(x, N);
                    const auto w = nqac_codeword(s, code);
                    code_e.push_back(direct_energy(phys, w));
                    nqac.energy += std::abs(code_e.back() - (C * C * logical_e[x] + independent_offset)) > 1e-12;
                    for (auto strat : {DecodeStrategy::Majority, DecodeStrategy::EnergyMin}) {
                        nqac.roundtrip += nqac_decode(w, code, strat, logical, x).logical != s;
                    }
                    ++checks;
                }
                for (std::size_t x = 0; x < code_e.size(); ++x) {
                    for (std::size_t y = 0; y < code_e.size(); ++y) {
                        nqac.ranking += (logical_e[x] < logical_e[y]) != (code_e[x] < code_e[y] - 1e-12);
                    }
                }
                for (const auto& g : solve_exact(phys).ground_states) {
                    for (auto strat : {DecodeStrategy::Majority, DecodeStrategy::EnergyMin}) {
                        const auto d = nqac_decode(g, code, strat, logical, 3);
                        nqac.argmin += direct_energy(logical, d.logical) != logical_min;
                    }
                }
            }
        }
    }

    // energy_min never worse than majority on random physical samples
    int worse = 0;
    const auto logical = complete_instance(4, rng);
    const auto qcode = qac_linear_code(4, 1.0, 0.5);
    NestedCode ncode;
    ncode.N = 4;
    ncode.C = 2;
    ncode.gamma = 0.5;
    for (int t = 0; t < 10000; ++t) {
        const bool nested = t % 2 == 1;
        const int np = nested ? ncode.N * ncode.C : qcode.num_physical;
        const auto phys = random_spins(np, rng);
        const auto seed = static_cast<std::uint64_t>(t);
        const auto maj = nested ? nqac_decode(phys, ncode, DecodeStrategy::Majority, logical, seed)
                                : qac_decode(phys, qcode, DecodeStrategy::Majority, logical, seed);
        const auto em = nested ? nqac_decode(phys, ncode, DecodeStrategy::EnergyMin, logical, seed)
                               : qac_decode(phys, qcode, DecodeStrategy::EnergyMin, logical, seed);
        worse += direct_energy(logical, em.logical) > direct_energy(logical, maj.logical);
    }
    const double dt = seconds_since(t0);
    const int total = qac.energy + qac.ranking + qac.roundtrip + qac.argmin + nqac.energy + nqac.ranking +
                      nqac.roundtrip + nqac.argmin + worse;
    std::ostringstream d;
    d << checks << " codewords; qac failures energy/rank/roundtrip/argmin " << qac.energy << "/" << qac.ranking << "/"
      << qac.roundtrip << "/" << qac.argmin << ", nqac " << nqac.energy << "/" << nqac.ranking << "/"
      << nqac.roundtrip << "/" << nqac.argmin << "; energy_min worse than majority " << worse << " of 10000, "
      << fmt(dt) << " s";
    return {total == 0 && dt < 60, d.str()};
}

// 8 -------------------------------------------------------------------------

IsingInstance antiferro_chain(int n) {
    IsingInstance inst(n);
    for (int i = 0; i + 1 < n; ++i) {
        inst.set_coupler(i, i + 1, 1.0);
    }
    inst.h[0] = 0.25;  // selects one of the two Neel states
    return inst;
}

Outcome penalty_benefit() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto logical = antiferro_chain(8);
    const double ground = solve_exact(logical).ground_energy;
    SolverConfig c;
    // warm enough that success is limited by temperature, not by sweeps
    c.sweeps = 100;
    c.beta_initial = 0.1;
    c.beta_final = 1.2;
    c.repetitions = 1000;
    c.seed = 88;

    const auto base = solve_sa(logical, c);
    const double unencoded = success_prob(base, ground);

    BootstrapOptions boot;
    boot.resamples = 2000;
    boot.level = 0.95;
    boot.seed = 808;
    const std::vector<double> penalties = {0.0, 0.25, 0.5, 1.0, 2.0};
    const auto code = qac_linear_code(8, 1.0, 0.0);
    const auto scan = penalty_scan(logical, penalties, qac_family(logical, code, DecodeStrategy::Majority),
                                   solver_by_name("sa"), c, boot);
    const auto& zero = scan.points.front();
    const auto& best = scan.points[scan.best];
    const WeightedStatistic mean = weighted_mean;
    const auto rb = bayesian_bootstrap(best.hits, mean, boot.resamples, boot.level, 1);
    const auto rz = bayesian_bootstrap(zero.hits, mean, boot.resamples, boot.level, 2);
    const double lower = difference_lower_bound(rb.replicates, rz.replicates, 0.95);
    const double dt = seconds_since(t0);
    const bool budget_ok = unencoded >= 0.2 && unencoded <= 0.8;
    return {budget_ok && scan.best != 0 && lower > 0 && dt < 300,
            "unencoded p=" + fmt(unencoded) + ", p(beta=0)=" + fmt(zero.success) + ", best beta=" +
                fmt(best.penalty) + " p=" + fmt(best.success) + ", 95% lower bound of gain " + fmt(lower) + ", " +
                fmt(dt) + " s"};
}

// 9 -------------------------------------------------------------------------

/// Stub whose success probability at `sweeps` is read from `curve`.
Solver injected_solver(std::map<int, double> curve) {
    return [curve](const IsingInstance& inst, const SolverConfig& c) {
        const double p = curve.at(c.sweeps);
        SampleSet out;
        out.solver_id = "stub";
        out.seed = c.seed;
        out.sweeps = c.sweeps;
        Rng rng = make_stream(c.seed, 0);
        for (int r = 0; r < c.repetitions; ++r) {
            SpinVector s(static_cast<std::size_t>(inst.n), Spin{1});
            if (uniform01(rng) >= p) {
                s[0] = -1;
            }
            out.energies.push_back(energy(inst, s));
            out.states.push_back(std::move(s));
        }
        return out;
    };
}

Outcome optimal_tf() {
    IsingInstance inst(3);
    inst.set_coupler(0, 1, -1);
    inst.set_coupler(1, 2, -1);
    inst.ground_energy = -2;
    SolverConfig c;
    c.repetitions = 400;
    BootstrapOptions boot;
    boot.resamples = 300;
    const std::vector<int> grid = {10, 20, 40, 80, 160};
    // tts = t ln(0.01)/ln(1-p): 440, 410, 175, 298, 556
    const auto u = optimal_tf_scan({inst, inst}, {}, injected_solver({{10, 0.1}, {20, 0.2}, {40, 0.93}, {80, 0.955}, {160, 0.94}}),
                                   c, grid, 0.99, boot);
    const auto m = optimal_tf_scan({inst, inst}, {}, injected_solver({{10, 0.5}, {20, 0.5}, {40, 0.5}, {80, 0.5}, {160, 0.5}}),
                                   c, grid, 0.99, boot);
    const bool u_ok = u.optimum && *u.optimum == 2 && !u.has_flag(flags::kBoundaryOptimum);
    const bool m_ok = m.optimum && *m.optimum == 0 && m.has_flag(flags::kBoundaryOptimum);
    return {u_ok && m_ok, std::string("U-shaped optimum index ") + (u.optimum ? std::to_string(*u.optimum) : "none") +
                              (u.has_flag(flags::kBoundaryOptimum) ? " flagged" : " unflagged") +
                              "; monotone optimum index " + (m.optimum ? std::to_string(*m.optimum) : "none") +
                              (m.has_flag(flags::kBoundaryOptimum) ? " flagged" : " unflagged")};
}

// 10 ------------------------------------------------------------------------

Outcome scaling_recovery() {
    const auto t0 = std::chrono::steady_clock::now();
    Rng rng = make_stream(10, 0);
    std::normal_distribution<double> noise(0.0, 0.25);
    std::vector<double> sizes;
    std::vector<std::vector<Tts>> series;
    for (int L = 4; L <= 12; ++L) {
        sizes.push_back(L);
        std::vector<Tts> row;
        for (int k = 0; k < 40; ++k) {
            row.push_back(Tts::of(std::pow(2.0, 0.5 * L) * std::exp(noise(rng))));
        }
        series.push_back(std::move(row));
    }
    BootstrapOptions boot;
    boot.resamples = 2000;
    boot.seed = 100;
    const auto fit = scaling_fit(sizes, series, 0.5, SizeMeasure::Linear, boot);
    const double truth = 0.5 * std::log(2.0);
    const double dt = seconds_since(t0);
    const bool ok = fit.slope_interval.lower <= truth && truth <= fit.slope_interval.upper && dt < 10;
    return {ok, "slope " + fmt(fit.slope) + " CI [" + fmt(fit.slope_interval.lower) + ", " +
                    fmt(fit.slope_interval.upper) + "] truth " + fmt(truth) + ", " + fmt(dt) + " s"};
}

// 11 ------------------------------------------------------------------------

Outcome bootstrap_coverage() {
    const auto t0 = std::chrono::steady_clock::now();
    Rng rng = make_stream(11, 0);
    int covered = 0;
    for (int d = 0; d < 500; ++d) {
        std::vector<double> data(100);
        for (auto& x : data) {
            x = uniform01(rng) < 0.3 ? 1.0 : 0.0;
        }
        const auto r = bayesian_bootstrap(data, weighted_mean, 1000, 0.95, derive_seed(11, d));
        covered += r.interval.lower <= 0.3 && 0.3 <= r.interval.upper;
    }
    const double coverage = covered / 500.0;
    bool weights_ok = true;
    for (int k = 0; k < 200; ++k) {
        const auto w = dirichlet_weights(100, rng);
        double sum = 0;
        for (double x : w) {
            weights_ok = weights_ok && x > 0;
            sum += x;
        }
        weights_ok = weights_ok && std::abs(sum - 1.0) < 1e-12;
    }
    const double dt = seconds_since(t0);
    return {coverage >= 0.92 && coverage <= 0.98 && weights_ok && dt < 60,
            "coverage " + fmt(coverage) + (weights_ok ? ", weights positive and normalized" : ", bad weights") +
                ", " + fmt(dt) + " s"};
}

// 12 ------------------------------------------------------------------------

Outcome statevector_sanity() {
    Rng rng = make_stream(12, 1);
    const auto inst = random_instance(6, 0.6, rng);
    const auto amp = anneal_amplitudes(inst, default_schedule(), 5.0, 400);
    const double drift = std::abs(amp.squaredNorm() - 1.0);

    const auto sudden = anneal_statevector(inst, default_schedule(), 1e-6, 100);
    const Eigen::VectorXd uniform = Eigen::VectorXd::Constant(sudden.size(), 1.0 / static_cast<double>(sudden.size()));
    const double tv = 0.5 * (sudden - uniform).cwiseAbs().sum();

    IsingInstance pair(2);
    pair.set_coupler(0, 1, -1.0);
    pair.h = {-0.2, -0.2};  // unique ground state |00>
    const auto slow = anneal_statevector(pair, default_schedule(), 100.0, 4000);
    const double ground = slow[0];

    Eigen::VectorXcd bell = Eigen::VectorXcd::Zero(4);
    bell[0] = 1.0 / std::sqrt(2.0);
    bell[3] = 1.0 / std::sqrt(2.0);
    const double neg = negativity(bell, {0});

    const bool ok = drift < 1e-9 && tv < 1e-3 && ground >= 0.99 && std::abs(neg - 0.5) < 1e-9;
    return {ok, "norm drift " + fmt(drift) + ", sudden TV " + fmt(tv) + ", adiabatic ground " + fmt(ground) +
                    ", Bell negativity " + fmt(neg)};
}

// 13 ------------------------------------------------------------------------

int run_cli(const std::string& args, const std::string& workers) {
    setenv("QABENCH_WORKERS", workers.c_str(), 1);
    const std::string cmd = std::string(QABENCH_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    unsetenv("QABENCH_WORKERS");
    return status;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream o;
    o << in.rdbuf();
    return o.str();
}

Outcome cli_determinism() {
    const fs::path dir = fs::temp_directory_path() / ("qabench_acceptance_" + std::to_string(::getpid()));
    fs::remove_all(dir);
    fs::create_directories(dir);
    const std::string inst = (dir / "inst.json").string();
    if (run_cli("gen frustrated_loops --grid 2 --seed 5 -o " + inst, "1") != 0) {
        fs::remove_all(dir);
        return {false, "gen failed"};
    }
    std::vector<std::string> compared;
    int mismatches = 0;
    int failures = 0;
    for (const std::string solver : {"sa", "pt", "svmc", "sqa", "exact"}) {
        std::vector<std::string> outputs;
        for (const std::string workers : {"1", "4"}) {
            const auto out = (dir / (solver + "_" + workers + ".csv")).string();
            const std::string extra = solver == "exact" ? "" : " --sweeps 50 --reps 24";
            const auto target = solver == "exact" ? (dir / "small.json").string() : inst;
            if (solver == "exact" && workers == "1") {
                run_cli("gen signature --n-core 4 -o " + target, "1");
            }
            failures += run_cli("solve " + target + " --solver " + solver + " --seed 9" + extra + " -o " + out,
                                workers) != 0;
            outputs.push_back(slurp(out) + "\n--\n" + slurp(out + ".json"));
        }
        mismatches += outputs[0] != outputs[1] || outputs[0].size() < 10;
        compared.push_back(solver);
    }

    nlohmann::json manifest = {{"instances", {"inst.json"}},
                               {"solver", "sa"},
                               {"config", {{"repetitions", 20}}},
                               {"axis", {{"name", "sweeps"}, {"grid", {5, 20, 80}}}},
                               {"metric", "tts"},
                               {"p_d", 0.99},
                               {"bootstrap", {{"resamples", 100}, {"level", 0.95}}},
                               {"seed", 31}};
    std::vector<std::string> bench_outputs;
    for (const std::string workers : {"1", "4"}) {
        manifest["out"] = "bench_" + workers;
        const auto mpath = dir / ("manifest_" + workers + ".json");
        std::ofstream(mpath) << manifest.dump(2);
        failures += run_cli("bench " + mpath.string(), workers) != 0;
        const fs::path out = dir / ("bench_" + workers);
        auto report = nlohmann::json::parse(slurp(out / "report.json"), nullptr, false);
        if (report.is_object()) {
            report["provenance"].erase("manifest");  // differs only in "out"
        }
        bench_outputs.push_back(slurp(out / "report.csv") + slurp(out / "curve.csv") + report.dump());
    }
    mismatches += bench_outputs[0] != bench_outputs[1];
    fs::remove_all(dir);
    return {mismatches == 0 && failures == 0,
            "solve (sa, pt, svmc, sqa, exact) and bench with 1 vs 4 workers: " + std::to_string(mismatches) +
                " differing outputs, " + std::to_string(failures) + " failed runs"};
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria = {
        {"signature gadget structure", signature_structure},
        {"classical-model rejection on the signature gadget", signature_rejection},
        {"weak-strong probe", weak_strong},
        {"TTS algebra", tts_algebra},
        {"gauge invariance", gauge_invariance},
        {"planted solutions", planted_solutions},
        {"QAC/NQAC identities", qac_identities},
        {"penalty benefit", penalty_benefit},
        {"optimal annealing-time detection", optimal_tf},
        {"scaling fit recovery", scaling_recovery},
        {"bootstrap coverage", bootstrap_coverage},
        {"statevector sanity", statevector_sanity},
        {"CLI determinism across worker counts", cli_determinism},
    };
    int failed = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        Outcome o;
        try {
            o = criteria[k].run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += !o.pass;
        std::cout << (o.pass ? "PASS" : "FAIL") << " " << (k + 1) << " " << criteria[k].name << ": " << o.detail
                  << std::endl;
    }
    std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size() << " criteria passed"
              << std::endl;
    return failed == 0 ? 0 : 1;
}
