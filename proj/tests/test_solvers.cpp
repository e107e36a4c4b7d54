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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "qabench/instances.hpp"
#include "qabench/solvers.hpp"
#include "qabench/topology.hpp"
#include "support.hpp"

namespace qabench {
namespace {

std::set<std::uint64_t> indices(const std::vector<SpinVector>& states) {
    std::set<std::uint64_t> out;
    for (const auto& s : states) {
        out.insert(index_from_state(s));
    }
    return out;
}

TEST(Exact, MatchesBruteForceEnumeration) {
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 2 + trial % 11;
        const bool fields = trial % 2 == 0;
        const auto inst = testing::random_instance(n, 0.45, 500 + trial, fields);
        const auto bf = testing::brute_force(inst);
        const auto ex = solve_exact(inst);
        EXPECT_NEAR(ex.ground_energy, bf.ground_energy, 1e-12) << "trial " << trial;
        EXPECT_EQ(indices(ex.ground_states), std::set<std::uint64_t>(bf.ground_indices.begin(), bf.ground_indices.end()))
            << "trial " << trial;
        const auto one = exact_ground_energy(inst);
        EXPECT_NEAR(one.ground_energy, bf.ground_energy, 1e-12);
        ASSERT_EQ(one.ground_states.size(), 1U);
        EXPECT_NEAR(energy(inst, one.ground_states[0]), bf.ground_energy, 1e-12);
    }
}

TEST(Exact, HandlesDegenerateAndEmptyInstances) {
    IsingInstance free_spins(3);
    const auto ex = solve_exact(free_spins);
    EXPECT_EQ(ex.ground_states.size(), 8U);
    EXPECT_EQ(ex.ground_energy, 0.0);
    const auto sig = solve_exact(gen_signature(4));
    EXPECT_EQ(sig.ground_states.size(), 17U);
    EXPECT_DOUBLE_EQ(sig.ground_energy, -8.0);
}

TEST(Exact, SizeGuards) {
    EXPECT_THROW(solve_exact(IsingInstance(31)), SizeLimitExceeded);
    EXPECT_THROW(exact_ground_energy(IsingInstance(65)), SizeLimitExceeded);
    EXPECT_NO_THROW(exact_ground_energy(gen_random_pm1(build_chimera(2), 1)));
}

TEST(Exact, GroundStatesSortedByIndex) {
    const auto ex = solve_exact(gen_signature(3));
    for (std::size_t k = 1; k < ex.ground_states.size(); ++k) {
        EXPECT_LT(index_from_state(ex.ground_states[k - 1]), index_from_state(ex.ground_states[k]));
    }
}

TEST(SA, FindsGroundStateOfSmallInstance) {
    const auto inst = testing::random_instance(14, 0.3, 9);
    const double ground = testing::brute_force(inst).ground_energy;
    SolverConfig c;
    c.sweeps = 500;
    c.beta_final = 8.0;
    c.repetitions = 50;
    c.seed = 4;
    const auto samples = solve_sa(inst, c);
    ASSERT_EQ(samples.size(), 50U);
    int hits = 0;
    for (std::size_t r = 0; r < samples.size(); ++r) {
        EXPECT_DOUBLE_EQ(samples.energies[r], energy(inst, samples.states[r]));
        EXPECT_GE(samples.energies[r], ground - 1e-12);
        hits += samples.energies[r] <= ground + 1e-9;
    }
    EXPECT_GT(hits, 25);
}

TEST(SA, ClusterMovesFlipWholeGroups) {
    // Two tightly bound pairs coupled antiferromagnetically: cluster moves
    // keep every sample valid and still reach the ground state.
    IsingInstance inst(4);
    inst.set_coupler(0, 1, -1);
    inst.set_coupler(2, 3, -1);
    inst.set_coupler(1, 2, 0.5);
    SolverConfig c;
    c.sweeps = 100;
    c.beta_final = 10.0;
    c.repetitions = 20;
    c.cluster_moves = true;
    c.clusters = {{0, 1}, {2, 3}};
    const auto samples = solve_sa(inst, c);
    for (double e : samples.energies) {
        EXPECT_DOUBLE_EQ(e, -2.5);
    }
    c.clusters = {{0, 9}};
    EXPECT_THROW(solve_sa(inst, c), InvalidArgument);
}

TEST(SA, TwoSpinFerromagnetReachesGround) {
    IsingInstance inst(2);
    inst.set_coupler(0, 1, -1);
    SolverConfig c;
    c.repetitions = 100;
    c.seed = 2;
    int hits = 0;
    for (double e : solve_sa(inst, c).energies) {
        hits += e == -1.0;
    }
    EXPECT_GE(hits, 99);
}

TEST(SA, FixedBetaMatchesBoltzmannWeights) {
    IsingInstance inst(2);
    inst.set_coupler(0, 1, -0.5);
    inst.h = {0.25, -0.1};
    const double beta = 1.0;
    const auto bf = testing::brute_force(inst);
    double z = 0;
    for (double e : bf.energies) {
        z += std::exp(-beta * e);
    }
    for (SweepOrder order : {SweepOrder::Random, SweepOrder::Sequential}) {
        SolverConfig c;
        c.beta_initial = beta;
        c.beta_final = beta;
        c.sweeps = 20;
        c.repetitions = 20000;
        c.seed = 17;
        c.sweep_order = order;
        const auto samples = solve_sa(inst, c);
        std::vector<double> counts(4, 0);
        for (const auto& st : samples.states) {
            counts[index_from_state(st)] += 1;
        }
        for (std::size_t k = 0; k < 4; ++k) {
            const double p = std::exp(-beta * bf.energies[k]) / z;
            const double se = std::sqrt(p * (1 - p) / c.repetitions);
            EXPECT_NEAR(counts[k] / c.repetitions, p, 3 * se) << "state " << k;
        }
    }
}

TEST(SA, ZeroSweepsGivesUniformStates) {
    const auto inst = testing::random_instance(10, 0.5, 31, false);
    SolverConfig c;
    c.sweeps = 0;
    c.repetitions = 4000;
    const auto samples = solve_sa(inst, c);
    double mean = 0;
    double sq = 0;
    for (double e : samples.energies) {
        mean += e;
        sq += e * e;
    }
    mean /= c.repetitions;
    const double se = std::sqrt((sq / c.repetitions - mean * mean) / c.repetitions);
    EXPECT_LT(std::abs(mean), 4 * se);
}

TEST(SA, SignatureFavorsIsolatedState) {
    const auto inst = gen_signature(4);
    SolverConfig c;
    c.sweeps = 20;
    c.beta_final = 3.0;
    c.repetitions = 10000;
    c.seed = 8;
    const auto samples = solve_sa(inst, c);
    const SpinVector iso(8, -1);
    int isolated = 0;
    std::map<std::uint64_t, int> cluster;
    for (std::size_t r = 0; r < samples.size(); ++r) {
        if (samples.energies[r] > -8 + 1e-9) continue;
        if (samples.states[r] == iso) {
            ++isolated;
        } else {
            ++cluster[index_from_state(samples.states[r])];
        }
    }
    int most = 0;
    for (const auto& [k, v] : cluster) {
        most = std::max(most, v);
    }
    EXPECT_GT(isolated, most);
}

TEST(Solvers, DeterministicAcrossWorkerCounts) {
    const auto inst = testing::random_instance(12, 0.4, 21);
    for (const std::string name : {"sa", "pt", "svmc", "sqa"}) {
        SolverConfig c;
        c.sweeps = 50;
        c.repetitions = 16;
        c.seed = 99;
        c.trotter_slices = 4;
        SampleSet one;
        SampleSet many;
        {
            testing::WorkerGuard g(1);
            one = solver_by_name(name)(inst, c);
        }
        {
            testing::WorkerGuard g(4);
            many = solver_by_name(name)(inst, c);
        }
        EXPECT_TRUE(one.same_samples(many)) << name;
        c.seed = 100;
        EXPECT_FALSE(one.same_samples(solver_by_name(name)(inst, c))) << name;
    }
}

TEST(Solvers, AllReachGroundOfFerromagneticChain) {
    IsingInstance chain(8);
    for (int i = 0; i + 1 < 8; ++i) {
        chain.set_coupler(i, i + 1, -1);
    }
    chain.h[0] = -0.5;
    SolverConfig c;
    c.sweeps = 400;
    c.repetitions = 20;
    c.beta = 16;
    c.trotter_slices = 8;
    for (const std::string name : {"sa", "pt", "svmc", "sqa"}) {
        const auto samples = solver_by_name(name)(chain, c);
        int hits = 0;
        for (double e : samples.energies) {
            hits += std::abs(e + 7.5) < 1e-9;
        }
        EXPECT_GE(hits, 15) << name;
    }
}

TEST(SQA, BestSliceReadoutNeverWorseThanFixed) {
    const auto inst = testing::random_instance(10, 0.5, 31);
    SolverConfig c;
    c.sweeps = 20;
    c.repetitions = 30;
    c.trotter_slices = 6;
    const auto fixed = solve_sqa(inst, c);
    c.readout = SliceReadout::Best;
    const auto best = solve_sqa(inst, c);
    for (std::size_t r = 0; r < fixed.size(); ++r) {
        EXPECT_LE(best.energies[r], fixed.energies[r] + 1e-12);
    }
    c.readout = SliceReadout::Fixed;
    c.readout_slice = 6;
    EXPECT_THROW(solve_sqa(inst, c), InvalidArgument);
    c.readout_slice = 0;
    c.trotter_slices = 1;
    EXPECT_THROW(solve_sqa(inst, c), InvalidArgument);
}

TEST(SQA, TrotterCouplingFormula) {
    EXPECT_NEAR(trotter_coupling(0.5, 1.0), -std::log(std::tanh(0.5)) / 1.0, 1e-15);
    EXPECT_GT(trotter_coupling(0.5, 1e-3), trotter_coupling(0.5, 1.0));
    // A = 0 hits the clamp and stays finite.
    EXPECT_NEAR(trotter_coupling(0.5, 0.0), -std::log(1e-12), 1e-9);
    EXPECT_TRUE(std::isfinite(trotter_coupling(1.0, 100.0)));
}

TEST(PT, ExchangeAcceptance) {
    EXPECT_DOUBLE_EQ(exchange_acceptance(1.0, 2.0, -1.0, -3.0), std::exp(-2.0));
    EXPECT_DOUBLE_EQ(exchange_acceptance(1.0, 2.0, -3.0, -1.0), 1.0);
    EXPECT_DOUBLE_EQ(exchange_acceptance(1.0, 1.0, 5.0, -5.0), 1.0);
}

TEST(PT, RejectsBadLadders) {
    const auto inst = testing::random_instance(4, 0.5, 1);
    SolverConfig c;
    c.ladder = {1.0};
    EXPECT_THROW(solve_pt(inst, c), InvalidArgument);
    c.ladder = {1.0, 0.5};
    EXPECT_THROW(solve_pt(inst, c), InvalidArgument);
}

TEST(Config, ValidationAndJsonRoundTrip) {
    SolverConfig c;
    c.sweeps = 7;
    c.seed = 123456789012345ULL;
    c.readout = SliceReadout::Best;
    c.ladder = {0.5, 1.5};
    c.sweep_order = SweepOrder::Sequential;
    const auto back = solver_config_from_json(to_json(c));
    EXPECT_EQ(to_json(back), to_json(c));
    SolverConfig bad;
    bad.repetitions = 0;
    EXPECT_THROW(bad.validate(), InvalidArgument);
    bad = SolverConfig{};
    bad.temperature = 0;
    EXPECT_THROW(bad.validate(), InvalidArgument);
    EXPECT_THROW(solver_config_from_json(nlohmann::json::array()), FormatError);
    EXPECT_THROW(solver_config_from_json({{"readout", "middle"}}), FormatError);
    EXPECT_THROW(solver_config_from_json({{"sweep_order", "spiral"}}), FormatError);
    EXPECT_THROW(solver_by_name("quantum"), InvalidArgument);
}

}  // namespace
}  // namespace qabench
