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

#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qabench/instances.hpp"
#include "qabench/ising.hpp"

namespace qabench {

enum class SliceReadout { Fixed, Best };
/// Random: n uniformly chosen sites per sweep. Sequential: index order.
enum class SweepOrder { Random, Sequential };

struct SolverConfig {
    int sweeps = 1000;
    int repetitions = 100;
    std::uint64_t seed = 0;

    // SA: linear ramp in beta.
    double beta_initial = 0.1;
    double beta_final = 3.0;
    SweepOrder sweep_order = SweepOrder::Random;
    bool cluster_moves = false;
    /// Spin groups flipped as single moves when cluster_moves is set.
    std::vector<std::vector<int>> clusters;

    // SVMC: fixed dimensionless temperature.
    double temperature = 0.05;

    // SQA: fixed inverse temperature and Trotter slices.
    double beta = 8.0;
    int trotter_slices = 16;
    SliceReadout readout = SliceReadout::Fixed;
    int readout_slice = 0;

    // PT: inverse temperatures, hottest first.
    std::vector<double> ladder = {0.1, 0.2, 0.4, 0.7, 1.0, 1.5, 2.0, 3.0};

    /// Throws InvalidArgument on nonpositive counts or temperatures.
    void validate() const;
};

nlohmann::json to_json(const SolverConfig& config);
SolverConfig solver_config_from_json(const nlohmann::json& j, SolverConfig base = {});

/// Measured states from repeated solver runs. energies[k] is always
/// energy(instance, states[k]).
struct SampleSet {
    std::vector<SpinVector> states;
    std::vector<double> energies;
    std::string solver_id;
    nlohmann::json parameters = nlohmann::json::object();
    std::uint64_t seed = 0;
    std::vector<double> wall_time;  ///< seconds, per repetition
    int sweeps = 0;

    std::size_t size() const { return states.size(); }
    /// Equality of the deterministic content (everything except wall_time).
    bool same_samples(const SampleSet& other) const;
};

using Solver = std::function<SampleSet(const IsingInstance&, const SolverConfig&)>;

struct ExactResult {
    double ground_energy = 0;
    std::vector<SpinVector> ground_states;
};

inline constexpr int kExactSolverMaxSpins = 30;

/// All ground states by exhaustive branch-and-bound enumeration. Throws
/// SizeLimitExceeded for n > 30.
ExactResult solve_exact(const IsingInstance& instance);

/// Exact ground energy and one minimizer; no enumeration of degenerate
/// states, so it accepts up to 64 spins (Chimera C_2 fits).
ExactResult exact_ground_energy(const IsingInstance& instance);

SampleSet solve_sa(const IsingInstance& instance, const SolverConfig& config);
SampleSet solve_svmc(const IsingInstance& instance, const SolverConfig& config,
                     const Schedule& schedule = default_schedule());
SampleSet solve_sqa(const IsingInstance& instance, const SolverConfig& config,
                    const Schedule& schedule = default_schedule());
SampleSet solve_pt(const IsingInstance& instance, const SolverConfig& config);

/// Replica-exchange acceptance min(1, exp((beta_a - beta_b)(E_a - E_b))).
double exchange_acceptance(double beta_a, double beta_b, double energy_a, double energy_b);

/// Inter-slice ferromagnetic coupling -(1/(2 beta_P)) ln tanh(beta_P A),
/// with tanh clamped to [1e-12, 1 - 1e-12].
double trotter_coupling(double beta_slice, double transverse_field);

/// Solver by name: "sa", "svmc", "sqa", "pt".
Solver solver_by_name(const std::string& name, const Schedule& schedule = default_schedule());

}  // namespace qabench
