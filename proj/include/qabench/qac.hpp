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

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include <json.hpp>

#include "qabench/bench.hpp"
#include "qabench/ising.hpp"
#include "qabench/solvers.hpp"
#include "qabench/topology.hpp"

namespace qabench {

enum class PenaltyMode { Uniform, ScaledToMean };
enum class DecodeStrategy { Majority, EnergyMin };

/// Three problem qubits and an optional penalty qubit.
struct QacLogicalQubit {
    std::array<int, 3> problem{};
    std::optional<int> penalty;
};

struct QacCode {
    std::vector<QacLogicalQubit> logical_qubits;
    double alpha = 1.0;
    double beta = 0.0;
    PenaltyMode penalty_mode = PenaltyMode::Uniform;
    int num_physical = 0;

    /// Disjoint resources, alpha in (0, 1], beta >= 0, ids < num_physical.
    void validate() const;
};

/// Logical qubit i on physical 4i..4i+2 with penalty 4i+3; no hardware graph.
QacCode qac_linear_code(int num_logical, double alpha, double beta);

/// Two logical qubits per Chimera cell. Logical 2c uses vertical qubits 0-2
/// with horizontal qubit 7 as penalty; logical 2c+1 uses horizontal 4-6 with
/// vertical 3 as penalty. An inactive penalty qubit is dropped; an inactive
/// problem qubit is rejected.
QacCode qac_chimera_code(const HardwareGraph& graph, double alpha, double beta);

/// Logical edges realizable by qac_chimera_code on a full graph.
std::vector<SpinPair> qac_chimera_logical_edges(const HardwareGraph& graph);

/// One square-code block: two vertical and two horizontal qubits of a cell
/// bound into a 4-cycle. Two blocks per cell; concatenation is not modeled.
struct SquareCodeBlock {
    std::array<int, 2> vertical;
    std::array<int, 2> horizontal;
};
inline constexpr std::array<SquareCodeBlock, 2> kSquareCodeCell{{{{0, 1}, {4, 5}}, {{2, 3}, {6, 7}}}};

/// QAC encoding. Logical h_i goes as alpha*h_i on each problem qubit and
/// J_ij as alpha*J_ij on the three pairs (problem_i[k], problem_j[k]);
/// penalty couplers are -beta (times the mean incident |J| in ScaledToMean
/// mode). When `graph` is given, every physical coupler must be active in it.
/// Two logical edges needing the same physical coupler are rejected.
IsingInstance qac_encode(const IsingInstance& logical, const QacCode& code, const HardwareGraph* graph = nullptr);

/// Physical state with all problem and penalty qubits equal to their
/// logical spin.
SpinVector qac_codeword(std::span<const Spin> logical_state, const QacCode& code);

struct DecodeResult {
    SpinVector logical;
    std::vector<bool> broken;  ///< copies disagreed
    std::vector<bool> tie;     ///< majority was undecided (even copy count)
    int num_broken() const;
    int num_ties() const;
};

DecodeResult qac_decode(std::span<const Spin> physical, const QacCode& code, DecodeStrategy strategy,
                        const IsingInstance& logical, std::uint64_t seed = 0);

/// Repeatedly sets each flagged spin to the sign minimizing its local
/// logical energy, in seed-shuffled order, until a full sweep changes
/// nothing. A zero local field keeps the current value. Never raises energy.
void energy_min_refine(const IsingInstance& logical, SpinVector& state, const std::vector<bool>& flagged,
                       std::uint64_t seed);

struct NestedCode {
    int N = 0;
    int C = 1;
    double gamma = 0.0;
    std::optional<double> field_boost;  ///< defaults to C

    double boost() const { return field_boost.value_or(static_cast<double>(C)); }
    void validate() const;
    /// Physical spin of logical i, copy c.
    int index(int i, int c) const { return i * C + c; }
};

/// K_N -> K_{C N}: J_{(i,c),(j,c')} = J_ij, penalty -gamma between copies of
/// the same logical spin, h_{(i,c)} = boost * h_i. Rejects non-complete
/// logical graphs.
IsingInstance nqac_encode(const IsingInstance& logical, const NestedCode& code);

/// nqac_encode followed by minor_embed_instance with the clique embedding
/// on `graph`.
IsingInstance nqac_encode_embedded(const IsingInstance& logical, const NestedCode& code, const HardwareGraph& graph,
                                   double chain_strength);

SpinVector nqac_codeword(std::span<const Spin> logical_state, const NestedCode& code);

/// Majority over the C copies; even-C ties are flagged and resolved by the
/// local energy rule. EnergyMin additionally refines all broken spins.
DecodeResult nqac_decode(std::span<const Spin> physical, const NestedCode& code, DecodeStrategy strategy,
                         const IsingInstance& logical, std::uint64_t seed = 0);

/// C^2 E_logical + penalty offset (field_boost = C) for any codeword.
double nqac_penalty_offset(const NestedCode& code);

nlohmann::json to_json(const QacCode& code);
nlohmann::json to_json(const NestedCode& code);
QacCode qac_code_from_json(const nlohmann::json& j);
NestedCode nested_code_from_json(const nlohmann::json& j);

/// A physical problem at one penalty value and how to read it back.
struct EncodedProblem {
    IsingInstance physical;
    std::function<SpinVector(std::span<const Spin>, std::uint64_t)> decode;
};

using PenaltyEncoder = std::function<EncodedProblem(double penalty)>;

PenaltyEncoder qac_family(const IsingInstance& logical, QacCode base, DecodeStrategy strategy);
PenaltyEncoder nqac_family(const IsingInstance& logical, NestedCode base, DecodeStrategy strategy);

struct PenaltyScanPoint {
    double penalty = 0;
    double success = 0;
    Interval interval;
    std::vector<double> hits;  ///< per-repetition 0/1
};

struct PenaltyScanResult {
    std::vector<PenaltyScanPoint> points;
    std::size_t best = 0;
    bool boundary = false;
    double logical_ground_energy = 0;

    double best_penalty() const { return points.at(best).penalty; }
};

/// Solves the encoded problem at every penalty value, decodes, and measures
/// the probability of reaching the logical ground energy. Ties for the best
/// point go to the smallest penalty.
PenaltyScanResult penalty_scan(const IsingInstance& logical, const std::vector<double>& penalties,
                               const PenaltyEncoder& encoder, const Solver& solver, const SolverConfig& config,
                               const BootstrapOptions& bootstrap);

/// Temperature rescaling mu: the factor by which the unencoded problem's
/// energy scale must grow to reach `encoded_success`, found by linear
/// interpolation on the (scale, success) curve. nullopt when out of range.
std::optional<double> fit_temperature_rescaling(std::span<const double> base_scales,
                                                std::span<const double> base_success, double encoded_success);

}  // namespace qabench
