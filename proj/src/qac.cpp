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

#include "qabench/qac.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

namespace qabench {

void QacCode::validate() const {
    if (!(alpha > 0 && alpha <= 1)) {
        throw InvalidArgument("QAC alpha must lie in (0, 1]");
    }
    if (!(beta >= 0)) {
        throw InvalidArgument("QAC beta must be >= 0");
    }
    std::set<int> used;
    auto claim = [&](int q, std::size_t logical) {
        if (q < 0 || q >= num_physical) {
            throw InvalidArgument("QAC logical qubit " + std::to_string(logical) + " uses invalid physical qubit " +
                                  std::to_string(q));
        }
        if (!used.insert(q).second) {
            throw InvalidArgument("QAC physical qubit " + std::to_string(q) + " is used twice");
        }
    };
    for (std::size_t i = 0; i < logical_qubits.size(); ++i) {
        for (int q : logical_qubits[i].problem) {
            claim(q, i);
        }
        if (logical_qubits[i].penalty) {
            claim(*logical_qubits[i].penalty, i);
        }
    }
}

QacCode qac_linear_code(int num_logical, double alpha, double beta) {
    QacCode code;
    code.alpha = alpha;
    code.beta = beta;
    code.num_physical = 4 * num_logical;
    for (int i = 0; i < num_logical; ++i) {
        code.logical_qubits.push_back({{4 * i, 4 * i + 1, 4 * i + 2}, 4 * i + 3});
    }
    code.validate();
    return code;
}

QacCode qac_chimera_code(const HardwareGraph& graph, double alpha, double beta) {
    QacCode code;
    code.alpha = alpha;
    code.beta = beta;
    code.num_physical = graph.num_qubits();
    const int s = graph.grid_size();
    for (int row = 0; row < s; ++row) {
        for (int col = 0; col < s; ++col) {
            auto make = [&](std::array<int, 3> ks, int penalty_k) {
                QacLogicalQubit lq;
                for (std::size_t t = 0; t < 3; ++t) {
                    lq.problem[t] = graph.qubit(row, col, ks[t]);
                    if (!graph.is_active(lq.problem[t])) {
                        throw InvalidArgument("QAC problem qubit " + std::to_string(lq.problem[t]) + " is inactive");
                    }
                }
                const int p = graph.qubit(row, col, penalty_k);
                if (graph.is_active(p)) {
                    lq.penalty = p;
                }
                code.logical_qubits.push_back(lq);
            };
            make({0, 1, 2}, 7);
            make({4, 5, 6}, 3);
        }
    }
    code.validate();
    return code;
}

std::vector<SpinPair> qac_chimera_logical_edges(const HardwareGraph& graph) {
    const int s = graph.grid_size();
    std::vector<SpinPair> edges;
    for (int row = 0; row < s; ++row) {
        for (int col = 0; col < s; ++col) {
            const int cell = row * s + col;
            edges.emplace_back(2 * cell, 2 * cell + 1);
            if (row + 1 < s) {
                edges.emplace_back(2 * cell, 2 * ((row + 1) * s + col));
            }
            if (col + 1 < s) {
                edges.emplace_back(2 * cell + 1, 2 * (row * s + col + 1) + 1);
            }
        }
    }
    std::sort(edges.begin(), edges.end());
    return edges;
}

namespace {

std::string pair_text(int a, int b) {
    return "(" + std::to_string(a) + ", " + std::to_string(b) + ")";
}

std::vector<double> penalty_strengths(const IsingInstance& logical, const QacCode& code) {
    std::vector<double> strength(code.logical_qubits.size(), code.beta);
    if (code.penalty_mode == PenaltyMode::Uniform) {
        return strength;
    }
    std::vector<double> sum(strength.size(), 0.0);
    std::vector<int> count(strength.size(), 0);
    for (const auto& [key, value] : logical.couplers) {
        for (int v : {key.first, key.second}) {
            sum[static_cast<std::size_t>(v)] += std::abs(value);
            ++count[static_cast<std::size_t>(v)];
        }
    }
    for (std::size_t i = 0; i < strength.size(); ++i) {
        if (count[i] > 0) {
            strength[i] = code.beta * sum[i] / count[i];
        }
    }
    return strength;
}

}  // namespace

IsingInstance qac_encode(const IsingInstance& logical, const QacCode& code, const HardwareGraph* graph) {
    code.validate();
    logical.validate();
    if (code.logical_qubits.size() != static_cast<std::size_t>(logical.n)) {
        throw InvalidArgument("QAC code has " + std::to_string(code.logical_qubits.size()) + " logical qubits, instance has " +
                              std::to_string(logical.n));
    }
    if (graph && graph->num_qubits() != code.num_physical) {
        throw InvalidArgument("QAC code does not match the hardware graph size");
    }
    IsingInstance physical(code.num_physical);
    std::map<SpinPair, std::string> owner;
    auto place = [&](int u, int v, double value, const std::string& who) {
        const auto key = ordered_pair(u, v);
        auto [it, inserted] = owner.emplace(key, who);
        if (!inserted) {
            throw InvalidArgument("conflicting couplers: " + who + " and " + it->second + " both need physical coupler " +
                                  pair_text(key.first, key.second));
        }
        if (graph && !graph->coupler_active(u, v)) {
            throw InvalidArgument(who + " needs physical coupler " + pair_text(key.first, key.second) +
                                  ", which is not active");
        }
        physical.set_coupler(u, v, value);
    };

    for (std::size_t i = 0; i < code.logical_qubits.size(); ++i) {
        for (int q : code.logical_qubits[i].problem) {
            physical.h[static_cast<std::size_t>(q)] = code.alpha * logical.h[i];
        }
    }
    for (const auto& [key, value] : logical.couplers) {
        const auto& a = code.logical_qubits[static_cast<std::size_t>(key.first)];
        const auto& b = code.logical_qubits[static_cast<std::size_t>(key.second)];
        for (std::size_t k = 0; k < 3; ++k) {
            place(a.problem[k], b.problem[k], code.alpha * value, "logical edge " + pair_text(key.first, key.second));
        }
    }
    const auto strength = penalty_strengths(logical, code);
    for (std::size_t i = 0; i < code.logical_qubits.size(); ++i) {
        const auto& lq = code.logical_qubits[i];
        if (!lq.penalty || strength[i] == 0.0) {
            continue;
        }
        for (int q : lq.problem) {
            place(q, *lq.penalty, -strength[i], "penalty of logical qubit " + std::to_string(i));
        }
    }
    physical.code = to_json(code);
    physical.metadata = {{"generator", "qac_encode"}, {"logical_n", logical.n}};
    return physical;
}

SpinVector qac_codeword(std::span<const Spin> logical_state, const QacCode& code) {
    SpinVector physical(static_cast<std::size_t>(code.num_physical), Spin{1});
    for (std::size_t i = 0; i < code.logical_qubits.size(); ++i) {
        for (int q : code.logical_qubits[i].problem) {
            physical[static_cast<std::size_t>(q)] = logical_state[i];
        }
        if (code.logical_qubits[i].penalty) {
            physical[static_cast<std::size_t>(*code.logical_qubits[i].penalty)] = logical_state[i];
        }
    }
    return physical;
}

int DecodeResult::num_broken() const {
    return static_cast<int>(std::count(broken.begin(), broken.end(), true));
}

int DecodeResult::num_ties() const {
    return static_cast<int>(std::count(tie.begin(), tie.end(), true));
}

void energy_min_refine(const IsingInstance& logical, SpinVector& state, const std::vector<bool>& flagged,
                       std::uint64_t seed) {
    std::vector<int> order;
    for (std::size_t i = 0; i < flagged.size(); ++i) {
        if (flagged[i]) {
            order.push_back(static_cast<int>(i));
        }
    }
    if (order.empty()) {
        return;
    }
    const Adjacency adj = build_adjacency(logical);
    Rng rng(derive_seed(seed, 0));
    bool changed = true;
    while (changed) {
        changed = false;
        std::shuffle(order.begin(), order.end(), rng);
        for (int i : order) {
            const double f = local_field(logical, adj, state, i);
            const auto ui = static_cast<std::size_t>(i);
            if (f > 0 && state[ui] != -1) {
                state[ui] = -1;
                changed = true;
            } else if (f < 0 && state[ui] != 1) {
                state[ui] = 1;
                changed = true;
            }
        }
    }
}

DecodeResult qac_decode(std::span<const Spin> physical, const QacCode& code, DecodeStrategy strategy,
                        const IsingInstance& logical, std::uint64_t seed) {
    if (physical.size() != static_cast<std::size_t>(code.num_physical)) {
        throw InvalidArgument("sample has " + std::to_string(physical.size()) + " qubits, code needs " +
                              std::to_string(code.num_physical));
    }
    if (logical.n != static_cast<int>(code.logical_qubits.size())) {
        throw InvalidArgument("logical instance does not match the code");
    }
    DecodeResult out;
    const std::size_t n = code.logical_qubits.size();
    out.logical.resize(n);
    out.broken.assign(n, false);
    out.tie.assign(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        int sum = 0;
        for (int q : code.logical_qubits[i].problem) {
            const Spin v = physical[static_cast<std::size_t>(q)];
            if (v != 1 && v != -1) {
                throw InvalidArgument("sample entry for qubit " + std::to_string(q) + " is not +-1");
            }
            sum += v;
        }
        out.logical[i] = sum > 0 ? Spin{1} : Spin{-1};
        out.broken[i] = std::abs(sum) != 3;
    }
    if (strategy == DecodeStrategy::EnergyMin) {
        energy_min_refine(logical, out.logical, out.broken, seed);
    }
    return out;
}

void NestedCode::validate() const {
    if (N < 1) {
        throw InvalidArgument("NQAC needs N >= 1");
    }
    if (C < 1) {
        throw InvalidArgument("NQAC nesting level C must be >= 1");
    }
    if (!(gamma >= 0)) {
        throw InvalidArgument("NQAC penalty gamma must be >= 0");
    }
    if (field_boost && !std::isfinite(*field_boost)) {
        throw InvalidArgument("NQAC field boost must be finite");
    }
}

IsingInstance nqac_encode(const IsingInstance& logical, const NestedCode& code) {
    code.validate();
    logical.validate();
    if (logical.n != code.N) {
        throw InvalidArgument("NQAC code has N=" + std::to_string(code.N) + ", instance has " + std::to_string(logical.n));
    }
    for (int i = 0; i < code.N; ++i) {
        for (int j = i + 1; j < code.N; ++j) {
            if (!logical.has_coupler(i, j)) {
                throw InvalidArgument("NQAC needs a complete logical graph; coupler " + pair_text(i, j) + " is missing");
            }
        }
    }
    const int C = code.C;
    IsingInstance physical(code.N * C);
    for (int i = 0; i < code.N; ++i) {
        for (int c = 0; c < C; ++c) {
            physical.h[static_cast<std::size_t>(code.index(i, c))] = code.boost() * logical.h[static_cast<std::size_t>(i)];
            for (int c2 = c + 1; c2 < C; ++c2) {
                physical.set_coupler(code.index(i, c), code.index(i, c2), -code.gamma);
            }
        }
    }
    for (const auto& [key, value] : logical.couplers) {
        for (int c = 0; c < C; ++c) {
            for (int c2 = 0; c2 < C; ++c2) {
                physical.set_coupler(code.index(key.first, c), code.index(key.second, c2), value);
            }
        }
    }
    physical.code = to_json(code);
    physical.metadata = {{"generator", "nqac_encode"}, {"logical_n", logical.n}};
    return physical;
}

IsingInstance nqac_encode_embedded(const IsingInstance& logical, const NestedCode& code, const HardwareGraph& graph,
                                   double chain_strength) {
    const IsingInstance nested = nqac_encode(logical, code);
    Embedding emb = clique_embedding(nested.n, graph);
    emb.set_uniform_strength(chain_strength);
    IsingInstance physical = minor_embed_instance(nested, emb, graph);
    physical.code = to_json(code);
    physical.code["embedding"] = emb.chains;
    return physical;
}

SpinVector nqac_codeword(std::span<const Spin> logical_state, const NestedCode& code) {
    SpinVector physical(static_cast<std::size_t>(code.N * code.C));
    for (int i = 0; i < code.N; ++i) {
        for (int c = 0; c < code.C; ++c) {
            physical[static_cast<std::size_t>(code.index(i, c))] = logical_state[static_cast<std::size_t>(i)];
        }
    }
    return physical;
}

double nqac_penalty_offset(const NestedCode& code) {
    return -code.gamma * code.N * code.C * (code.C - 1) / 2.0;
}

DecodeResult nqac_decode(std::span<const Spin> physical, const NestedCode& code, DecodeStrategy strategy,
                         const IsingInstance& logical, std::uint64_t seed) {
    code.validate();
    if (physical.size() != static_cast<std::size_t>(code.N * code.C)) {
        throw InvalidArgument("sample has " + std::to_string(physical.size()) + " qubits, code needs " +
                              std::to_string(code.N * code.C));
    }
    if (logical.n != code.N) {
        throw InvalidArgument("logical instance does not match the code");
    }
    DecodeResult out;
    const auto n = static_cast<std::size_t>(code.N);
    out.logical.resize(n);
    out.broken.assign(n, false);
    out.tie.assign(n, false);
    for (int i = 0; i < code.N; ++i) {
        int sum = 0;
        for (int c = 0; c < code.C; ++c) {
            const Spin v = physical[static_cast<std::size_t>(code.index(i, c))];
            if (v != 1 && v != -1) {
                throw InvalidArgument("sample entry for qubit " + std::to_string(code.index(i, c)) + " is not +-1");
            }
            sum += v;
        }
        const auto ui = static_cast<std::size_t>(i);
        out.logical[ui] = sum >= 0 ? Spin{1} : Spin{-1};
        out.tie[ui] = sum == 0;
        out.broken[ui] = std::abs(sum) != code.C;
    }
    energy_min_refine(logical, out.logical, out.tie, derive_seed(seed, 1));
    if (strategy == DecodeStrategy::EnergyMin) {
        energy_min_refine(logical, out.logical, out.broken, seed);
    }
    return out;
}

nlohmann::json to_json(const QacCode& code) {
    nlohmann::json qubits = nlohmann::json::array();
    for (const auto& lq : code.logical_qubits) {
        qubits.push_back({{"problem", lq.problem},
                          {"penalty", lq.penalty ? nlohmann::json(*lq.penalty) : nlohmann::json(nullptr)}});
    }
    return {{"type", "qac"},
            {"alpha", code.alpha},
            {"beta", code.beta},
            {"penalty_mode", code.penalty_mode == PenaltyMode::Uniform ? "uniform" : "scaled_to_mean"},
            {"num_physical", code.num_physical},
            {"logical_qubits", qubits}};
}

nlohmann::json to_json(const NestedCode& code) {
    return {{"type", "nqac"},
            {"N", code.N},
            {"C", code.C},
            {"gamma", code.gamma},
            {"field_boost", code.boost()}};
}

QacCode qac_code_from_json(const nlohmann::json& j) {
    try {
        if (j.at("type") != "qac") {
            throw FormatError("code block is not a QAC code");
        }
        QacCode code;
        code.alpha = j.at("alpha").get<double>();
        code.beta = j.at("beta").get<double>();
        const auto mode = j.at("penalty_mode").get<std::string>();
        if (mode != "uniform" && mode != "scaled_to_mean") {
            throw FormatError("unknown penalty mode '" + mode + "'");
        }
        code.penalty_mode = mode == "uniform" ? PenaltyMode::Uniform : PenaltyMode::ScaledToMean;
        code.num_physical = j.at("num_physical").get<int>();
        for (const auto& q : j.at("logical_qubits")) {
            QacLogicalQubit lq;
            lq.problem = q.at("problem").get<std::array<int, 3>>();
            if (!q.at("penalty").is_null()) {
                lq.penalty = q.at("penalty").get<int>();
            }
            code.logical_qubits.push_back(lq);
        }
        code.validate();
        return code;
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("bad QAC code block: ") + e.what());
    } catch (const InvalidArgument& e) {
        throw FormatError(std::string("bad QAC code block: ") + e.what());
    }
}

NestedCode nested_code_from_json(const nlohmann::json& j) {
    try {
        if (j.at("type") != "nqac") {
            throw FormatError("code block is not an NQAC code");
        }
        NestedCode code;
        code.N = j.at("N").get<int>();
        code.C = j.at("C").get<int>();
        code.gamma = j.at("gamma").get<double>();
        if (j.contains("field_boost")) {
            code.field_boost = j.at("field_boost").get<double>();
        }
        code.validate();
        return code;
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("bad NQAC code block: ") + e.what());
    } catch (const InvalidArgument& e) {
        throw FormatError(std::string("bad NQAC code block: ") + e.what());
    }
}

PenaltyEncoder qac_family(const IsingInstance& logical, QacCode base, DecodeStrategy strategy) {
    return [logical, base, strategy](double penalty) {
        QacCode code = base;
        code.beta = penalty;
        EncodedProblem problem;
        problem.physical = qac_encode(logical, code);
        problem.decode = [logical, code, strategy](std::span<const Spin> s, std::uint64_t seed) {
            return qac_decode(s, code, strategy, logical, seed).logical;
        };
        return problem;
    };
}

PenaltyEncoder nqac_family(const IsingInstance& logical, NestedCode base, DecodeStrategy strategy) {
    return [logical, base, strategy](double penalty) {
        NestedCode code = base;
        code.gamma = penalty;
        EncodedProblem problem;
        problem.physical = nqac_encode(logical, code);
        problem.decode = [logical, code, strategy](std::span<const Spin> s, std::uint64_t seed) {
            return nqac_decode(s, code, strategy, logical, seed).logical;
        };
        return problem;
    };
}

PenaltyScanResult penalty_scan(const IsingInstance& logical, const std::vector<double>& penalties,
                               const PenaltyEncoder& encoder, const Solver& solver, const SolverConfig& config,
                               const BootstrapOptions& bootstrap) {
    if (penalties.empty()) {
        throw InvalidArgument("penalty grid is empty");
    }
    PenaltyScanResult result;
    result.logical_ground_energy = logical.n <= kExactSolverMaxSpins ? solve_exact(logical).ground_energy
                                                                     : exact_ground_energy(logical).ground_energy;
    const double tol = 1e-9 * std::max(1.0, std::abs(result.logical_ground_energy));
    for (std::size_t k = 0; k < penalties.size(); ++k) {
        const EncodedProblem problem = encoder(penalties[k]);
        const SampleSet samples = solver(problem.physical, config);
        PenaltyScanPoint point;
        point.penalty = penalties[k];
        for (std::size_t r = 0; r < samples.states.size(); ++r) {
            const SpinVector decoded = problem.decode(samples.states[r], derive_seed(config.seed, r));
            point.hits.push_back(energy(logical, decoded) <= result.logical_ground_energy + tol ? 1.0 : 0.0);
        }
        const auto boot = bayesian_bootstrap(point.hits, weighted_mean, bootstrap.resamples, bootstrap.level,
                                             derive_seed(bootstrap.seed, k));
        point.success = boot.estimate;
        point.interval = boot.interval;
        result.points.push_back(std::move(point));
    }
    for (std::size_t k = 1; k < result.points.size(); ++k) {
        if (result.points[k].success > result.points[result.best].success) {
            result.best = k;
        }
    }
    result.boundary = result.best == 0 || result.best + 1 == result.points.size();
    return result;
}

std::optional<double> fit_temperature_rescaling(std::span<const double> base_scales, std::span<const double> base_success,
                                                double encoded_success) {
    if (base_scales.size() != base_success.size() || base_scales.size() < 2) {
        throw InvalidArgument("rescaling fit needs matching curves with at least two points");
    }
    for (std::size_t k = 1; k < base_scales.size(); ++k) {
        const double lo = base_success[k - 1];
        const double hi = base_success[k];
        if ((encoded_success - lo) * (encoded_success - hi) <= 0 && lo != hi) {
            const double t = (encoded_success - lo) / (hi - lo);
            return base_scales[k - 1] + t * (base_scales[k] - base_scales[k - 1]);
        }
        if (lo == hi && lo == encoded_success) {
            return base_scales[k - 1];
        }
    }
    return std::nullopt;
}

}  // namespace qabench
