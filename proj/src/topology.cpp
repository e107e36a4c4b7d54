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

#include "qabench/topology.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <sstream>
#include <tuple>

namespace qabench {

std::uint64_t HardwareGraph::key(int u, int v) const {
    const auto [a, b] = ordered_pair(u, v);
    return static_cast<std::uint64_t>(a) * static_cast<std::uint64_t>(num_qubits()) + static_cast<std::uint64_t>(b);
}

HardwareGraph HardwareGraph::chimera(int grid_size, const std::set<int>& inactive_qubits,
                                     const std::set<SpinPair>& inactive_couplers) {
    if (grid_size < 1) {
        throw InvalidArgument("grid size must be positive, got " + std::to_string(grid_size));
    }
    HardwareGraph g;
    g.grid_size_ = grid_size;
    const int n = 8 * grid_size * grid_size;
    for (int q : inactive_qubits) {
        if (q < 0 || q >= n) {
            throw InvalidArgument("invalid qubit id " + std::to_string(q) + " for C_" + std::to_string(grid_size));
        }
    }
    g.qubit_active_.assign(static_cast<std::size_t>(n), true);
    for (int q : inactive_qubits) {
        g.qubit_active_[static_cast<std::size_t>(q)] = false;
    }

    auto add = [&](int u, int v) {
        const auto [a, b] = ordered_pair(u, v);
        const bool active = g.qubit_active_[static_cast<std::size_t>(a)] && g.qubit_active_[static_cast<std::size_t>(b)] &&
                            inactive_couplers.count({a, b}) == 0;
        g.coupler_index_.emplace(g.key(a, b), g.couplers_.size());
        g.couplers_.push_back({a, b, active});
    };
    for (int row = 0; row < grid_size; ++row) {
        for (int col = 0; col < grid_size; ++col) {
            for (int v = 0; v < 4; ++v) {
                for (int hz = 4; hz < 8; ++hz) {
                    add(g.qubit(row, col, v), g.qubit(row, col, hz));
                }
            }
            if (row + 1 < grid_size) {
                for (int k = 0; k < 4; ++k) {
                    add(g.qubit(row, col, k), g.qubit(row + 1, col, k));
                }
            }
            if (col + 1 < grid_size) {
                for (int k = 4; k < 8; ++k) {
                    add(g.qubit(row, col, k), g.qubit(row, col + 1, k));
                }
            }
        }
    }
    for (const auto& [a, b] : inactive_couplers) {
        if (!g.has_coupler(a, b)) {
            throw InvalidArgument("no coupler (" + std::to_string(a) + ", " + std::to_string(b) + ") in C_" +
                                  std::to_string(grid_size));
        }
    }
    std::sort(g.couplers_.begin(), g.couplers_.end(),
              [](const Coupler& x, const Coupler& y) { return std::tie(x.u, x.v) < std::tie(y.u, y.v); });
    g.coupler_index_.clear();
    g.adjacency_.assign(static_cast<std::size_t>(n), {});
    for (std::size_t c = 0; c < g.couplers_.size(); ++c) {
        const auto& cp = g.couplers_[c];
        g.coupler_index_.emplace(g.key(cp.u, cp.v), c);
        if (cp.active) {
            g.adjacency_[static_cast<std::size_t>(cp.u)].push_back(cp.v);
            g.adjacency_[static_cast<std::size_t>(cp.v)].push_back(cp.u);
        }
    }
    for (auto& nb : g.adjacency_) {
        std::sort(nb.begin(), nb.end());
    }
    return g;
}

int HardwareGraph::num_active_qubits() const {
    return static_cast<int>(std::count(qubit_active_.begin(), qubit_active_.end(), true));
}

int HardwareGraph::num_active_couplers() const {
    return static_cast<int>(std::count_if(couplers_.begin(), couplers_.end(), [](const Coupler& c) { return c.active; }));
}

bool HardwareGraph::has_coupler(int u, int v) const {
    if (!valid_qubit(u) || !valid_qubit(v) || u == v) {
        return false;
    }
    return coupler_index_.count(key(u, v)) != 0;
}

bool HardwareGraph::coupler_active(int u, int v) const {
    if (!has_coupler(u, v)) {
        return false;
    }
    return couplers_[coupler_index_.at(key(u, v))].active;
}

bool HardwareGraph::fully_active() const {
    return std::all_of(qubit_active_.begin(), qubit_active_.end(), [](bool b) { return b; }) &&
           std::all_of(couplers_.begin(), couplers_.end(), [](const Coupler& c) { return c.active; });
}

bool HardwareGraph::active_part_connected() const {
    const int n = num_qubits();
    int start = -1;
    for (int q = 0; q < n; ++q) {
        if (is_active(q)) {
            start = q;
            break;
        }
    }
    if (start < 0) {
        return true;
    }
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    std::queue<int> frontier;
    frontier.push(start);
    seen[static_cast<std::size_t>(start)] = true;
    int reached = 1;
    while (!frontier.empty()) {
        const int q = frontier.front();
        frontier.pop();
        for (int nb : neighbors(q)) {
            if (!seen[static_cast<std::size_t>(nb)]) {
                seen[static_cast<std::size_t>(nb)] = true;
                ++reached;
                frontier.push(nb);
            }
        }
    }
    return reached == num_active_qubits();
}

HardwareGraph build_chimera(int grid_size, const std::set<int>& inactive_qubits,
                            const std::set<SpinPair>& inactive_couplers) {
    return HardwareGraph::chimera(grid_size, inactive_qubits, inactive_couplers);
}

std::string to_string(EmbeddingViolation::Kind kind) {
    switch (kind) {
        case EmbeddingViolation::Kind::Overlap:
            return "overlap";
        case EmbeddingViolation::Kind::Disconnected:
            return "disconnected";
        case EmbeddingViolation::Kind::UncoveredEdge:
            return "uncovered-edge";
        case EmbeddingViolation::Kind::InactiveQubit:
            return "inactive-qubit";
        case EmbeddingViolation::Kind::InvalidQubit:
            return "invalid-qubit";
        case EmbeddingViolation::Kind::EmptyChain:
            return "empty-chain";
    }
    return "unknown";
}

namespace {

bool chain_connected(const std::vector<int>& chain, const HardwareGraph& graph) {
    if (chain.size() <= 1) {
        return true;
    }
    const std::set<int> members(chain.begin(), chain.end());
    std::set<int> seen{chain.front()};
    std::vector<int> stack{chain.front()};
    while (!stack.empty()) {
        const int q = stack.back();
        stack.pop_back();
        for (int nb : graph.neighbors(q)) {
            if (members.count(nb) && seen.insert(nb).second) {
                stack.push_back(nb);
            }
        }
    }
    return seen.size() == members.size();
}

// Lowest (u, v) active coupler with u in chain a and v in chain b.
std::optional<SpinPair> first_link(const std::vector<int>& a, const std::vector<int>& b, const HardwareGraph& graph) {
    std::optional<SpinPair> best;
    for (int u : a) {
        for (int v : b) {
            if (graph.coupler_active(u, v)) {
                const SpinPair p = ordered_pair(u, v);
                if (!best || p < *best) {
                    best = p;
                }
            }
        }
    }
    return best;
}

}  // namespace

ValidationReport validate_embedding(const Embedding& embedding, const std::vector<SpinPair>& logical_edges,
                                    const HardwareGraph& graph) {
    ValidationReport report;
    std::map<int, int> owner;
    std::vector<bool> chain_ok(embedding.chains.size(), true);
    for (std::size_t c = 0; c < embedding.chains.size(); ++c) {
        const auto& chain = embedding.chains[c];
        const int ci = static_cast<int>(c);
        if (chain.empty()) {
            report.push_back({EmbeddingViolation::Kind::EmptyChain, {ci}, -1, "chain " + std::to_string(c) + " is empty"});
            chain_ok[c] = false;
            continue;
        }
        for (int q : chain) {
            if (!graph.valid_qubit(q)) {
                report.push_back({EmbeddingViolation::Kind::InvalidQubit, {ci}, q,
                                  "chain " + std::to_string(c) + " uses nonexistent qubit " + std::to_string(q)});
                chain_ok[c] = false;
                continue;
            }
            if (!graph.is_active(q)) {
                report.push_back({EmbeddingViolation::Kind::InactiveQubit, {ci}, q,
                                  "chain " + std::to_string(c) + " uses inactive qubit " + std::to_string(q)});
            }
            auto [it, inserted] = owner.emplace(q, ci);
            if (!inserted) {
                report.push_back({EmbeddingViolation::Kind::Overlap, {it->second, ci}, q,
                                  "chains " + std::to_string(it->second) + " and " + std::to_string(c) +
                                      " share qubit " + std::to_string(q)});
            }
        }
        if (chain_ok[c] && !chain_connected(chain, graph)) {
            report.push_back({EmbeddingViolation::Kind::Disconnected, {ci}, -1,
                              "chain " + std::to_string(c) + " is not connected by active couplers"});
        }
    }
    for (const auto& [i, j] : logical_edges) {
        const bool in_range = i >= 0 && j >= 0 && static_cast<std::size_t>(i) < embedding.chains.size() &&
                              static_cast<std::size_t>(j) < embedding.chains.size();
        if (!in_range || !chain_ok[static_cast<std::size_t>(i)] || !chain_ok[static_cast<std::size_t>(j)] ||
            !first_link(embedding.chains[static_cast<std::size_t>(i)], embedding.chains[static_cast<std::size_t>(j)],
                        graph)) {
            report.push_back({EmbeddingViolation::Kind::UncoveredEdge, {i, j}, -1,
                              "no active coupler between chains " + std::to_string(i) + " and " + std::to_string(j)});
        }
    }
    return report;
}

Embedding clique_embedding(int clique_size, const HardwareGraph& graph) {
    const int s = graph.grid_size();
    if (clique_size < 1) {
        throw InvalidArgument("clique size must be positive");
    }
    if (clique_size > 4 * s) {
        throw InvalidArgument("clique size " + std::to_string(clique_size) + " exceeds capacity " + std::to_string(4 * s) +
                              " of C_" + std::to_string(s));
    }
    if (!graph.fully_active()) {
        throw InvalidArgument("clique embedding requires an unmasked Chimera graph");
    }
    Embedding emb;
    for (int v = 0; v < clique_size; ++v) {
        const int block = v / 4;
        const int k = v % 4;
        std::vector<int> chain;
        for (int col = 0; col <= block; ++col) {
            chain.push_back(graph.qubit(block, col, 4 + k));
        }
        for (int row = block; row < s; ++row) {
            chain.push_back(graph.qubit(row, block, k));
        }
        emb.chains.push_back(std::move(chain));
    }
    emb.set_uniform_strength(1.0);
    return emb;
}

std::vector<SpinPair> complete_graph_edges(int n) {
    std::vector<SpinPair> edges;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            edges.emplace_back(i, j);
        }
    }
    return edges;
}

std::vector<SpinPair> edge_list(const IsingInstance& instance) {
    std::vector<SpinPair> edges;
    edges.reserve(instance.couplers.size());
    for (const auto& [key, value] : instance.couplers) {
        edges.push_back(key);
    }
    return edges;
}

int intra_chain_coupler_count(const std::vector<int>& chain, const HardwareGraph& graph) {
    int count = 0;
    for (std::size_t a = 0; a < chain.size(); ++a) {
        for (std::size_t b = a + 1; b < chain.size(); ++b) {
            if (graph.coupler_active(chain[a], chain[b])) {
                ++count;
            }
        }
    }
    return count;
}

IsingInstance minor_embed_instance(const IsingInstance& logical, const Embedding& embedding,
                                   const HardwareGraph& graph) {
    if (embedding.chains.size() != static_cast<std::size_t>(logical.n)) {
        throw EmbeddingError("embedding has " + std::to_string(embedding.chains.size()) + " chains for " +
                                 std::to_string(logical.n) + " logical spins",
                             {});
    }
    auto report = validate_embedding(embedding, edge_list(logical), graph);
    if (!report.empty()) {
        throw EmbeddingError("invalid embedding: " + report.front().message, std::move(report));
    }
    std::vector<double> strength = embedding.chain_strength;
    if (strength.empty()) {
        strength.assign(embedding.chains.size(), logical.max_abs_coupler());
    } else if (strength.size() != embedding.chains.size()) {
        throw InvalidArgument("chain_strength must have one entry per chain");
    }

    IsingInstance physical(graph.num_qubits());
    for (std::size_t i = 0; i < embedding.chains.size(); ++i) {
        const auto& chain = embedding.chains[i];
        const double share = logical.h[i] / static_cast<double>(chain.size());
        for (int q : chain) {
            physical.h[static_cast<std::size_t>(q)] += share;
        }
        for (std::size_t a = 0; a < chain.size(); ++a) {
            for (std::size_t b = a + 1; b < chain.size(); ++b) {
                if (graph.coupler_active(chain[a], chain[b])) {
                    physical.add_coupler(chain[a], chain[b], -strength[i]);
                }
            }
        }
    }
    for (const auto& [key, value] : logical.couplers) {
        const auto link = first_link(embedding.chains[static_cast<std::size_t>(key.first)],
                                     embedding.chains[static_cast<std::size_t>(key.second)], graph);
        physical.add_coupler(link->first, link->second, value);
    }
    physical.metadata = {{"generator", "minor_embed"},
                         {"logical_n", logical.n},
                         {"chains", embedding.chains},
                         {"chain_strength", strength}};
    return physical;
}

SpinVector extend_to_chains(std::span<const Spin> logical_state, const Embedding& embedding, int num_qubits) {
    SpinVector physical(static_cast<std::size_t>(num_qubits), Spin{1});
    for (std::size_t i = 0; i < embedding.chains.size(); ++i) {
        for (int q : embedding.chains[i]) {
            physical[static_cast<std::size_t>(q)] = logical_state[i];
        }
    }
    return physical;
}

std::string embedding_to_adjacency_text(const Embedding& embedding) {
    std::ostringstream out;
    for (const auto& chain : embedding.chains) {
        for (std::size_t k = 0; k < chain.size(); ++k) {
            out << (k ? " " : "") << chain[k];
        }
        out << '\n';
    }
    return out.str();
}

}  // namespace qabench
