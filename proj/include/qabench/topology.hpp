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

#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "qabench/ising.hpp"

namespace qabench {

/// Chimera C_s: an s x s array of K_{4,4} unit cells.
///
/// Qubit id = (row * s + col) * 8 + k. Cell-local k in 0..3 is the
/// vertical partition (couples to the same k in the cell below), k in 4..7
/// the horizontal partition (couples to the same k in the cell to the right).
class HardwareGraph {
public:
    struct Coupler {
        int u;
        int v;
        bool active;
    };

    static HardwareGraph chimera(int grid_size, const std::set<int>& inactive_qubits = {},
                                 const std::set<SpinPair>& inactive_couplers = {});

    int grid_size() const { return grid_size_; }
    int num_qubits() const { return static_cast<int>(qubit_active_.size()); }
    int num_active_qubits() const;
    int num_active_couplers() const;

    bool is_active(int q) const { return qubit_active_.at(static_cast<std::size_t>(q)); }
    bool valid_qubit(int q) const { return q >= 0 && q < num_qubits(); }

    const std::vector<Coupler>& couplers() const { return couplers_; }
    bool has_coupler(int u, int v) const;
    bool coupler_active(int u, int v) const;
    /// Active neighbors of q along active couplers.
    const std::vector<int>& neighbors(int q) const { return adjacency_.at(static_cast<std::size_t>(q)); }

    bool fully_active() const;
    /// Active qubits reachable from each other along active couplers.
    bool active_part_connected() const;

    int qubit(int row, int col, int k) const { return (row * grid_size_ + col) * 8 + k; }

private:
    int grid_size_ = 0;
    std::vector<bool> qubit_active_;
    std::vector<Coupler> couplers_;
    std::unordered_map<std::uint64_t, std::size_t> coupler_index_;
    std::vector<std::vector<int>> adjacency_;

    std::uint64_t key(int u, int v) const;
};

/// Intra-cell couplers 16 s^2 plus inter-cell couplers 8 s (s - 1).
inline constexpr int chimera_coupler_count(int s) { return 16 * s * s + 8 * s * (s - 1); }

/// build_chimera: C_s with the listed qubits and couplers deactivated.
/// Throws InvalidArgument naming the first invalid qubit id.
HardwareGraph build_chimera(int grid_size, const std::set<int>& inactive_qubits = {},
                            const std::set<SpinPair>& inactive_couplers = {});

struct Embedding {
    std::vector<std::vector<int>> chains;
    std::vector<double> chain_strength;

    std::size_t size() const { return chains.size(); }
    void set_uniform_strength(double strength) { chain_strength.assign(chains.size(), strength); }
};

struct EmbeddingViolation {
    enum class Kind { Overlap, Disconnected, UncoveredEdge, InactiveQubit, InvalidQubit, EmptyChain };
    Kind kind;
    std::vector<int> chains;
    int qubit = -1;
    std::string message;
};

using ValidationReport = std::vector<EmbeddingViolation>;

std::string to_string(EmbeddingViolation::Kind kind);

ValidationReport validate_embedding(const Embedding& embedding, const std::vector<SpinPair>& logical_edges,
                                    const HardwareGraph& graph);

/// Triangular K_{4s} embedding into a full C_s, truncated to clique_size
/// chains. Chain b*4+k runs along horizontal qubit 4+k of row b from column
/// 0 to b, then down vertical qubit k of column b from row b to s-1, so
/// every chain has s+1 qubits. Default chain strength is 1.
Embedding clique_embedding(int clique_size, const HardwareGraph& graph);

std::vector<SpinPair> complete_graph_edges(int n);
std::vector<SpinPair> edge_list(const IsingInstance& instance);

class EmbeddingError : public InvalidArgument {
public:
    EmbeddingError(const std::string& what, ValidationReport report)
        : InvalidArgument(what), report_(std::move(report)) {}
    const ValidationReport& report() const { return report_; }

private:
    ValidationReport report_;
};

/// Physical instance over all graph qubits. Fields are split equally over
/// each chain; each logical coupler sits on the lowest-index physical
/// coupler between the two chains; every active coupler inside a chain gets
/// J = -chain_strength. If embedding.chain_strength is empty, the default
/// strength max|J| of the logical instance is used.
IsingInstance minor_embed_instance(const IsingInstance& logical, const Embedding& embedding,
                                   const HardwareGraph& graph);

/// Number of active couplers with both ends in the chain.
int intra_chain_coupler_count(const std::vector<int>& chain, const HardwareGraph& graph);

/// Physical state with every chain aligned to its logical spin; qubits
/// outside all chains are +1.
SpinVector extend_to_chains(std::span<const Spin> logical_state, const Embedding& embedding, int num_qubits);

/// One chain per line, space-separated qubit ids.
std::string embedding_to_adjacency_text(const Embedding& embedding);

}  // namespace qabench
