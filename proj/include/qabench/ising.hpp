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

#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qabench/common.hpp"

namespace qabench {

using SpinPair = std::pair<int, int>;

/// Ising problem E(s) = sum_i h_i s_i + sum_{i<j} J_ij s_i s_j.
///
/// Under this sign convention a ferromagnetic coupler has J < 0. Couplers
/// are keyed by (i, j) with i < j, so iteration order is canonical.
struct IsingInstance {
    int n = 0;
    std::vector<double> h;
    std::map<SpinPair, double> couplers;
    std::optional<SpinVector> planted;
    std::optional<double> ground_energy;
    nlohmann::json metadata = nlohmann::json::object();
    /// Error-suppression code description for encoded (physical) instances.
    nlohmann::json code = nullptr;

    IsingInstance() = default;
    explicit IsingInstance(int num_spins) : n(num_spins), h(static_cast<std::size_t>(num_spins), 0.0) {}

    /// Sets J_ij, overwriting any previous value.
    void set_coupler(int i, int j, double value);
    /// Adds to J_ij (creating it at zero).
    void add_coupler(int i, int j, double value);
    double coupler(int i, int j) const;
    bool has_coupler(int i, int j) const;

    /// Throws InvalidArgument if an index is out of range, a self-coupling
    /// exists, or a planted/ground-energy pair disagrees.
    void validate() const;

    double max_abs_coupler() const;
    double max_abs_field() const;

    friend bool operator==(const IsingInstance&, const IsingInstance&) = default;
};

/// Ordered pair with the smaller index first.
inline SpinPair ordered_pair(int i, int j) {
    return i < j ? SpinPair{i, j} : SpinPair{j, i};
}

double energy(const IsingInstance& instance, std::span<const Spin> state);

/// Compressed neighbor lists; spin i's neighbors are
/// neighbors[offsets[i] .. offsets[i+1]).
struct Adjacency {
    struct Entry {
        int spin;
        double coupling;
    };
    std::vector<std::size_t> offsets;
    std::vector<Entry> neighbors;

    std::span<const Entry> of(int i) const {
        return {neighbors.data() + offsets[static_cast<std::size_t>(i)],
                offsets[static_cast<std::size_t>(i) + 1] - offsets[static_cast<std::size_t>(i)]};
    }
};

Adjacency build_adjacency(const IsingInstance& instance);

/// h_i + sum_j J_ij s_j.
double local_field(const IsingInstance& instance, const Adjacency& adj,
                   std::span<const Spin> state, int i);

/// Gauge transform: h_i -> a_i h_i, J_ij -> a_i a_j J_ij, planted -> a∘planted.
IsingInstance gauge_transform(const IsingInstance& instance, std::span<const Spin> gauge);

/// Elementwise product a∘s.
SpinVector apply_gauge(std::span<const Spin> gauge, std::span<const Spin> state);

/// Divides h and J by a common factor so that |h| <= 2 and |J| <= 1. Returns
/// the factor (1 when already in range); ground_energy is rescaled with it.
double renormalize_to_device_range(IsingInstance& instance);

bool within_device_range(const IsingInstance& instance);

/// Spin state <-> basis index: bit i set means spin i is -1.
SpinVector state_from_index(std::uint64_t index, int n);
std::uint64_t index_from_state(std::span<const Spin> state);

}  // namespace qabench
