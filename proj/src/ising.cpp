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

#include "qabench/ising.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qabench {

void IsingInstance::set_coupler(int i, int j, double value) {
    if (i == j) {
        throw InvalidArgument("self-coupling on spin " + std::to_string(i));
    }
    couplers[ordered_pair(i, j)] = value;
}

void IsingInstance::add_coupler(int i, int j, double value) {
    if (i == j) {
        throw InvalidArgument("self-coupling on spin " + std::to_string(i));
    }
    couplers[ordered_pair(i, j)] += value;
}

double IsingInstance::coupler(int i, int j) const {
    auto it = couplers.find(ordered_pair(i, j));
    return it == couplers.end() ? 0.0 : it->second;
}

bool IsingInstance::has_coupler(int i, int j) const {
    return couplers.count(ordered_pair(i, j)) != 0;
}

void IsingInstance::validate() const {
    if (n < 0 || h.size() != static_cast<std::size_t>(n)) {
        throw InvalidArgument("field vector has " + std::to_string(h.size()) + " entries for n=" + std::to_string(n));
    }
    for (const auto& [key, value] : couplers) {
        const auto [i, j] = key;
        if (i < 0 || j >= n || i >= j) {
            throw InvalidArgument("invalid coupler (" + std::to_string(i) + ", " + std::to_string(j) + ")");
        }
        if (!std::isfinite(value)) {
            throw InvalidArgument("non-finite coupler value");
        }
    }
    if (planted) {
        if (planted->size() != static_cast<std::size_t>(n)) {
            throw InvalidArgument("planted state has wrong length");
        }
        for (Spin s : *planted) {
            if (s != 1 && s != -1) {
                throw InvalidArgument("planted state entries must be +-1");
            }
        }
        if (ground_energy) {
            const double e = energy(*this, *planted);
            if (std::abs(e - *ground_energy) > 1e-9 * std::max(1.0, std::abs(e))) {
                throw InvalidArgument("planted energy " + std::to_string(e) + " differs from ground_energy " +
                                      std::to_string(*ground_energy));
            }
        }
    }
}

double IsingInstance::max_abs_coupler() const {
    double m = 0;
    for (const auto& [key, value] : couplers) {
        m = std::max(m, std::abs(value));
    }
    return m;
}

double IsingInstance::max_abs_field() const {
    double m = 0;
    for (double v : h) {
        m = std::max(m, std::abs(v));
    }
    return m;
}

double energy(const IsingInstance& instance, std::span<const Spin> state) {
    if (state.size() != static_cast<std::size_t>(instance.n)) {
        throw InvalidArgument("state has " + std::to_string(state.size()) + " spins, instance has " +
                              std::to_string(instance.n));
    }
    double e = 0;
    for (std::size_t i = 0; i < state.size(); ++i) {
        e += instance.h[i] * state[i];
    }
    for (const auto& [key, value] : instance.couplers) {
        e += value * state[static_cast<std::size_t>(key.first)] * state[static_cast<std::size_t>(key.second)];
    }
    return e;
}

Adjacency build_adjacency(const IsingInstance& instance) {
    Adjacency adj;
    const auto n = static_cast<std::size_t>(instance.n);
    std::vector<std::size_t> degree(n, 0);
    for (const auto& [key, value] : instance.couplers) {
        ++degree[static_cast<std::size_t>(key.first)];
        ++degree[static_cast<std::size_t>(key.second)];
    }
    adj.offsets.assign(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) {
        adj.offsets[i + 1] = adj.offsets[i] + degree[i];
    }
    adj.neighbors.resize(adj.offsets[n]);
    std::vector<std::size_t> fill(adj.offsets.begin(), adj.offsets.end() - 1);
    for (const auto& [key, value] : instance.couplers) {
        const auto [i, j] = key;
        adj.neighbors[fill[static_cast<std::size_t>(i)]++] = {j, value};
        adj.neighbors[fill[static_cast<std::size_t>(j)]++] = {i, value};
    }
    return adj;
}

double local_field(const IsingInstance& instance, const Adjacency& adj, std::span<const Spin> state, int i) {
    double f = instance.h[static_cast<std::size_t>(i)];
    for (const auto& e : adj.of(i)) {
        f += e.coupling * state[static_cast<std::size_t>(e.spin)];
    }
    return f;
}

IsingInstance gauge_transform(const IsingInstance& instance, std::span<const Spin> gauge) {
    if (gauge.size() != static_cast<std::size_t>(instance.n)) {
        throw InvalidArgument("gauge has " + std::to_string(gauge.size()) + " entries, instance has " +
                              std::to_string(instance.n));
    }
    IsingInstance out = instance;
    for (std::size_t i = 0; i < gauge.size(); ++i) {
        out.h[i] = gauge[i] * instance.h[i];
    }
    for (auto& [key, value] : out.couplers) {
        value *= gauge[static_cast<std::size_t>(key.first)] * gauge[static_cast<std::size_t>(key.second)];
    }
    if (instance.planted) {
        out.planted = apply_gauge(gauge, *instance.planted);
    }
    return out;
}

SpinVector apply_gauge(std::span<const Spin> gauge, std::span<const Spin> state) {
    if (gauge.size() != state.size()) {
        throw InvalidArgument("gauge and state lengths differ");
    }
    SpinVector out(state.size());
    for (std::size_t i = 0; i < state.size(); ++i) {
        out[i] = static_cast<Spin>(gauge[i] * state[i]);
    }
    return out;
}

double renormalize_to_device_range(IsingInstance& instance) {
    const double factor = std::max({1.0, instance.max_abs_field() / 2.0, instance.max_abs_coupler()});
    if (factor == 1.0) {
        return 1.0;
    }
    for (double& v : instance.h) {
        v /= factor;
    }
    for (auto& [key, value] : instance.couplers) {
        value /= factor;
    }
    if (instance.ground_energy) {
        *instance.ground_energy /= factor;
    }
    return factor;
}

bool within_device_range(const IsingInstance& instance) {
    return instance.max_abs_field() <= 2.0 && instance.max_abs_coupler() <= 1.0;
}

SpinVector state_from_index(std::uint64_t index, int n) {
    SpinVector s(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        s[static_cast<std::size_t>(i)] = ((index >> i) & 1U) ? Spin{-1} : Spin{1};
    }
    return s;
}

std::uint64_t index_from_state(std::span<const Spin> state) {
    std::uint64_t index = 0;
    for (std::size_t i = 0; i < state.size(); ++i) {
        if (state[i] < 0) {
            index |= std::uint64_t{1} << i;
        }
    }
    return index;
}

}  // namespace qabench
