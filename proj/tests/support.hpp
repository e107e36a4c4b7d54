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

// Independent reference routines for tests: plain enumeration with no
// pruning, and small random instance builders.

#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>
#include <vector>

#include "qabench/common.hpp"
#include "qabench/ising.hpp"

namespace qabench::testing {

/// Energy by direct summation over the coupler map.
inline double direct_energy(const IsingInstance& inst, const SpinVector& s) {
    double e = 0;
    for (int i = 0; i < inst.n; ++i) {
        e += inst.h[static_cast<std::size_t>(i)] * s[static_cast<std::size_t>(i)];
    }
    for (const auto& [key, value] : inst.couplers) {
        e += value * s[static_cast<std::size_t>(key.first)] * s[static_cast<std::size_t>(key.second)];
    }
    return e;
}

struct BruteForce {
    double ground_energy = std::numeric_limits<double>::infinity();
    std::vector<std::uint64_t> ground_indices;
    std::vector<double> energies;  ///< indexed by basis index
};

inline BruteForce brute_force(const IsingInstance& inst, double tol = 1e-9) {
    BruteForce out;
    const std::uint64_t total = std::uint64_t{1} << inst.n;
    out.energies.resize(total);
    for (std::uint64_t x = 0; x < total; ++x) {
        SpinVector s(static_cast<std::size_t>(inst.n));
        for (int i = 0; i < inst.n; ++i) {
            s[static_cast<std::size_t>(i)] = ((x >> i) & 1U) ? Spin{-1} : Spin{1};
        }
        out.energies[x] = direct_energy(inst, s);
        out.ground_energy = std::min(out.ground_energy, out.energies[x]);
    }
    for (std::uint64_t x = 0; x < total; ++x) {
        if (out.energies[x] <= out.ground_energy + tol) {
            out.ground_indices.push_back(x);
        }
    }
    return out;
}

/// Erdos-Renyi instance; weights on a quarter-integer grid.
inline IsingInstance random_instance(int n, double density, std::uint64_t seed, bool fields = true) {
    Rng rng = make_stream(seed, 17);
    IsingInstance inst(n);
    for (int i = 0; i < n; ++i) {
        if (fields) {
            inst.h[static_cast<std::size_t>(i)] = std::round(uniform01(rng) * 8 - 4) / 4.0;
        }
        for (int j = i + 1; j < n; ++j) {
            if (uniform01(rng) < density) {
                inst.set_coupler(i, j, (static_cast<int>(uniform_index(rng, 8)) - 4 + 0.5) / 4.0);
            }
        }
    }
    return inst;
}

inline SpinVector random_state(int n, Rng& rng) {
    SpinVector s(static_cast<std::size_t>(n));
    for (auto& v : s) {
        v = random_spin(rng);
    }
    return s;
}

/// Sets QABENCH_WORKERS for the lifetime of the guard.
class WorkerGuard {
public:
    explicit WorkerGuard(int workers) {
        const char* old = std::getenv("QABENCH_WORKERS");
        if (old) {
            saved_ = old;
        }
        setenv("QABENCH_WORKERS", std::to_string(workers).c_str(), 1);
    }
    ~WorkerGuard() {
        if (saved_.empty()) {
            unsetenv("QABENCH_WORKERS");
        } else {
            setenv("QABENCH_WORKERS", saved_.c_str(), 1);
        }
    }

private:
    std::string saved_;
};

}  // namespace qabench::testing
