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
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qabench/ising.hpp"
#include "qabench/topology.hpp"

namespace qabench {

// Instance families. All generators are deterministic in (parameters, seed).

/// J = +-1 uniformly on every active coupler, h = 0.
IsingInstance gen_random_pm1(const HardwareGraph& graph, std::uint64_t seed);

/// J uniform on {+-1, ..., +-k}, divided by k; h = 0.
IsingInstance gen_range_k(const HardwareGraph& graph, int k, std::uint64_t seed);

/// Ring of n_core core spins (ids 0..n_core-1), each bound to one outer spin
/// (id n_core + i). All couplers -1, h_core = -1, h_outer = +1. The ground
/// space is 2^n_core cluster states (core all +1) plus the isolated all -1
/// state, at energy -2 n_core.
IsingInstance gen_signature(int n_core);

/// Two ferromagnetic K_{4,4} cells (ids 0..7 weak, 8..15 strong, Chimera
/// cell-local numbering) joined by their four horizontal couplers. The strong
/// cell has h = -1, the weak cell h = +h_L, so the global minimum is all +1
/// and the cells-opposed state is a local minimum. Requires 0 < h_L < 0.5.
IsingInstance gen_weak_strong(double h_left);

/// Spin ids of the weak-strong probe's weak and strong cells.
inline constexpr int kWeakStrongCellSize = 8;

struct FrustratedLoopOptions {
    double loop_density = 0.25;  ///< alpha: loops per active qubit
    double coupler_cap = 1.0;    ///< R: bound on accumulated |J|
    std::uint64_t seed = 0;
    std::optional<SpinVector> planted;
};

/// Planted-solution instance built from frustrated loops.
///
/// Each loop is the cycle closed by a non-backtracking random walk at its
/// first self-intersection. A loop of length L satisfies the planted state on
/// L-1 edges and violates it on one, contributing -(L-2) to the planted
/// energy, which is therefore a global minimum.
IsingInstance gen_frustrated_loops(const HardwareGraph& graph, const FrustratedLoopOptions& options);

/// Annealing schedule sampled at increasing s with linear interpolation.
class Schedule {
public:
    struct Point {
        double s;
        double a;
        double b;
    };

    /// Validates coverage of [0, 1], strictly increasing s, A nonincreasing
    /// and B nondecreasing. Throws FormatError naming the offending row
    /// (1-based, data rows only).
    explicit Schedule(std::vector<Point> points);

    const std::vector<Point>& points() const { return points_; }
    double a(double s) const;
    double b(double s) const;
    Point at(double s) const;

private:
    std::vector<Point> points_;
};

/// A(s) = 1 - s, B(s) = s, in h*GHz.
Schedule default_schedule();

/// CSV with header `s,A,B`.
Schedule load_schedule(std::istream& in);
Schedule load_schedule_file(const std::string& path);

}  // namespace qabench
