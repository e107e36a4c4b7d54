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

#include <vector>

#include <Eigen/Dense>

#include "qabench/instances.hpp"
#include "qabench/ising.hpp"

// Closed-system transverse-field Ising simulation.
//
// Basis convention: bit i of a basis index is 1 when spin i is -1 (sigma^z
// eigenvalue 1 - 2*bit). Energies are in h*GHz and times in ns; the
// propagator for a slice of length dt is exp(-i 2 pi H dt).

namespace qabench {

inline constexpr int kDenseMaxSpins = 14;
inline constexpr int kEigenPropagatorMaxSpins = 8;

/// Diagonal of the problem Hamiltonian: classical energy of each basis state.
Eigen::VectorXd problem_diagonal(const IsingInstance& instance);

/// H(s) = A(s) (-sum sigma^x) + B(s) (sum h sigma^z + sum J sigma^z sigma^z).
Eigen::MatrixXd build_hamiltonian(const IsingInstance& instance, const Schedule& schedule, double s);

struct SpectrumScan {
    std::vector<double> s;
    /// levels[g] holds the lowest k eigenvalues at s[g], ascending.
    std::vector<Eigen::VectorXd> levels;
    double min_gap = 0;
    double min_gap_s = 0;
};

SpectrumScan spectrum_scan(const IsingInstance& instance, const Schedule& schedule,
                           const std::vector<double>& s_grid, int levels);

/// Evolves the uniform superposition under H(s) over `steps` piecewise
/// constant slices (midpoint s) of total time t_f and returns |amplitude|^2
/// per basis state.
Eigen::VectorXd anneal_statevector(const IsingInstance& instance, const Schedule& schedule, double t_f,
                                   int steps);

/// Same evolution, returning the final amplitudes.
Eigen::VectorXcd anneal_amplitudes(const IsingInstance& instance, const Schedule& schedule, double t_f,
                                   int steps);

/// Negativity (||rho^{T_A}||_1 - 1) / 2 of a pure state for the subsystem
/// given by `subsystem` (spin indices). Computed from the Schmidt
/// coefficients: ||rho^{T_A}||_1 = (sum sigma_k)^2.
double negativity(const Eigen::VectorXcd& state, const std::vector<int>& subsystem);

/// Geometric mean of the negativity over all 2^{n-1} - 1 bipartitions (n <= 8).
double geometric_mean_negativity(const Eigen::VectorXcd& state);

/// Total variation distance 0.5 * sum |p - q|.
double total_variation(const Eigen::VectorXd& p, const Eigen::VectorXd& q);

}  // namespace qabench
