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

#include "qabench/quantum_sim.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <set>

namespace qabench {

namespace {

void check_size(const IsingInstance& instance) {
    if (instance.n > kDenseMaxSpins) {
        throw SizeLimitExceeded("dense simulation supports at most " + std::to_string(kDenseMaxSpins) +
                                " spins, instance has " + std::to_string(instance.n));
    }
    if (instance.n < 1) {
        throw InvalidArgument("instance has no spins");
    }
}

// y = H x without forming H: diagonal part plus -A on every single bit flip.
void apply_hamiltonian(const Eigen::VectorXd& diagonal, double a, int n, const Eigen::VectorXcd& x,
                       Eigen::VectorXcd& y) {
    y = diagonal.cwiseProduct(x);
    const Eigen::Index dim = x.size();
    for (int i = 0; i < n; ++i) {
        const Eigen::Index bit = Eigen::Index{1} << i;
        for (Eigen::Index idx = 0; idx < dim; ++idx) {
            y[idx] -= a * x[idx ^ bit];
        }
    }
}

// psi <- exp(-i * phase * H) psi by sub-stepped truncated Taylor series.
void taylor_propagate(const Eigen::VectorXd& diagonal, double a, int n, double phase, Eigen::VectorXcd& psi) {
    const double norm_bound = diagonal.cwiseAbs().maxCoeff() + std::abs(a) * n;
    const int substeps = std::max(1, static_cast<int>(std::ceil(std::abs(phase) * norm_bound / 0.5)));
    const double tau = phase / substeps;
    const std::complex<double> minus_i_tau(0.0, -tau);
    Eigen::VectorXcd term(psi.size());
    Eigen::VectorXcd next(psi.size());
    for (int step = 0; step < substeps; ++step) {
        term = psi;
        Eigen::VectorXcd sum = psi;
        for (int order = 1; order <= 40; ++order) {
            apply_hamiltonian(diagonal, a, n, term, next);
            term = next * (minus_i_tau / static_cast<double>(order));
            sum += term;
            if (term.norm() < 1e-15) {
                break;
            }
        }
        psi = sum;
    }
}

}  // namespace

Eigen::VectorXd problem_diagonal(const IsingInstance& instance) {
    check_size(instance);
    const Eigen::Index dim = Eigen::Index{1} << instance.n;
    Eigen::VectorXd diag(dim);
    for (Eigen::Index idx = 0; idx < dim; ++idx) {
        diag[idx] = energy(instance, state_from_index(static_cast<std::uint64_t>(idx), instance.n));
    }
    return diag;
}

Eigen::MatrixXd build_hamiltonian(const IsingInstance& instance, const Schedule& schedule, double s) {
    check_size(instance);
    const auto point = schedule.at(s);
    const Eigen::VectorXd diag = problem_diagonal(instance);
    const Eigen::Index dim = diag.size();
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
    h.diagonal() = point.b * diag;
    for (Eigen::Index idx = 0; idx < dim; ++idx) {
        for (int i = 0; i < instance.n; ++i) {
            h(idx, idx ^ (Eigen::Index{1} << i)) = -point.a;
        }
    }
    return h;
}

SpectrumScan spectrum_scan(const IsingInstance& instance, const Schedule& schedule, const std::vector<double>& s_grid,
                           int levels) {
    check_size(instance);
    if (levels < 2) {
        throw InvalidArgument("spectrum scan needs at least 2 levels");
    }
    if (s_grid.empty()) {
        throw InvalidArgument("spectrum scan needs a nonempty s grid");
    }
    SpectrumScan scan;
    scan.min_gap = std::numeric_limits<double>::infinity();
    for (double s : s_grid) {
        const Eigen::MatrixXd h = build_hamiltonian(instance, schedule, s);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h, Eigen::EigenvaluesOnly);
        const Eigen::Index k = std::min<Eigen::Index>(levels, solver.eigenvalues().size());
        Eigen::VectorXd lowest = solver.eigenvalues().head(k);
        const double gap = lowest[1] - lowest[0];
        if (gap < scan.min_gap) {
            scan.min_gap = gap;
            scan.min_gap_s = s;
        }
        scan.s.push_back(s);
        scan.levels.push_back(std::move(lowest));
    }
    return scan;
}

Eigen::VectorXcd anneal_amplitudes(const IsingInstance& instance, const Schedule& schedule, double t_f, int steps) {
    check_size(instance);
    if (steps < 100) {
        throw InvalidArgument("anneal needs at least 100 steps, got " + std::to_string(steps));
    }
    if (!(t_f >= 0)) {
        throw InvalidArgument("anneal time must be nonnegative");
    }
    const int n = instance.n;
    const Eigen::Index dim = Eigen::Index{1} << n;
    const Eigen::VectorXd diag = problem_diagonal(instance);
    Eigen::VectorXcd psi = Eigen::VectorXcd::Constant(dim, 1.0 / std::sqrt(static_cast<double>(dim)));
    const double dt = t_f / steps;
    const double phase = 2.0 * std::numbers::pi * dt;
    for (int k = 0; k < steps; ++k) {
        const auto point = schedule.at((k + 0.5) / steps);
        if (n <= kEigenPropagatorMaxSpins) {
            Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
            h.diagonal() = point.b * diag;
            for (Eigen::Index idx = 0; idx < dim; ++idx) {
                for (int i = 0; i < n; ++i) {
                    h(idx, idx ^ (Eigen::Index{1} << i)) = -point.a;
                }
            }
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(h);
            const Eigen::MatrixXd& v = eig.eigenvectors();
            Eigen::VectorXcd coeff = v.transpose() * psi;
            for (Eigen::Index j = 0; j < dim; ++j) {
                coeff[j] *= std::polar(1.0, -phase * eig.eigenvalues()[j]);
            }
            psi = v * coeff;
        } else {
            taylor_propagate(point.b * diag, point.a, n, phase, psi);
        }
    }
    return psi;
}

Eigen::VectorXd anneal_statevector(const IsingInstance& instance, const Schedule& schedule, double t_f, int steps) {
    return anneal_amplitudes(instance, schedule, t_f, steps).cwiseAbs2();
}

double negativity(const Eigen::VectorXcd& state, const std::vector<int>& subsystem) {
    const Eigen::Index dim = state.size();
    int n = 0;
    while ((Eigen::Index{1} << n) < dim) {
        ++n;
    }
    if ((Eigen::Index{1} << n) != dim || n < 2) {
        throw InvalidArgument("state dimension must be 2^n with n >= 2");
    }
    if (std::abs(state.norm() - 1.0) > 1e-8) {
        throw InvalidArgument("state is not normalized");
    }
    const std::set<int> part(subsystem.begin(), subsystem.end());
    if (part.empty() || static_cast<int>(part.size()) >= n || part.size() != subsystem.size() || *part.begin() < 0 ||
        *part.rbegin() >= n) {
        throw InvalidArgument("bipartition must be a nonempty proper subset of distinct spins");
    }
    std::vector<int> rest;
    for (int i = 0; i < n; ++i) {
        if (!part.count(i)) {
            rest.push_back(i);
        }
    }
    const std::vector<int> left(part.begin(), part.end());
    const Eigen::Index rows = Eigen::Index{1} << left.size();
    const Eigen::Index cols = Eigen::Index{1} << rest.size();
    Eigen::MatrixXcd m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        Eigen::Index base = 0;
        for (std::size_t b = 0; b < left.size(); ++b) {
            if ((r >> b) & 1) {
                base |= Eigen::Index{1} << left[b];
            }
        }
        for (Eigen::Index c = 0; c < cols; ++c) {
            Eigen::Index idx = base;
            for (std::size_t b = 0; b < rest.size(); ++b) {
                if ((c >> b) & 1) {
                    idx |= Eigen::Index{1} << rest[b];
                }
            }
            m(r, c) = state[idx];
        }
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    const double trace_norm_root = svd.singularValues().sum();
    const double value = (trace_norm_root * trace_norm_root - 1.0) / 2.0;
    // SVD round-off on product states
    return value < 1e-12 ? 0.0 : value;
}

double geometric_mean_negativity(const Eigen::VectorXcd& state) {
    int n = 0;
    while ((Eigen::Index{1} << n) < state.size()) {
        ++n;
    }
    if (n > 8) {
        throw SizeLimitExceeded("geometric mean negativity supports at most 8 spins");
    }
    if (n < 2) {
        throw InvalidArgument("geometric mean negativity needs at least 2 spins");
    }
    double log_sum = 0;
    int count = 0;
    const unsigned full = (1U << n) - 1U;
    for (unsigned mask = 1; mask < full; mask += 2) {
        std::vector<int> part;
        for (int i = 0; i < n; ++i) {
            if ((mask >> i) & 1U) {
                part.push_back(i);
            }
        }
        const double value = negativity(state, part);
        if (value <= 0) {
            return 0.0;
        }
        log_sum += std::log(value);
        ++count;
    }
    return std::exp(log_sum / count);
}

double total_variation(const Eigen::VectorXd& p, const Eigen::VectorXd& q) {
    if (p.size() != q.size()) {
        throw InvalidArgument("distributions differ in size");
    }
    return 0.5 * (p - q).cwiseAbs().sum();
}

}  // namespace qabench
