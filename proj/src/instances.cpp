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

#include "qabench/instances.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

namespace qabench {

namespace {

IsingInstance coupler_family(const HardwareGraph& graph, int k, std::uint64_t seed, const char* name) {
    IsingInstance inst(graph.num_qubits());
    Rng rng(derive_seed(seed, 0));
    for (const auto& c : graph.couplers()) {
        if (!c.active) {
            continue;
        }
        const int magnitude = 1 + static_cast<int>(uniform_index(rng, static_cast<std::size_t>(k)));
        const Spin sign = random_spin(rng);
        inst.set_coupler(c.u, c.v, sign * static_cast<double>(magnitude) / static_cast<double>(k));
    }
    inst.metadata = {{"generator", name}, {"seed", seed}, {"grid_size", graph.grid_size()}};
    if (k != 1) {
        inst.metadata["k"] = k;
    }
    return inst;
}

}  // namespace

IsingInstance gen_random_pm1(const HardwareGraph& graph, std::uint64_t seed) {
    return coupler_family(graph, 1, seed, "random_pm1");
}

IsingInstance gen_range_k(const HardwareGraph& graph, int k, std::uint64_t seed) {
    if (k < 1) {
        throw InvalidArgument("range k must be >= 1, got " + std::to_string(k));
    }
    return coupler_family(graph, k, seed, "range_k");
}

IsingInstance gen_signature(int n_core) {
    if (n_core < 3) {
        throw InvalidArgument("signature gadget needs n_core >= 3, got " + std::to_string(n_core));
    }
    IsingInstance inst(2 * n_core);
    for (int i = 0; i < n_core; ++i) {
        inst.h[static_cast<std::size_t>(i)] = -1.0;
        inst.h[static_cast<std::size_t>(n_core + i)] = 1.0;
        inst.set_coupler(i, (i + 1) % n_core, -1.0);
        inst.set_coupler(i, n_core + i, -1.0);
    }
    inst.ground_energy = -2.0 * n_core;
    inst.metadata = {{"generator", "signature"}, {"n_core", n_core}};
    return inst;
}

IsingInstance gen_weak_strong(double h_left) {
    if (!(h_left > 0.0 && h_left < 0.5)) {
        throw InvalidArgument("weak-strong probe needs 0 < h_L < 0.5, got " + std::to_string(h_left));
    }
    constexpr int cell = kWeakStrongCellSize;
    IsingInstance inst(2 * cell);
    for (int base : {0, cell}) {
        for (int v = 0; v < 4; ++v) {
            for (int hz = 4; hz < 8; ++hz) {
                inst.set_coupler(base + v, base + hz, -1.0);
            }
        }
    }
    for (int k = 4; k < 8; ++k) {
        inst.set_coupler(k, cell + k, -1.0);
    }
    for (int q = 0; q < cell; ++q) {
        inst.h[static_cast<std::size_t>(q)] = h_left;
        inst.h[static_cast<std::size_t>(cell + q)] = -1.0;
    }
    inst.planted = SpinVector(2 * cell, Spin{1});
    inst.ground_energy = energy(inst, *inst.planted);
    inst.metadata = {{"generator", "weak_strong"}, {"h_left", h_left}};
    return inst;
}

IsingInstance gen_frustrated_loops(const HardwareGraph& graph, const FrustratedLoopOptions& options) {
    const double alpha = options.loop_density;
    const double cap = options.coupler_cap;
    if (!(alpha >= 0.0) || !(cap >= 1.0)) {
        throw InvalidArgument("frustrated loops need alpha >= 0 and R >= 1");
    }
    const int n = graph.num_qubits();
    const int n_active = graph.num_active_qubits();
    if (!graph.active_part_connected()) {
        throw InvalidArgument("frustrated loops need a connected active graph");
    }
    Rng rng(derive_seed(options.seed, 0));

    SpinVector planted;
    if (options.planted) {
        if (options.planted->size() != static_cast<std::size_t>(n)) {
            throw InvalidArgument("planted state must have one entry per qubit");
        }
        planted = *options.planted;
    } else {
        planted.resize(static_cast<std::size_t>(n));
        for (auto& s : planted) {
            s = random_spin(rng);
        }
    }

    std::vector<int> starts;
    for (int q = 0; q < n; ++q) {
        if (graph.is_active(q) && graph.neighbors(q).size() >= 2) {
            starts.push_back(q);
        }
    }

    const auto loops = static_cast<long>(std::lround(alpha * n_active));
    const long reject_budget = 100 * std::max(loops, 1L);
    long rejected = 0;
    std::map<SpinPair, double> accumulated;
    double planted_energy = 0;
    std::vector<int> loop_lengths;
    const int max_walk = 2 * n;

    if (loops > 0 && starts.empty()) {
        throw InvalidArgument("graph has no cycles for frustrated loops");
    }

    for (long m = 0; m < loops;) {
        // Non-backtracking walk until the first revisit; the revisited
        // vertex closes the cycle.
        std::vector<int> walk;
        std::map<int, std::size_t> position;
        int current = starts[uniform_index(rng, starts.size())];
        int previous = -1;
        walk.push_back(current);
        position[current] = 0;
        std::vector<int> cycle;
        while (static_cast<int>(walk.size()) <= max_walk) {
            std::vector<int> options_next;
            for (int nb : graph.neighbors(current)) {
                if (nb != previous) {
                    options_next.push_back(nb);
                }
            }
            if (options_next.empty()) {
                break;
            }
            const int next = options_next[uniform_index(rng, options_next.size())];
            auto hit = position.find(next);
            if (hit != position.end()) {
                cycle.assign(walk.begin() + static_cast<std::ptrdiff_t>(hit->second), walk.end());
                break;
            }
            position[next] = walk.size();
            walk.push_back(next);
            previous = current;
            current = next;
        }
        if (cycle.size() < 3) {
            // walk too long or stuck: restart
            if (++rejected > reject_budget) {
                throw std::runtime_error("frustrated loops did not converge for alpha=" + std::to_string(alpha) +
                                         ", R=" + std::to_string(cap));
            }
            continue;
        }

        const std::size_t length = cycle.size();
        const std::size_t violated = uniform_index(rng, length);
        std::vector<std::pair<SpinPair, double>> terms;
        terms.reserve(length);
        for (std::size_t e = 0; e < length; ++e) {
            const int u = cycle[e];
            const int v = cycle[(e + 1) % length];
            const double product = planted[static_cast<std::size_t>(u)] * planted[static_cast<std::size_t>(v)];
            terms.emplace_back(ordered_pair(u, v), e == violated ? product : -product);
        }
        const bool fits = std::all_of(terms.begin(), terms.end(), [&](const auto& t) {
            auto it = accumulated.find(t.first);
            const double current_value = it == accumulated.end() ? 0.0 : it->second;
            return std::abs(current_value + t.second) <= cap;
        });
        if (!fits) {
            if (++rejected > reject_budget) {
                throw std::runtime_error("frustrated loops did not converge for alpha=" + std::to_string(alpha) +
                                         ", R=" + std::to_string(cap));
            }
            continue;
        }
        for (const auto& [key, value] : terms) {
            accumulated[key] += value;
        }
        planted_energy -= static_cast<double>(length) - 2.0;
        loop_lengths.push_back(static_cast<int>(length));
        ++m;
    }

    IsingInstance inst(n);
    for (const auto& [key, value] : accumulated) {
        if (value != 0.0) {
            inst.set_coupler(key.first, key.second, value);
        }
    }
    inst.planted = planted;
    inst.ground_energy = planted_energy;
    inst.metadata = {{"generator", "frustrated_loops"},
                     {"seed", options.seed},
                     {"grid_size", graph.grid_size()},
                     {"alpha", alpha},
                     {"R", cap},
                     {"loops", loops},
                     {"loop_lengths", loop_lengths},
                     {"rejected_loops", rejected}};
    return inst;
}

Schedule::Schedule(std::vector<Point> points) : points_(std::move(points)) {
    if (points_.size() < 2) {
        throw FormatError("schedule needs at least two rows");
    }
    if (points_.front().s != 0.0) {
        throw FormatError("schedule row 1 must start at s=0");
    }
    if (points_.back().s != 1.0) {
        throw FormatError("schedule row " + std::to_string(points_.size()) + " must end at s=1");
    }
    for (std::size_t r = 0; r < points_.size(); ++r) {
        const auto& p = points_[r];
        const std::string row = "schedule row " + std::to_string(r + 1);
        if (!std::isfinite(p.s) || !std::isfinite(p.a) || !std::isfinite(p.b) || p.a < 0 || p.b < 0) {
            throw FormatError(row + " has invalid values");
        }
        if (r == 0) {
            continue;
        }
        const auto& q = points_[r - 1];
        if (!(p.s > q.s)) {
            throw FormatError(row + ": s not strictly increasing");
        }
        if (p.a > q.a) {
            throw FormatError(row + ": A increases");
        }
        if (p.b < q.b) {
            throw FormatError(row + ": B decreases");
        }
    }
}

Schedule::Point Schedule::at(double s) const {
    s = std::clamp(s, 0.0, 1.0);
    auto upper = std::upper_bound(points_.begin(), points_.end(), s, [](double x, const Point& p) { return x < p.s; });
    if (upper == points_.end()) {
        return points_.back();
    }
    if (upper == points_.begin()) {
        return points_.front();
    }
    const auto& hi = *upper;
    const auto& lo = *(upper - 1);
    const double t = (s - lo.s) / (hi.s - lo.s);
    return {s, lo.a + t * (hi.a - lo.a), lo.b + t * (hi.b - lo.b)};
}

double Schedule::a(double s) const { return at(s).a; }
double Schedule::b(double s) const { return at(s).b; }

Schedule default_schedule() {
    return Schedule({{0.0, 1.0, 0.0}, {1.0, 0.0, 1.0}});
}

Schedule load_schedule(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) {
        throw FormatError("empty schedule file");
    }
    line.erase(std::remove_if(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); }), line.end());
    if (line != "s,A,B") {
        throw FormatError("schedule header must be 's,A,B'");
    }
    std::vector<Schedule::Point> points;
    int row = 0;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        ++row;
        std::istringstream fields(line);
        std::string cell;
        double values[3];
        int count = 0;
        while (std::getline(fields, cell, ',') && count < 3) {
            try {
                std::size_t used = 0;
                values[count] = std::stod(cell, &used);
            } catch (const std::exception&) {
                throw FormatError("schedule row " + std::to_string(row) + ": cannot parse '" + cell + "'");
            }
            ++count;
        }
        if (count != 3) {
            throw FormatError("schedule row " + std::to_string(row) + ": expected 3 columns");
        }
        points.push_back({values[0], values[1], values[2]});
    }
    return Schedule(std::move(points));
}

Schedule load_schedule_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw FormatError("cannot open schedule file " + path);
    }
    return load_schedule(in);
}

}  // namespace qabench
