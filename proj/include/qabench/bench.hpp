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
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "qabench/ising.hpp"
#include "qabench/solvers.hpp"

namespace qabench {

/// Time to solution (or target). An unsolved run (p = 0) carries no number;
/// it orders after every finite time.
class Tts {
public:
    static Tts of(double time) { return Tts(time); }
    static Tts unsolved() { return Tts(); }

    bool solved() const { return time_.has_value(); }
    double value() const { return time_.value(); }
    /// +inf for unsolved; for ordering and quantiles only.
    double ordering_key() const { return time_.value_or(std::numeric_limits<double>::infinity()); }
    const std::optional<double>& optional() const { return time_; }

    friend bool operator==(const Tts&, const Tts&) = default;
    friend bool operator<(const Tts& a, const Tts& b) { return a.ordering_key() < b.ordering_key(); }

private:
    Tts() = default;
    explicit Tts(double t) : time_(t) {}
    std::optional<double> time_;
};

/// Fraction of energies <= ground_energy + tolerance. Throws on empty input.
double success_prob(std::span<const double> energies, double ground_energy, double tolerance = 1e-9);
double success_prob(const SampleSet& samples, double ground_energy, double tolerance = 1e-9);

/// t_f * max(1, ln(1 - p_d) / ln(1 - p)); unsolved when p = 0.
Tts tts(double p, double p_desired, double t_f);

/// tts with p the fraction of energies at or below target_energy.
Tts ttt(std::span<const double> energies, double target_energy, double p_desired, double t_f,
        double tolerance = 1e-9);

struct StoppingResult {
    int optimal_draws = 1;
    double expected_net_reward = 0;
    /// net_reward[n-1] = E[max of n draws] - cost * n
    std::vector<double> net_reward;
};

/// With-recall stopping under the empirical distribution of `values`:
/// maximizes E[max of n draws] - cost * n over n = 1..budget (budget 0 means
/// values.size()). Ties go to the larger n.
StoppingResult stopping_reward(std::span<const double> values, double cost_per_sample, int budget = 0);

/// E[max of n iid draws] from the empirical distribution of `values`.
double expected_max_of_draws(std::span<const double> values, int draws);

struct Interval {
    double lower = 0;
    double upper = 0;
    double level = 0.95;
};

/// Weighted statistic of data; weights are positive and sum to 1.
using WeightedStatistic = std::function<double(std::span<const double> data, std::span<const double> weights)>;

double weighted_mean(std::span<const double> data, std::span<const double> weights);
/// Lower weighted quantile: smallest x whose cumulative weight reaches q.
double weighted_quantile(std::span<const double> data, std::span<const double> weights, double q);

/// Flat-Dirichlet(1, ..., 1) weights via normalized exponential draws.
std::vector<double> dirichlet_weights(std::size_t n, Rng& rng);

/// Empirical quantile with linear interpolation (type 7).
double quantile(std::vector<double> values, double q);

struct BootstrapResult {
    double estimate = 0;
    Interval interval;
    bool degenerate = false;  ///< fewer than two observations
    std::vector<double> replicates;
};

/// Bayesian bootstrap: B evaluations of `statistic` under flat-Dirichlet
/// weights, interval at the central `level` quantiles. The estimate uses
/// uniform weights; the interval is widened to contain it if needed.
BootstrapResult bayesian_bootstrap(std::span<const double> data, const WeightedStatistic& statistic,
                                   int resamples, double level, std::uint64_t seed);

struct GaugeAverageResult {
    SampleSet pooled;
    std::vector<SpinVector> gauges;
    std::vector<double> per_gauge_success;
    double success_variance = 0;
};

/// Solves `count` random gauges (the identity when count == 1), mapping
/// states back to the original instance before pooling. Gauge g uses the
/// config seed for g = 0 and derive_seed(config.seed, g) otherwise.
GaugeAverageResult gauge_average(const IsingInstance& instance, const Solver& solver, const SolverConfig& config,
                                 int count, std::uint64_t gauge_seed, std::optional<double> ground_energy = {});

/// As above with explicit gauges.
GaugeAverageResult gauge_average(const IsingInstance& instance, const Solver& solver, const SolverConfig& config,
                                 const std::vector<SpinVector>& gauges, std::optional<double> ground_energy = {});

namespace flags {
inline constexpr const char* kBoundaryOptimum = "boundary-optimum";
inline constexpr const char* kInsufficientSamples = "insufficient-samples";
inline constexpr const char* kDegenerateBootstrap = "degenerate-bootstrap";
}  // namespace flags

struct ScanPoint {
    double axis = 0;
    Tts estimate = Tts::unsolved();
    Tts lower = Tts::unsolved();
    Tts upper = Tts::unsolved();
};

struct BootstrapOptions {
    int resamples = 1000;
    double level = 0.95;
    std::uint64_t seed = 0;
};

struct TfScanResult {
    std::vector<ScanPoint> curve;
    std::optional<std::size_t> optimum;
    std::vector<std::string> flags;
    /// success[i][a]: instance i, axis point a.
    std::vector<std::vector<double>> success;
    std::vector<std::vector<Tts>> instance_tts;

    bool has_flag(const std::string& f) const;
};

/// Per-instance success indicators (1 = hit) at each axis point; the
/// bootstrap reweights instances and repetitions.
TfScanResult tf_scan_from_hits(const std::vector<double>& axis, const std::vector<std::vector<std::vector<double>>>& hits,
                               double p_desired, double percentile, const BootstrapOptions& bootstrap);

/// Runs `solver` on every instance at each sweeps value and reports the
/// percentile-over-instances TTS curve (t_f = sweeps). Ground energies come
/// from `ground_energies` when given, else each instance's ground_energy.
TfScanResult optimal_tf_scan(const std::vector<IsingInstance>& instances, const std::vector<double>& ground_energies,
                             const Solver& solver, const SolverConfig& config_template,
                             const std::vector<int>& sweeps_grid, double p_desired,
                             const BootstrapOptions& bootstrap, double percentile = 0.5);

enum class SizeMeasure { Linear, SquareRoot };

struct ScalingFit {
    double slope = 0;
    double intercept = 0;
    Interval slope_interval;
    std::vector<double> measure;
    std::vector<double> percentile_tts;
};

/// Least-squares fit of ln(TTS_q) against the size measure, where TTS_q is
/// the q-percentile over instances at each size. The slope interval comes
/// from an instance-level Bayesian bootstrap. Throws InvalidArgument for
/// fewer than three sizes or when any size holds unsolved entries.
ScalingFit scaling_fit(const std::vector<double>& sizes, const std::vector<std::vector<Tts>>& tts_by_size,
                       double percentile, SizeMeasure measure, const BootstrapOptions& bootstrap);

/// Ordinary least-squares line y = intercept + slope * x.
std::pair<double, double> fit_line(std::span<const double> x, std::span<const double> y,
                                   std::span<const double> weights = {});

struct BenchReport {
    std::string metric;
    std::optional<double> estimate;
    std::optional<double> lower;
    std::optional<double> upper;
    double level = 0.95;
    std::string axis_name;
    std::vector<ScanPoint> scan;
    std::vector<std::string> flags;
    nlohmann::json provenance = nlohmann::json::object();
};

}  // namespace qabench
