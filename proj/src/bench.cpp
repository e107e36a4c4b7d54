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

#include "qabench/bench.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace qabench {

double success_prob(std::span<const double> energies, double ground_energy, double tolerance) {
    if (energies.empty()) {
        throw InvalidArgument("success probability of an empty sample set");
    }
    const auto hits = std::count_if(energies.begin(), energies.end(),
                                    [&](double e) { return e <= ground_energy + tolerance; });
    return static_cast<double>(hits) / static_cast<double>(energies.size());
}

double success_prob(const SampleSet& samples, double ground_energy, double tolerance) {
    return success_prob(samples.energies, ground_energy, tolerance);
}

Tts tts(double p, double p_desired, double t_f) {
    if (!(p >= 0 && p <= 1)) {
        throw InvalidArgument("success probability must lie in [0, 1]");
    }
    if (!(p_desired > 0 && p_desired < 1)) {
        throw InvalidArgument("desired probability must lie in (0, 1)");
    }
    if (!(t_f > 0)) {
        throw InvalidArgument("run time must be positive");
    }
    if (p == 0) {
        return Tts::unsolved();
    }
    if (p == 1) {
        return Tts::of(t_f);
    }
    return Tts::of(t_f * std::max(1.0, std::log1p(-p_desired) / std::log1p(-p)));
}

Tts ttt(std::span<const double> energies, double target_energy, double p_desired, double t_f, double tolerance) {
    return tts(success_prob(energies, target_energy, tolerance), p_desired, t_f);
}

double expected_max_of_draws(std::span<const double> values, int draws) {
    if (values.empty() || draws < 1) {
        throw InvalidArgument("expected maximum needs values and at least one draw");
    }
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const double m = static_cast<double>(sorted.size());
    double expected = 0;
    double previous_cdf = 0;
    for (std::size_t k = 0; k < sorted.size(); ++k) {
        const double cdf = std::pow(static_cast<double>(k + 1) / m, draws);
        expected += sorted[k] * (cdf - previous_cdf);
        previous_cdf = cdf;
    }
    return expected;
}

StoppingResult stopping_reward(std::span<const double> values, double cost_per_sample, int budget) {
    if (values.empty()) {
        throw InvalidArgument("stopping reward needs at least one value");
    }
    if (cost_per_sample < 0) {
        throw InvalidArgument("cost per sample must be nonnegative");
    }
    if (budget <= 0) {
        budget = static_cast<int>(values.size());
    }
    StoppingResult result;
    result.net_reward.reserve(static_cast<std::size_t>(budget));
    double best = -std::numeric_limits<double>::infinity();
    for (int n = 1; n <= budget; ++n) {
        const double net = expected_max_of_draws(values, n) - cost_per_sample * n;
        result.net_reward.push_back(net);
        if (net >= best) {
            best = net;
            result.optimal_draws = n;
        }
    }
    result.expected_net_reward = best;
    return result;
}

double weighted_mean(std::span<const double> data, std::span<const double> weights) {
    double sum = 0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        sum += data[i] * weights[i];
    }
    return sum;
}

double weighted_quantile(std::span<const double> data, std::span<const double> weights, double q) {
    if (data.empty() || data.size() != weights.size()) {
        throw InvalidArgument("weighted quantile needs matching nonempty data and weights");
    }
    std::vector<std::size_t> order(data.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return data[a] < data[b]; });
    double cumulative = 0;
    for (std::size_t idx : order) {
        cumulative += weights[idx];
        if (cumulative >= q - 1e-12) {
            return data[idx];
        }
    }
    return data[order.back()];
}

std::vector<double> dirichlet_weights(std::size_t n, Rng& rng) {
    std::vector<double> w(n);
    double total = 0;
    for (auto& v : w) {
        // u in (0, 1) strictly, so every draw is positive and finite
        const double u = (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
        v = -std::log(u);
        total += v;
    }
    for (auto& v : w) {
        v /= total;
    }
    return w;
}

double quantile(std::vector<double> values, double q) {
    if (values.empty()) {
        throw InvalidArgument("quantile of empty data");
    }
    std::sort(values.begin(), values.end());
    const double pos = q * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = static_cast<std::size_t>(std::ceil(pos));
    if (lo == hi || values[lo] == values[hi]) {
        return values[lo];
    }
    return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

namespace {

std::vector<double> uniform_weights(std::size_t n) {
    return std::vector<double>(n, 1.0 / static_cast<double>(n));
}

void check_level(double level) {
    if (!(level > 0 && level < 1)) {
        throw InvalidArgument("interval level must lie in (0, 1)");
    }
}

// Nearest-rank bounds; safe when replicates contain +inf.
std::pair<double, double> rank_interval(std::vector<double> replicates, double level) {
    std::sort(replicates.begin(), replicates.end());
    const double tail = (1.0 - level) / 2.0;
    const double last = static_cast<double>(replicates.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(tail * last));
    const auto hi = static_cast<std::size_t>(std::ceil((1.0 - tail) * last));
    return {replicates[lo], replicates[hi]};
}

Tts tts_from_key(double key) {
    return std::isinf(key) ? Tts::unsolved() : Tts::of(key);
}

}  // namespace

BootstrapResult bayesian_bootstrap(std::span<const double> data, const WeightedStatistic& statistic, int resamples,
                                   double level, std::uint64_t seed) {
    check_level(level);
    if (resamples < 100) {
        throw InvalidArgument("bootstrap needs at least 100 resamples");
    }
    BootstrapResult result;
    result.interval.level = level;
    if (data.empty()) {
        result.degenerate = true;
        result.estimate = std::numeric_limits<double>::quiet_NaN();
        result.interval.lower = result.interval.upper = result.estimate;
        return result;
    }
    const auto uniform = uniform_weights(data.size());
    result.estimate = statistic(data, uniform);
    if (data.size() < 2) {
        result.degenerate = true;
        result.interval.lower = result.interval.upper = result.estimate;
        return result;
    }
    Rng rng(derive_seed(seed, 0));
    result.replicates.reserve(static_cast<std::size_t>(resamples));
    for (int b = 0; b < resamples; ++b) {
        const auto w = dirichlet_weights(data.size(), rng);
        result.replicates.push_back(statistic(data, w));
    }
    const double tail = (1.0 - level) / 2.0;
    result.interval.lower = std::min(quantile(result.replicates, tail), result.estimate);
    result.interval.upper = std::max(quantile(result.replicates, 1.0 - tail), result.estimate);
    return result;
}

GaugeAverageResult gauge_average(const IsingInstance& instance, const Solver& solver, const SolverConfig& config,
                                 int count, std::uint64_t gauge_seed, std::optional<double> ground_energy) {
    if (count < 1) {
        throw InvalidArgument("gauge count must be >= 1");
    }
    std::vector<SpinVector> gauges;
    if (count == 1) {
        gauges.emplace_back(static_cast<std::size_t>(instance.n), Spin{1});
    } else {
        for (int g = 0; g < count; ++g) {
            Rng rng = make_stream(gauge_seed, static_cast<std::uint64_t>(g));
            SpinVector a(static_cast<std::size_t>(instance.n));
            for (auto& v : a) {
                v = random_spin(rng);
            }
            gauges.push_back(std::move(a));
        }
    }
    return gauge_average(instance, solver, config, gauges, ground_energy);
}

GaugeAverageResult gauge_average(const IsingInstance& instance, const Solver& solver, const SolverConfig& config,
                                 const std::vector<SpinVector>& gauges, std::optional<double> ground_energy) {
    if (gauges.empty()) {
        throw InvalidArgument("gauge list is empty");
    }
    GaugeAverageResult result;
    result.gauges = gauges;
    std::vector<SampleSet> per_gauge(gauges.size());
    for (std::size_t g = 0; g < gauges.size(); ++g) {
        SolverConfig cfg = config;
        cfg.seed = g == 0 ? config.seed : derive_seed(config.seed, g);
        const IsingInstance transformed = gauge_transform(instance, gauges[g]);
        SampleSet samples = solver(transformed, cfg);
        for (std::size_t r = 0; r < samples.states.size(); ++r) {
            samples.states[r] = apply_gauge(gauges[g], samples.states[r]);
            samples.energies[r] = energy(instance, samples.states[r]);
        }
        per_gauge[g] = std::move(samples);
    }

    SampleSet& pooled = result.pooled;
    pooled = per_gauge.front();
    for (std::size_t g = 1; g < per_gauge.size(); ++g) {
        const auto& s = per_gauge[g];
        pooled.states.insert(pooled.states.end(), s.states.begin(), s.states.end());
        pooled.energies.insert(pooled.energies.end(), s.energies.begin(), s.energies.end());
        pooled.wall_time.insert(pooled.wall_time.end(), s.wall_time.begin(), s.wall_time.end());
    }

    double ground = 0;
    if (ground_energy) {
        ground = *ground_energy;
    } else if (instance.ground_energy) {
        ground = *instance.ground_energy;
    } else {
        ground = *std::min_element(pooled.energies.begin(), pooled.energies.end());
    }
    double mean = 0;
    for (const auto& s : per_gauge) {
        result.per_gauge_success.push_back(success_prob(s, ground));
        mean += result.per_gauge_success.back();
    }
    mean /= static_cast<double>(per_gauge.size());
    double var = 0;
    for (double p : result.per_gauge_success) {
        var += (p - mean) * (p - mean);
    }
    result.success_variance = var / static_cast<double>(per_gauge.size());
    return result;
}

bool TfScanResult::has_flag(const std::string& f) const {
    return std::find(flags.begin(), flags.end(), f) != flags.end();
}

TfScanResult tf_scan_from_hits(const std::vector<double>& axis, const std::vector<std::vector<std::vector<double>>>& hits,
                               double p_desired, double percentile, const BootstrapOptions& bootstrap) {
    if (hits.empty()) {
        throw InvalidArgument("scan needs at least one instance");
    }
    check_level(bootstrap.level);
    const std::size_t n_axis = axis.size();
    const std::size_t n_inst = hits.size();
    for (const auto& per_instance : hits) {
        if (per_instance.size() != n_axis) {
            throw InvalidArgument("hit table does not match the axis");
        }
        for (const auto& reps : per_instance) {
            if (reps.empty()) {
                throw InvalidArgument("scan point without repetitions");
            }
        }
    }

    TfScanResult result;
    result.success.assign(n_inst, std::vector<double>(n_axis));
    result.instance_tts.assign(n_inst, std::vector<Tts>(n_axis, Tts::unsolved()));
    for (std::size_t i = 0; i < n_inst; ++i) {
        for (std::size_t a = 0; a < n_axis; ++a) {
            const auto& reps = hits[i][a];
            const double p = std::accumulate(reps.begin(), reps.end(), 0.0) / static_cast<double>(reps.size());
            result.success[i][a] = p;
            result.instance_tts[i][a] = tts(p, p_desired, axis[a]);
        }
    }

    const auto inst_uniform = uniform_weights(n_inst);
    std::vector<std::vector<double>> replicates(n_axis);
    Rng rng(derive_seed(bootstrap.seed, 0));
    for (int b = 0; b < bootstrap.resamples; ++b) {
        const auto inst_w = dirichlet_weights(n_inst, rng);
        for (std::size_t a = 0; a < n_axis; ++a) {
            std::vector<double> keys(n_inst);
            for (std::size_t i = 0; i < n_inst; ++i) {
                const auto& reps = hits[i][a];
                const auto rep_w = dirichlet_weights(reps.size(), rng);
                const double p = std::clamp(weighted_mean(reps, rep_w), 0.0, 1.0);
                keys[i] = tts(p, p_desired, axis[a]).ordering_key();
            }
            replicates[a].push_back(weighted_quantile(keys, inst_w, percentile));
        }
    }

    for (std::size_t a = 0; a < n_axis; ++a) {
        std::vector<double> keys(n_inst);
        for (std::size_t i = 0; i < n_inst; ++i) {
            keys[i] = result.instance_tts[i][a].ordering_key();
        }
        const double estimate = weighted_quantile(keys, inst_uniform, percentile);
        ScanPoint point;
        point.axis = axis[a];
        point.estimate = tts_from_key(estimate);
        if (!replicates[a].empty()) {
            auto [lo, hi] = rank_interval(replicates[a], bootstrap.level);
            point.lower = tts_from_key(std::min(lo, estimate));
            point.upper = tts_from_key(std::max(hi, estimate));
        } else {
            point.lower = point.upper = point.estimate;
        }
        result.curve.push_back(point);
    }

    for (std::size_t a = 0; a < n_axis; ++a) {
        const auto& e = result.curve[a].estimate;
        if (e.solved() && (!result.optimum || e.value() < result.curve[*result.optimum].estimate.value())) {
            result.optimum = a;
        }
    }
    if (!result.optimum) {
        result.flags.emplace_back(flags::kInsufficientSamples);
    } else if (*result.optimum == 0 || *result.optimum + 1 == n_axis) {
        result.flags.emplace_back(flags::kBoundaryOptimum);
    }
    if (n_inst < 2) {
        result.flags.emplace_back(flags::kDegenerateBootstrap);
    }
    return result;
}

TfScanResult optimal_tf_scan(const std::vector<IsingInstance>& instances, const std::vector<double>& ground_energies,
                             const Solver& solver, const SolverConfig& config_template,
                             const std::vector<int>& sweeps_grid, double p_desired, const BootstrapOptions& bootstrap,
                             double percentile) {
    if (sweeps_grid.size() < 3) {
        throw InvalidArgument("annealing-time scan needs at least 3 axis points");
    }
    if (instances.empty()) {
        throw InvalidArgument("annealing-time scan needs at least one instance");
    }
    if (!ground_energies.empty() && ground_energies.size() != instances.size()) {
        throw InvalidArgument("one ground energy per instance required");
    }
    std::vector<double> axis(sweeps_grid.begin(), sweeps_grid.end());
    std::vector<std::vector<std::vector<double>>> hits(instances.size());
    for (std::size_t i = 0; i < instances.size(); ++i) {
        double ground = 0;
        if (!ground_energies.empty()) {
            ground = ground_energies[i];
        } else if (instances[i].ground_energy) {
            ground = *instances[i].ground_energy;
        } else {
            throw InvalidArgument("instance " + std::to_string(i) + " has no known ground energy");
        }
        for (std::size_t a = 0; a < sweeps_grid.size(); ++a) {
            SolverConfig cfg = config_template;
            cfg.sweeps = sweeps_grid[a];
            cfg.seed = derive_seed(config_template.seed, i * sweeps_grid.size() + a);
            const SampleSet samples = solver(instances[i], cfg);
            std::vector<double> h;
            h.reserve(samples.energies.size());
            for (double e : samples.energies) {
                h.push_back(e <= ground + 1e-9 ? 1.0 : 0.0);
            }
            hits[i].push_back(std::move(h));
        }
    }
    return tf_scan_from_hits(axis, hits, p_desired, percentile, bootstrap);
}

std::pair<double, double> fit_line(std::span<const double> x, std::span<const double> y, std::span<const double> weights) {
    if (x.size() != y.size() || x.size() < 2) {
        throw InvalidArgument("line fit needs at least two points");
    }
    std::vector<double> w(weights.begin(), weights.end());
    if (w.empty()) {
        w = uniform_weights(x.size());
    }
    double sw = 0, sx = 0, sy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sw += w[i];
        sx += w[i] * x[i];
        sy += w[i] * y[i];
    }
    const double mx = sx / sw;
    const double my = sy / sw;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += w[i] * (x[i] - mx) * (x[i] - mx);
        sxy += w[i] * (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0) {
        throw InvalidArgument("line fit needs distinct x values");
    }
    const double slope = sxy / sxx;
    return {my - slope * mx, slope};
}

ScalingFit scaling_fit(const std::vector<double>& sizes, const std::vector<std::vector<Tts>>& tts_by_size,
                       double percentile, SizeMeasure measure, const BootstrapOptions& bootstrap) {
    if (sizes.size() < 3) {
        throw InvalidArgument("scaling fit needs at least 3 sizes, got " + std::to_string(sizes.size()));
    }
    if (tts_by_size.size() != sizes.size()) {
        throw InvalidArgument("one TTS series per size required");
    }
    check_level(bootstrap.level);
    std::ostringstream unsolved;
    bool any_unsolved = false;
    for (std::size_t k = 0; k < sizes.size(); ++k) {
        if (tts_by_size[k].empty()) {
            throw InvalidArgument("size " + std::to_string(sizes[k]) + " has no instances");
        }
        const bool bad = std::any_of(tts_by_size[k].begin(), tts_by_size[k].end(),
                                     [](const Tts& t) { return !t.solved() || !(t.value() > 0); });
        if (bad) {
            unsolved << (any_unsolved ? ", " : "") << sizes[k];
            any_unsolved = true;
        }
    }
    if (any_unsolved) {
        throw InvalidArgument("unsolved TTS at sizes: " + unsolved.str());
    }

    ScalingFit fit;
    for (double s : sizes) {
        fit.measure.push_back(measure == SizeMeasure::Linear ? s : std::sqrt(s));
    }
    std::vector<std::vector<double>> logs(sizes.size());
    for (std::size_t k = 0; k < sizes.size(); ++k) {
        for (const auto& t : tts_by_size[k]) {
            logs[k].push_back(std::log(t.value()));
        }
    }
    std::vector<double> y(sizes.size());
    for (std::size_t k = 0; k < sizes.size(); ++k) {
        y[k] = weighted_quantile(logs[k], uniform_weights(logs[k].size()), percentile);
        fit.percentile_tts.push_back(std::exp(y[k]));
    }
    std::tie(fit.intercept, fit.slope) = fit_line(fit.measure, y);

    Rng rng(derive_seed(bootstrap.seed, 0));
    std::vector<double> slopes;
    slopes.reserve(static_cast<std::size_t>(bootstrap.resamples));
    for (int b = 0; b < bootstrap.resamples; ++b) {
        std::vector<double> yb(sizes.size());
        for (std::size_t k = 0; k < sizes.size(); ++k) {
            const auto w = dirichlet_weights(logs[k].size(), rng);
            yb[k] = weighted_quantile(logs[k], w, percentile);
        }
        slopes.push_back(fit_line(fit.measure, yb).second);
    }
    fit.slope_interval.level = bootstrap.level;
    if (slopes.empty()) {
        fit.slope_interval.lower = fit.slope_interval.upper = fit.slope;
    } else {
        const double tail = (1.0 - bootstrap.level) / 2.0;
        fit.slope_interval.lower = std::min(quantile(slopes, tail), fit.slope);
        fit.slope_interval.upper = std::max(quantile(slopes, 1.0 - tail), fit.slope);
    }
    return fit;
}

}  // namespace qabench
