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

#include <iosfwd>
#include <optional>
#include <string>

#include <Eigen/Dense>
#include <json.hpp>

#include "qabench/bench.hpp"
#include "qabench/ising.hpp"
#include "qabench/quantum_sim.hpp"
#include "qabench/solvers.hpp"
#include "qabench/topology.hpp"

namespace qabench {

/// Shortest decimal string that parses back to the same double.
std::string format_number(double value);

/// Instance document:
/// {version, n, h, couplers: [[i, j, J]], planted, ground_energy, code, metadata}
nlohmann::json instance_to_json(const IsingInstance& instance);
/// Throws FormatError on schema violations.
IsingInstance instance_from_json(const nlohmann::json& j);

enum class RangePolicy { Reject, Renormalize };

/// Writes the instance document. Out-of-range h or J are rejected or
/// renormalized (the applied factor is recorded in metadata).
void write_instance(const std::string& path, IsingInstance instance, RangePolicy policy = RangePolicy::Renormalize);
IsingInstance read_instance(const std::string& path);

nlohmann::json graph_to_json(const HardwareGraph& graph);
HardwareGraph graph_from_json(const nlohmann::json& j);
nlohmann::json embedding_to_json(const Embedding& embedding);
Embedding embedding_from_json(const nlohmann::json& j);

/// '0' for +1, '1' for -1, spin 0 first.
std::string state_to_bits(std::span<const Spin> state);
SpinVector state_from_bits(const std::string& bits);

/// Columns rep,energy,state_bits,wall_time_s. Wall times are written only
/// when `include_wall_time` is set, else 0, keeping files reproducible.
void write_samples_csv(std::ostream& out, const SampleSet& samples, bool include_wall_time);
SampleSet read_samples_csv(std::istream& in);

nlohmann::json sample_set_sidecar(const SampleSet& samples);

/// axis,estimate,lo,hi,flags. Unsolved values are written as "unsolved".
void write_report_csv(std::ostream& out, const BenchReport& report);
nlohmann::json report_to_json(const BenchReport& report);

/// s,E0,...,E{k-1}
void write_spectrum_csv(std::ostream& out, const SpectrumScan& scan);
/// index,bits,probability
void write_distribution_csv(std::ostream& out, const Eigen::VectorXd& probabilities, int n);

/// Writes `content` to `path`, throwing std::runtime_error on failure.
void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace qabench
