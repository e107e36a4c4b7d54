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

#include "qabench/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace qabench {

std::string format_number(double value) {
    if (std::isnan(value)) {
        return "nan";
    }
    if (std::isinf(value)) {
        return value > 0 ? "inf" : "-inf";
    }
    if (value == 0.0) {
        return "0";
    }
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

nlohmann::json instance_to_json(const IsingInstance& instance) {
    nlohmann::json couplers = nlohmann::json::array();
    for (const auto& [key, value] : instance.couplers) {
        couplers.push_back({key.first, key.second, value});
    }
    nlohmann::json planted = nullptr;
    if (instance.planted) {
        planted = nlohmann::json::array();
        for (Spin s : *instance.planted) {
            planted.push_back(static_cast<int>(s));
        }
    }
    return {{"version", kVersion},
            {"n", instance.n},
            {"h", instance.h},
            {"couplers", couplers},
            {"planted", planted},
            {"ground_energy", instance.ground_energy ? nlohmann::json(*instance.ground_energy) : nlohmann::json(nullptr)},
            {"code", instance.code},
            {"metadata", instance.metadata}};
}

IsingInstance instance_from_json(const nlohmann::json& j) {
    try {
        if (!j.is_object()) {
            throw FormatError("instance document is not a JSON object");
        }
        const int n = j.at("n").get<int>();
        if (n < 0) {
            throw FormatError("instance has negative n");
        }
        IsingInstance inst(n);
        const auto& h = j.at("h");
        if (!h.is_array() || h.size() != static_cast<std::size_t>(n)) {
            throw FormatError("field vector length does not match n");
        }
        for (std::size_t i = 0; i < h.size(); ++i) {
            inst.h[i] = h[i].get<double>();
        }
        for (const auto& c : j.at("couplers")) {
            if (!c.is_array() || c.size() != 3) {
                throw FormatError("coupler entries must be [i, j, J]");
            }
            const int a = c[0].get<int>();
            const int b = c[1].get<int>();
            if (a < 0 || b < 0 || a >= n || b >= n || a == b) {
                throw FormatError("coupler (" + std::to_string(a) + ", " + std::to_string(b) + ") is invalid");
            }
            if (inst.has_coupler(a, b)) {
                throw FormatError("duplicate coupler (" + std::to_string(a) + ", " + std::to_string(b) + ")");
            }
            inst.set_coupler(a, b, c[2].get<double>());
        }
        if (j.contains("planted") && !j.at("planted").is_null()) {
            const auto& p = j.at("planted");
            if (!p.is_array() || p.size() != static_cast<std::size_t>(n)) {
                throw FormatError("planted state length does not match n");
            }
            SpinVector planted;
            for (const auto& v : p) {
                const int s = v.get<int>();
                if (s != 1 && s != -1) {
                    throw FormatError("planted state entries must be +-1");
                }
                planted.push_back(static_cast<Spin>(s));
            }
            inst.planted = std::move(planted);
        }
        if (j.contains("ground_energy") && !j.at("ground_energy").is_null()) {
            inst.ground_energy = j.at("ground_energy").get<double>();
        }
        if (j.contains("code")) {
            inst.code = j.at("code");
        }
        if (j.contains("metadata")) {
            if (!j.at("metadata").is_object()) {
                throw FormatError("metadata must be an object");
            }
            inst.metadata = j.at("metadata");
        }
        inst.validate();
        return inst;
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("malformed instance: ") + e.what());
    } catch (const InvalidArgument& e) {
        throw FormatError(std::string("malformed instance: ") + e.what());
    }
}

void write_instance(const std::string& path, IsingInstance instance, RangePolicy policy) {
    if (!within_device_range(instance)) {
        if (policy == RangePolicy::Reject) {
            throw InvalidArgument("instance exceeds the device range |h| <= 2, |J| <= 1");
        }
        instance.metadata["scale_factor"] = renormalize_to_device_range(instance);
    }
    write_text_file(path, instance_to_json(instance).dump(2) + "\n");
}

IsingInstance read_instance(const std::string& path) {
    const std::string text = read_text_file(path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(path + ": " + e.what());
    }
    return instance_from_json(j);
}

nlohmann::json graph_to_json(const HardwareGraph& graph) {
    nlohmann::json inactive_qubits = nlohmann::json::array();
    for (int q = 0; q < graph.num_qubits(); ++q) {
        if (!graph.is_active(q)) {
            inactive_qubits.push_back(q);
        }
    }
    nlohmann::json inactive_couplers = nlohmann::json::array();
    for (const auto& c : graph.couplers()) {
        if (!c.active && graph.is_active(c.u) && graph.is_active(c.v)) {
            inactive_couplers.push_back({c.u, c.v});
        }
    }
    return {{"topology", "chimera"},
            {"grid_size", graph.grid_size()},
            {"inactive_qubits", inactive_qubits},
            {"inactive_couplers", inactive_couplers}};
}

HardwareGraph graph_from_json(const nlohmann::json& j) {
    try {
        if (j.at("topology") != "chimera") {
            throw FormatError("unsupported topology");
        }
        std::set<int> qubits;
        for (const auto& q : j.value("inactive_qubits", nlohmann::json::array())) {
            qubits.insert(q.get<int>());
        }
        std::set<SpinPair> couplers;
        for (const auto& c : j.value("inactive_couplers", nlohmann::json::array())) {
            couplers.insert(ordered_pair(c.at(0).get<int>(), c.at(1).get<int>()));
        }
        return build_chimera(j.at("grid_size").get<int>(), qubits, couplers);
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("malformed graph: ") + e.what());
    } catch (const InvalidArgument& e) {
        throw FormatError(std::string("malformed graph: ") + e.what());
    }
}

nlohmann::json embedding_to_json(const Embedding& embedding) {
    return {{"chains", embedding.chains}, {"chain_strength", embedding.chain_strength}};
}

Embedding embedding_from_json(const nlohmann::json& j) {
    try {
        Embedding emb;
        emb.chains = j.at("chains").get<std::vector<std::vector<int>>>();
        if (j.contains("chain_strength")) {
            emb.chain_strength = j.at("chain_strength").get<std::vector<double>>();
        }
        if (!emb.chain_strength.empty() && emb.chain_strength.size() != emb.chains.size()) {
            throw FormatError("chain_strength length does not match the chain count");
        }
        return emb;
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("malformed embedding: ") + e.what());
    }
}

std::string state_to_bits(std::span<const Spin> state) {
    std::string bits;
    bits.reserve(state.size());
    for (Spin s : state) {
        bits.push_back(s == 1 ? '0' : '1');
    }
    return bits;
}

SpinVector state_from_bits(const std::string& bits) {
    SpinVector state;
    state.reserve(bits.size());
    for (char c : bits) {
        if (c != '0' && c != '1') {
            throw FormatError("state bitstring contains '" + std::string(1, c) + "'");
        }
        state.push_back(c == '0' ? Spin{1} : Spin{-1});
    }
    return state;
}

void write_samples_csv(std::ostream& out, const SampleSet& samples, bool include_wall_time) {
    out << "rep,energy,state_bits,wall_time_s\n";
    for (std::size_t r = 0; r < samples.size(); ++r) {
        const double wall = include_wall_time && r < samples.wall_time.size() ? samples.wall_time[r] : 0.0;
        out << r << ',' << format_number(samples.energies[r]) << ',' << state_to_bits(samples.states[r]) << ','
            << format_number(wall) << '\n';
    }
}

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, sep)) {
        fields.push_back(field);
    }
    if (!line.empty() && line.back() == sep) {
        fields.emplace_back();
    }
    return fields;
}

double parse_double(const std::string& text, std::size_t line) {
    double value = 0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
        throw FormatError("line " + std::to_string(line) + ": '" + text + "' is not a number");
    }
    return value;
}

std::string strip_cr(std::string line) {
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    return line;
}

}  // namespace

SampleSet read_samples_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || strip_cr(line) != "rep,energy,state_bits,wall_time_s") {
        throw FormatError("results CSV must start with header rep,energy,state_bits,wall_time_s");
    }
    SampleSet samples;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        line = strip_cr(line);
        if (line.empty()) {
            continue;
        }
        const auto fields = split(line, ',');
        if (fields.size() != 4) {
            throw FormatError("line " + std::to_string(lineno) + ": expected 4 fields");
        }
        samples.energies.push_back(parse_double(fields[1], lineno));
        samples.states.push_back(state_from_bits(fields[2]));
        samples.wall_time.push_back(parse_double(fields[3], lineno));
    }
    return samples;
}

nlohmann::json sample_set_sidecar(const SampleSet& samples) {
    return {{"version", kVersion},
            {"solver", samples.solver_id},
            {"parameters", samples.parameters},
            {"seed", samples.seed},
            {"sweeps", samples.sweeps},
            {"repetitions", samples.size()}};
}

namespace {

std::string tts_text(const Tts& t) {
    return t.solved() ? format_number(t.value()) : "unsolved";
}

nlohmann::json tts_json(const Tts& t) {
    return t.solved() ? nlohmann::json(t.value()) : nlohmann::json("unsolved");
}

nlohmann::json optional_json(const std::optional<double>& v) {
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

std::string join(const std::vector<std::string>& items, char sep) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i > 0) {
            out.push_back(sep);
        }
        out += items[i];
    }
    return out;
}

std::string optional_text(const std::optional<double>& v) {
    return v ? format_number(*v) : "unsolved";
}

}  // namespace

void write_report_csv(std::ostream& out, const BenchReport& report) {
    out << "axis,estimate,lo,hi,flags\n";
    const std::string flag_text = join(report.flags, ';');
    if (report.scan.empty()) {
        out << ',' << optional_text(report.estimate) << ',' << optional_text(report.lower) << ','
            << optional_text(report.upper) << ',' << flag_text << '\n';
        return;
    }
    for (const auto& p : report.scan) {
        out << format_number(p.axis) << ',' << tts_text(p.estimate) << ',' << tts_text(p.lower) << ','
            << tts_text(p.upper) << ',' << flag_text << '\n';
    }
}

nlohmann::json report_to_json(const BenchReport& report) {
    nlohmann::json curve = nlohmann::json::array();
    for (const auto& p : report.scan) {
        curve.push_back({{"axis", p.axis}, {"estimate", tts_json(p.estimate)}, {"lo", tts_json(p.lower)},
                         {"hi", tts_json(p.upper)}});
    }
    return {{"version", kVersion},
            {"metric", report.metric},
            {"estimate", optional_json(report.estimate)},
            {"lo", optional_json(report.lower)},
            {"hi", optional_json(report.upper)},
            {"level", report.level},
            {"axis", report.axis_name},
            {"curve", curve},
            {"flags", report.flags},
            {"provenance", report.provenance}};
}

void write_spectrum_csv(std::ostream& out, const SpectrumScan& scan) {
    const Eigen::Index k = scan.levels.empty() ? 0 : scan.levels.front().size();
    out << 's';
    for (Eigen::Index e = 0; e < k; ++e) {
        out << ",E" << e;
    }
    out << '\n';
    for (std::size_t g = 0; g < scan.s.size(); ++g) {
        out << format_number(scan.s[g]);
        for (Eigen::Index e = 0; e < k; ++e) {
            out << ',' << format_number(scan.levels[g](e));
        }
        out << '\n';
    }
}

void write_distribution_csv(std::ostream& out, const Eigen::VectorXd& probabilities, int n) {
    if (probabilities.size() != (Eigen::Index{1} << n)) {
        throw InvalidArgument("distribution length is not 2^n");
    }
    out << "index,bits,probability\n";
    for (Eigen::Index i = 0; i < probabilities.size(); ++i) {
        out << i << ',' << state_to_bits(state_from_index(static_cast<std::uint64_t>(i), n)) << ','
            << format_number(probabilities(i)) << '\n';
    }
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open " + path + " for writing");
    }
    out << content;
    if (!out) {
        throw std::runtime_error("failed writing " + path);
    }
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace qabench
