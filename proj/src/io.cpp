/*
 * Copyright 2026 The loqc-opt developers
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "loqc/io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace loqc {

namespace {

FockState to_fock(const std::vector<int>& v) {
    FockState s(static_cast<Eigen::Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) s[static_cast<Eigen::Index>(i)] = v[i];
    return s;
}

int default_ancillas(const std::string& gate) {
    if (gate == "ns") return 1;
    if (gate == "toffoli-sign") return 3;
    return 2; // cs, cnot
}

int default_vacuum(const std::string& gate) { return gate == "ns" ? 1 : 0; }

} // namespace

OptimizeConfig RunDocument::to_config() const {
    OptimizeConfig oc;
    oc.gate = inline_gate ? load_gate(*inline_gate) : make_builtin(gate_name);

    const int na = ancilla_modes.value_or(inline_gate ? 0 : default_ancillas(gate_name));
    const int nv = vacuum_modes.value_or(inline_gate ? 0 : default_vacuum(gate_name));
    ModeConfig& cfg = oc.mode_config;
    cfg.n_comp_modes = oc.gate.n_modes;
    cfg.n_ancilla_modes = na;
    cfg.n_vacuum_modes = nv;
    if (ancilla_pattern) {
        cfg.ancilla_input = to_fock(*ancilla_pattern);
    } else {
        cfg.ancilla_input = FockState::Ones(na); // one photon per ancilla mode
    }
    if (measure_pattern) {
        cfg.measurement = to_fock(*measure_pattern);
    } else {
        cfg.measurement = FockState::Zero(na + nv);
        cfg.measurement.head(cfg.ancilla_input.size()) = cfg.ancilla_input;
    }
    cfg.comp_photons = oc.gate.comp_photons();

    if (chart == "unitary")
        oc.chart = Chart::Unitary;
    else if (chart == "general")
        oc.chart = Chart::General;
    else
        throw std::invalid_argument("run document: chart must be 'unitary' or 'general'");

    for (int m : mask_modes) {
        if (m < 1 || m > cfg.total_modes())
            throw std::invalid_argument("run document: mask mode number out of range (1..N)");
        oc.mask.push_back(m - 1);
    }
    oc.restarts = restarts;
    oc.seed = seed;
    oc.tol_fidelity = tol_fidelity;
    oc.tol_gradient = tol_gradient;
    oc.max_iters = max_iters;
    oc.threads = threads;
    oc.validate();
    return oc;
}

RunDocument parse_run_document(const nlohmann::json& doc) {
    if (!doc.is_object())
        throw std::invalid_argument("run document: expected a JSON object");
    RunDocument d;
    if (doc.contains("gate")) {
        if (doc.at("gate").is_string())
            d.gate_name = doc.at("gate").get<std::string>();
        else
            d.inline_gate = doc.at("gate");
    }
    if (doc.contains("ancilla_modes")) d.ancilla_modes = doc.at("ancilla_modes").get<int>();
    if (doc.contains("ancilla_pattern"))
        d.ancilla_pattern = doc.at("ancilla_pattern").get<std::vector<int>>();
    if (doc.contains("vacuum_modes")) d.vacuum_modes = doc.at("vacuum_modes").get<int>();
    if (doc.contains("measure_pattern"))
        d.measure_pattern = doc.at("measure_pattern").get<std::vector<int>>();
    d.chart = doc.value("chart", d.chart);
    if (doc.contains("mask")) d.mask_modes = doc.at("mask").get<std::vector<int>>();
    d.restarts = doc.value("restarts", d.restarts);
    d.seed = doc.value("seed", d.seed);
    d.tol_fidelity = doc.value("tol_fidelity", d.tol_fidelity);
    d.tol_gradient = doc.value("tol_gradient", d.tol_gradient);
    d.max_iters = doc.value("max_iters", d.max_iters);
    d.threads = doc.value("threads", d.threads);
    d.out_dir = doc.value("out_dir", d.out_dir);
    return d;
}

RunDocument load_run_document(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open run document '" + path + "'");
    nlohmann::json j;
    in >> j;
    return parse_run_document(j);
}

void write_results_csv(const std::string& path, const SweepResult& result) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write results file '" + path + "'");
    out << "restart_id,fidelity,success,on_manifold,iterations\n";
    out << std::setprecision(12);
    for (const RunResult& r : result.runs)
        out << r.restart_id << ',' << r.fidelity << ',' << r.success << ','
            << (r.on_manifold ? 1 : 0) << ',' << r.iterations << '\n';
}

nlohmann::json matrix_to_json(const Eigen::MatrixXcd& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            row.push_back({m(i, j).real(), m(i, j).imag()});
        rows.push_back(std::move(row));
    }
    return rows;
}

Eigen::MatrixXcd matrix_from_json(const nlohmann::json& j) {
    if (!j.is_array() || j.empty())
        throw std::invalid_argument("matrix: expected a non-empty nested array");
    const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
    const Eigen::Index cols = static_cast<Eigen::Index>(j.at(0).size());
    Eigen::MatrixXcd m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const auto& row = j.at(static_cast<std::size_t>(i));
        if (static_cast<Eigen::Index>(row.size()) != cols)
            throw std::invalid_argument("matrix: ragged rows");
        for (Eigen::Index c = 0; c < cols; ++c) {
            const auto& z = row.at(static_cast<std::size_t>(c));
            if (!z.is_array() || z.size() != 2)
                throw std::invalid_argument("matrix: entries must be [re, im] pairs");
            m(i, c) = std::complex<double>(z.at(0).get<double>(), z.at(1).get<double>());
        }
    }
    return m;
}

void write_best_matrix(const std::string& path, const RunResult& best,
                       const OptimizeConfig& oc, const RunDocument& doc) {
    nlohmann::json j;
    j["tool"] = kToolName;
    j["version"] = kToolVersion;
    j["gate"] = oc.gate.name;
    if (doc.inline_gate) j["gate_definition"] = *doc.inline_gate;
    j["chart"] = oc.chart == Chart::Unitary ? "unitary" : "general";
    j["mask"] = doc.mask_modes;
    j["seed"] = oc.seed;
    j["restarts"] = oc.restarts;
    j["restart_id"] = best.restart_id;
    j["iterations"] = best.iterations;
    j["fidelity"] = best.fidelity;
    j["success"] = best.success;
    j["on_manifold"] = best.on_manifold;
    const ModeConfig& cfg = oc.mode_config;
    j["mode_config"] = {
        {"comp_modes", cfg.n_comp_modes},
        {"ancilla_modes", cfg.n_ancilla_modes},
        {"vacuum_modes", cfg.n_vacuum_modes},
        {"ancilla_pattern", std::vector<int>(cfg.ancilla_input.begin(), cfg.ancilla_input.end())},
        {"measure_pattern", std::vector<int>(cfg.measurement.begin(), cfg.measurement.end())},
        {"comp_photons", cfg.comp_photons},
    };
    j["matrix"] = matrix_to_json(best.final_u);

    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write matrix file '" + path + "'");
    out << std::setw(1) << j << '\n';
}

MatrixFile read_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open matrix file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error("cannot parse matrix file '" + path + "': " + e.what());
    }
    MatrixFile f;
    if (j.is_object()) {
        if (!j.contains("matrix"))
            throw std::runtime_error("matrix file '" + path + "' has no matrix field");
        f.matrix = matrix_from_json(j.at("matrix"));
        f.metadata = std::move(j);
    } else {
        f.matrix = matrix_from_json(j);
    }
    return f;
}

double toffoli_composite_baseline() {
    const double s_cs = 2.0 / 27.0;
    return s_cs * s_cs / 2.0;
}

} // namespace loqc
