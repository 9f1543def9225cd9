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

#pragma once

#include "loqc/optimize.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace loqc {

inline constexpr const char* kToolName = "loqc-opt";
inline constexpr const char* kToolVersion = "0.1.0";

/// One experiment description: gate, mode layout, chart, and run controls.
/// Field defaults follow the built-in gates (one ancilla photon per ancilla
/// mode, measurement pattern equal to the ancilla pattern with zeros on the
/// vacuum modes). Mode numbers in `mask` are 1-based as in the device
/// drawings; they are converted when building the OptimizeConfig.
struct RunDocument {
    std::string gate_name = "cs";
    std::optional<nlohmann::json> inline_gate;
    std::optional<int> ancilla_modes;
    std::optional<std::vector<int>> ancilla_pattern;
    std::optional<int> vacuum_modes;
    std::optional<std::vector<int>> measure_pattern;
    std::string chart = "unitary";
    std::vector<int> mask_modes; ///< 1-based
    int restarts = 100;
    std::uint64_t seed = 0;
    double tol_fidelity = 1e-9;
    double tol_gradient = 1e-8;
    int max_iters = 5000;
    int threads = 0;
    std::string out_dir = "out";

    /// Resolves defaults and validates; throws std::invalid_argument naming
    /// the violated invariant.
    OptimizeConfig to_config() const;
};

RunDocument parse_run_document(const nlohmann::json& doc);
RunDocument load_run_document(const std::string& path);

/// results.csv: one row per restart, ascending in the success column.
void write_results_csv(const std::string& path, const SweepResult& result);

/// Complex matrices are serialized as nested arrays of [re, im] pairs.
nlohmann::json matrix_to_json(const Eigen::MatrixXcd& m);
Eigen::MatrixXcd matrix_from_json(const nlohmann::json& j);

/// best_matrix.json: the winning interferometer with enough metadata to
/// verify it (gate, mode configuration, chart, seed, F, S, tool version).
void write_best_matrix(const std::string& path, const RunResult& best,
                       const OptimizeConfig& oc, const RunDocument& doc);

/// A saved matrix file plus whatever metadata it carried.
struct MatrixFile {
    Eigen::MatrixXcd matrix;
    std::optional<nlohmann::json> metadata; ///< full document when present
};
MatrixFile read_matrix_file(const std::string& path);

/// Composite-construction success baseline for the Toffoli gate: two
/// controlled-sign-quality gates plus a passive filter, (2/27)^2 / 2.
double toffoli_composite_baseline();

} // namespace loqc
