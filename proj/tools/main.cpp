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

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

namespace {

// Exit codes: 0 success, 1 no on-manifold result / verification failure,
// 2 input error.
constexpr int kExitOk = 0;
constexpr int kExitNoResult = 1;
constexpr int kExitInputError = 2;

struct CommonFlags {
    std::string config_path;
    std::string gate;
    int ancillas = -1;
    std::vector<int> ancilla_pattern;
    int vacuum = -1;
    std::vector<int> measure_pattern;
    std::string chart;
    std::vector<int> mask;
    int restarts = -1;
    std::int64_t seed = -1;
    double tol_f = -1.0;
    double tol_g = -1.0;
    int max_iters = -1;
    int threads = -1;
    std::string out_dir;
};

void add_run_flags(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("--config", f.config_path, "run document (JSON); flags override its fields");
    cmd->add_option("--gate", f.gate, "built-in gate name (see gates-list) or JSON gate file");
    cmd->add_option("--ancillas", f.ancillas, "number of ancilla modes");
    cmd->add_option("--ancilla-pattern", f.ancilla_pattern,
                    "ancilla input photons per mode (default: one per mode)")
        ->delimiter(',');
    cmd->add_option("--vacuum", f.vacuum, "number of vacuum modes");
    cmd->add_option("--measure-pattern", f.measure_pattern,
                    "detected photons over ancilla+vacuum modes (default: ancilla pattern, zeros on vacuum)")
        ->delimiter(',');
    cmd->add_option("--chart", f.chart, "parametrization: unitary | general");
    cmd->add_option("--mask", f.mask, "frozen mode numbers, 1-based (identity rows/columns)")
        ->delimiter(',');
    cmd->add_option("--restarts", f.restarts, "number of random starts");
    cmd->add_option("--seed", f.seed, "master seed; restart seeds derive from it");
    cmd->add_option("--tol-f", f.tol_f, "fidelity tolerance for the F=1 manifold");
    cmd->add_option("--tol-g", f.tol_g, "gradient-norm convergence tolerance");
    cmd->add_option("--max-iters", f.max_iters, "iteration cap per ascent");
    cmd->add_option("--threads", f.threads, "worker threads (or set LOQC_THREADS)");
    cmd->add_option("--out-dir", f.out_dir, "output directory");
}

loqc::RunDocument assemble_document(const CommonFlags& f) {
    loqc::RunDocument doc;
    if (!f.config_path.empty()) doc = loqc::load_run_document(f.config_path);
    if (!f.gate.empty()) {
        if (f.gate.size() > 5 && f.gate.substr(f.gate.size() - 5) == ".json") {
            std::ifstream in(f.gate);
            if (!in) throw std::runtime_error("cannot open gate file '" + f.gate + "'");
            nlohmann::json j;
            in >> j;
            doc.inline_gate = std::move(j);
        } else {
            doc.gate_name = f.gate;
            doc.inline_gate.reset();
        }
    }
    if (f.ancillas >= 0) doc.ancilla_modes = f.ancillas;
    if (!f.ancilla_pattern.empty()) doc.ancilla_pattern = f.ancilla_pattern;
    if (f.vacuum >= 0) doc.vacuum_modes = f.vacuum;
    if (!f.measure_pattern.empty()) doc.measure_pattern = f.measure_pattern;
    if (!f.chart.empty()) doc.chart = f.chart;
    if (!f.mask.empty()) doc.mask_modes = f.mask;
    if (f.restarts >= 0) doc.restarts = f.restarts;
    if (f.seed >= 0) doc.seed = static_cast<std::uint64_t>(f.seed);
    if (f.tol_f > 0) doc.tol_fidelity = f.tol_f;
    if (f.tol_g > 0) doc.tol_gradient = f.tol_g;
    if (f.max_iters > 0) doc.max_iters = f.max_iters;
    if (f.threads > 0) doc.threads = f.threads;
    if (!f.out_dir.empty()) doc.out_dir = f.out_dir;
    return doc;
}

int cmd_optimize(const CommonFlags& flags) {
    loqc::RunDocument doc = assemble_document(flags);
    loqc::OptimizeConfig oc = doc.to_config();

    std::filesystem::create_directories(doc.out_dir);
    std::cout << "gate " << oc.gate.name << ", N = " << oc.mode_config.total_modes()
              << " modes (" << oc.mode_config.n_comp_modes << " comp + "
              << oc.mode_config.n_ancilla_modes << " ancilla + "
              << oc.mode_config.n_vacuum_modes << " vacuum), chart "
              << (oc.chart == loqc::Chart::Unitary ? "unitary" : "general") << ", "
              << oc.restarts << " restarts, seed " << oc.seed << "\n";

    const loqc::SweepResult result = loqc::sweep(oc);

    const std::string csv_path = doc.out_dir + "/results.csv";
    loqc::write_results_csv(csv_path, result);

    const loqc::RunResult* best = nullptr;
    for (const loqc::RunResult& r : result.runs)
        if (r.on_manifold) best = &r; // runs are ascending, keep the last
    int on_manifold = 0;
    for (const loqc::RunResult& r : result.runs) on_manifold += r.on_manifold ? 1 : 0;

    std::cout << on_manifold << "/" << oc.restarts << " runs reached F = 1 within "
              << oc.tol_fidelity << "\n";
    std::cout << "plateaus (success mean x count): ";
    for (const loqc::Plateau& p : result.plateaus)
        std::cout << p.success_mean << " x " << p.count << "  ";
    std::cout << "\nresults table: " << csv_path << "\n";

    if (!best) {
        std::cout << "no on-manifold result\n";
        return kExitNoResult;
    }
    const std::string matrix_path = doc.out_dir + "/best_matrix.json";
    loqc::write_best_matrix(matrix_path, *best, oc, doc);
    std::cout << "best: restart " << best->restart_id << ", F = " << std::setprecision(12)
              << best->fidelity << ", S = " << best->success << "\n"
              << "best matrix: " << matrix_path << "\n";
    return kExitOk;
}

int cmd_verify(const std::string& matrix_path, const CommonFlags& flags, bool manifold_dim) {
    loqc::MatrixFile file = loqc::read_matrix_file(matrix_path);

    loqc::RunDocument doc;
    if (file.metadata) {
        // Rebuild the run context from the file's own metadata, flags override.
        nlohmann::json j = *file.metadata;
        nlohmann::json run;
        if (j.contains("gate_definition"))
            run["gate"] = j.at("gate_definition");
        else if (j.contains("gate"))
            run["gate"] = j.at("gate");
        if (j.contains("mode_config")) {
            const auto& mc = j.at("mode_config");
            run["ancilla_modes"] = mc.value("ancilla_modes", 0);
            run["vacuum_modes"] = mc.value("vacuum_modes", 0);
            if (mc.contains("ancilla_pattern")) run["ancilla_pattern"] = mc.at("ancilla_pattern");
            if (mc.contains("measure_pattern")) run["measure_pattern"] = mc.at("measure_pattern");
        }
        if (j.contains("chart")) run["chart"] = j.at("chart");
        if (j.contains("mask")) run["mask"] = j.at("mask");
        doc = loqc::parse_run_document(run);
    }
    CommonFlags f = flags;
    if (!f.gate.empty() || !f.config_path.empty() || f.ancillas >= 0 || f.vacuum >= 0 ||
        !f.ancilla_pattern.empty() || !f.measure_pattern.empty() || !f.chart.empty() ||
        !f.mask.empty()) {
        loqc::RunDocument overrides = assemble_document(f);
        if (!f.gate.empty()) { doc.gate_name = overrides.gate_name; doc.inline_gate = overrides.inline_gate; }
        if (f.ancillas >= 0) doc.ancilla_modes = overrides.ancilla_modes;
        if (f.vacuum >= 0) doc.vacuum_modes = overrides.vacuum_modes;
        if (!f.ancilla_pattern.empty()) doc.ancilla_pattern = overrides.ancilla_pattern;
        if (!f.measure_pattern.empty()) doc.measure_pattern = overrides.measure_pattern;
        if (!f.chart.empty()) doc.chart = overrides.chart;
        if (!f.mask.empty()) doc.mask_modes = overrides.mask_modes;
    }
    if (flags.tol_f > 0) doc.tol_fidelity = flags.tol_f;
    doc.restarts = 1; // irrelevant for verification
    loqc::OptimizeConfig oc = doc.to_config();

    if (file.matrix.rows() != oc.mode_config.total_modes() ||
        file.matrix.cols() != oc.mode_config.total_modes())
        throw std::invalid_argument("matrix shape does not match the mode configuration");

    const loqc::VerifyReport rep =
        loqc::verify(file.matrix, oc.gate, oc.mode_config, oc.tol_fidelity);

    const double s_report = oc.chart == loqc::Chart::General
                                ? loqc::scaled_success(file.matrix, oc.mode_config, oc.gate)
                                : rep.success;
    std::cout << "F=" << std::fixed << std::setprecision(9) << rep.fidelity
              << ", S=" << std::setprecision(6) << s_report << "\n";
    std::cout << "S bounds [" << rep.bound_lo << ", " << rep.bound_hi << "]"
              << ", input-state variance " << std::scientific << std::setprecision(2)
              << rep.input_state_variance << "\n";

    if (manifold_dim) {
        loqc::RunResult r;
        r.final_x = loqc::from_matrix(file.matrix, oc.chart, oc.mask);
        r.final_u = file.matrix;
        r.fidelity = rep.fidelity;
        r.success = rep.success;
        r.on_manifold = rep.pass;
        if (!rep.pass) {
            std::cout << "manifold dimension: skipped (not on the F = 1 manifold)\n";
        } else {
            std::cout << "manifold dimension = " << loqc::manifold_dimension(r, oc) << "\n";
        }
    }

    std::cout << std::defaultfloat << (rep.pass ? "PASS" : "FAIL") << " (|1-F| "
              << (rep.pass ? "<" : ">=") << " " << oc.tol_fidelity << ")\n";
    return rep.pass ? kExitOk : kExitNoResult;
}

int cmd_baseline_toffoli(double success_value) {
    const double baseline = loqc::toffoli_composite_baseline();
    std::cout << "composite baseline (two controlled-sign stages + filter): "
              << std::fixed << std::setprecision(6) << baseline << "\n";
    if (success_value > 0.0) {
        std::cout << "optimized S = " << success_value << ", ratio = "
                  << std::setprecision(2) << success_value / baseline << "\n";
    }
    return kExitOk;
}

int cmd_gates_list() {
    for (const std::string& name : loqc::builtin_gate_names()) {
        const loqc::TargetGate g = loqc::make_builtin(name);
        std::cout << name << ": " << g.out_basis.size() << " x " << g.dc()
                  << " target, " << g.n_modes << " computational modes, Mc = "
                  << g.comp_photons() << (g.sectored() ? " (sectored)" : "") << "\n";
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"design of measurement-assisted linear-optical gates by numerical optimization"};
    app.require_subcommand(1);

    CommonFlags opt_flags;
    CLI::App* opt = app.add_subcommand(
        "optimize", "run a multi-restart two-stage design sweep and write results");
    add_run_flags(opt, opt_flags);

    CommonFlags ver_flags;
    std::string matrix_path;
    bool manifold_dim = false;
    CLI::App* ver = app.add_subcommand("verify", "evaluate a saved interferometer against a gate");
    ver->add_option("matrix", matrix_path, "matrix JSON file")->required();
    add_run_flags(ver, ver_flags);
    ver->add_flag("--manifold-dim", manifold_dim, "also probe the F=1 manifold dimension");

    double baseline_success = -1.0;
    CLI::App* base = app.add_subcommand(
        "baseline-toffoli", "print the composite Toffoli success baseline (2/27)^2/2");
    base->add_option("--success", baseline_success, "optimized S to compare against the baseline");

    app.add_subcommand("gates-list", "list built-in target gates");

    CLI11_PARSE(app, argc, argv);

    try {
        if (opt->parsed()) return cmd_optimize(opt_flags);
        if (ver->parsed()) return cmd_verify(matrix_path, ver_flags, manifold_dim);
        if (base->parsed()) return cmd_baseline_toffoli(baseline_success);
        return cmd_gates_list();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
}
