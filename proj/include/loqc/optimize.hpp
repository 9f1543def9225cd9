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

#include "loqc/gates.hpp"
#include "loqc/objectives.hpp"
#include "loqc/param.hpp"
#include "loqc/transfer.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

namespace loqc {

/// Everything one design run needs: the target, the mode layout, the chart,
/// restart/seed bookkeeping, and tolerances. penalty_weights is the ascending
/// schedule for the constrained success stage.
struct OptimizeConfig {
    TargetGate gate;
    ModeConfig mode_config;
    Chart chart = Chart::Unitary;
    std::vector<int> mask;            ///< frozen modes, 0-based
    int restarts = 1;
    std::uint64_t seed = 0;
    double tol_fidelity = 1e-9;       ///< on-manifold means |1 - F| below this
    double tol_gradient = 1e-8;
    int max_iters = 5000;
    std::vector<double> penalty_weights = {1e1, 1e2, 1e3, 1e4};
    int threads = 0;                  ///< 0 = LOQC_THREADS env or hardware count

    void validate() const;
};

/// Outcome of one restart.
struct RunResult {
    int restart_id = 0;
    ParamVector final_x;
    Eigen::MatrixXcd final_u;
    double fidelity = 0.0;
    double success = 0.0; ///< S in the unitary chart, scaled success in the general chart
    bool on_manifold = false;
    int iterations = 0;
    double wallclock_s = 0.0;
};

/// Cluster of on-manifold runs whose success values agree within the plateau
/// threshold; the flat segments of a sorted sweep.
struct Plateau {
    double success_mean = 0.0;
    double success_min = 0.0;
    double success_max = 0.0;
    int count = 0;
};

struct SweepResult {
    std::vector<RunResult> runs; ///< ascending by success (ties by restart id)
    std::vector<Plateau> plateaus;
};

/// Pairwise success separation below which runs are considered the same
/// plateau. The known optima are separated by at least 0.01.
inline constexpr double kPlateauThreshold = 1e-4;

/// Objective evaluations for a fixed gate/configuration/chart, as functions
/// of the chart coordinates. In the general chart the success slot carries
/// the spectral-norm-scaled success. Holds scratch state: not thread safe,
/// one instance per worker.
class GateProblem {
public:
    GateProblem(TargetGate gate, ModeConfig cfg, Chart chart, std::vector<int> mask);

    int dim() const { return dim_; }
    Chart chart() const { return chart_; }
    const TargetGate& gate() const { return gate_; }
    const ModeConfig& mode_config() const { return cfg_; }
    const std::vector<int>& mask() const { return mask_; }

    ParamVector wrap(const Eigen::VectorXd& coords) const;
    Eigen::MatrixXcd matrix_at(const Eigen::VectorXd& coords) const;

    struct Values {
        double fidelity = 0.0;
        double success = 0.0;
    };
    Values values_at(const Eigen::VectorXd& coords) const;
    double fidelity_at(const Eigen::VectorXd& coords) const;
    double success_at(const Eigen::VectorXd& coords) const;

    /// Central finite-difference gradient (step 1e-6) of the named objective.
    enum class Objective { Fidelity, Success };
    Eigen::VectorXd gradient(Objective obj, const Eigen::VectorXd& coords) const;

private:
    TargetGate gate_;
    ModeConfig cfg_;
    Chart chart_;
    std::vector<int> mask_;
    int dim_ = 0;
    TransferEvaluator evaluator_;
    int scale_degree_ = 0;
    mutable Eigen::MatrixXcd a_scratch_;
};

/// Line-search ascent engine: BFGS direction on central finite-difference
/// gradients with backtracking. Step halving on objective decrease is the
/// only cusp handling, so objectives with kinks (the scaled success near
/// singular-value degeneracies) terminate via the stall exit.
struct AscentOptions {
    double tol_gradient = 1e-8;
    int max_iters = 5000;
    double fd_step = 1e-6;
    double target_value = std::numeric_limits<double>::infinity();
    double armijo_c1 = 1e-4;
    int max_halvings = 50;
    /// Accepted steps must improve the objective by at least this much;
    /// anything smaller is finite-difference noise, not progress.
    double min_improvement = 1e-12;
};

enum class AscentExit { GradientTol, Target, MaxIters, Stall };

struct AscentOutcome {
    Eigen::VectorXd x;
    double value = 0.0;
    int iterations = 0;
    AscentExit exit = AscentExit::MaxIters;
};

AscentOutcome maximize_bfgs(const std::function<double(const Eigen::VectorXd&)>& f,
                            Eigen::VectorXd x0, const AscentOptions& options);

/// Stage 1: local ascent of fidelity from x0. The result is on the manifold
/// when |1 - F| < tol_fidelity.
RunResult stage1_fidelity(const ParamVector& x0, const OptimizeConfig& oc);

/// Stage 2: maximizes success on the F = 1 manifold by ascending the merit
/// S - mu (1 - F) over the ascending penalty schedule, re-converging F after
/// each leg. Requires r.on_manifold; if the final fidelity cannot be brought
/// back within tolerance the result is flagged off-manifold.
RunResult stage2_success(const RunResult& r, const OptimizeConfig& oc);

/// The two-stage protocol in the general chart, with the scaled success in
/// place of S and fidelity evaluated on the matrix ray. The reported matrix
/// is normalized to unit spectral norm when no mask pins the scale.
RunResult optimize_scaled(const ParamVector& x0, const OptimizeConfig& oc);

/// One seeded restart: random start, stage 1, then the success stage if the
/// fidelity manifold was reached.
RunResult run_restart(int restart_id, const OptimizeConfig& oc);

/// `restarts` independent runs with per-restart derived seeds, executed
/// concurrently, sorted ascending by success, plus the plateau summary over
/// on-manifold runs. Failed runs are recorded off-manifold and excluded from
/// the plateau statistics.
SweepResult sweep(const OptimizeConfig& oc);

/// Tangent dimension of the F = 1 set at an on-manifold solution: the number
/// of near-zero eigenvalues (relative cutoff 1e-6) of the central
/// finite-difference Hessian of F (step 1e-4) in the chart coordinates.
/// Warns on stderr if the Hessian has positive eigenvalues above the cutoff,
/// i.e. the point is not actually a fidelity maximum.
int manifold_dimension(const RunResult& r, const OptimizeConfig& oc);

/// Offline check of a candidate interferometer against a gate.
struct VerifyReport {
    double fidelity = 0.0;
    double success = 0.0;
    double bound_lo = 0.0;
    double bound_hi = 0.0;
    double input_state_variance = 0.0; ///< var of <psi|A^dag A|psi> over random inputs
    bool pass = false;
};
VerifyReport verify(const Eigen::MatrixXcd& u, const TargetGate& gate, const ModeConfig& cfg,
                    double tol_fidelity = 1e-9);

/// Worker count: `requested` if positive, else the LOQC_THREADS environment
/// variable, else the hardware concurrency.
int resolve_threads(int requested);

} // namespace loqc
