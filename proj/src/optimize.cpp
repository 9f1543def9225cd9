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

#include "loqc/optimize.hpp"

#include "loqc/rng.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <stdexcept>
#include <thread>

namespace loqc {

void OptimizeConfig::validate() const {
    mode_config.validate();
    if (restarts < 1) throw std::invalid_argument("OptimizeConfig: restarts must be at least 1");
    if (tol_fidelity <= 0.0 || tol_gradient <= 0.0)
        throw std::invalid_argument("OptimizeConfig: tolerances must be positive");
    if (max_iters < 1) throw std::invalid_argument("OptimizeConfig: max_iters must be at least 1");
    if (penalty_weights.empty())
        throw std::invalid_argument("OptimizeConfig: empty penalty schedule");
    for (std::size_t i = 1; i < penalty_weights.size(); ++i)
        if (penalty_weights[i] <= penalty_weights[i - 1])
            throw std::invalid_argument("OptimizeConfig: penalty schedule must be ascending");
    if (gate.n_modes != mode_config.n_comp_modes)
        throw std::invalid_argument("OptimizeConfig: gate and mode configuration disagree on Nc");
}

GateProblem::GateProblem(TargetGate gate, ModeConfig cfg, Chart chart, std::vector<int> mask)
    : gate_(std::move(gate)),
      cfg_(std::move(cfg)),
      chart_(chart),
      mask_(std::move(mask)),
      evaluator_(cfg_, gate_.comp_basis, gate_.out_basis) {
    dim_ = coord_count(chart_, cfg_.total_modes(), mask_);
    scale_degree_ = 2 * (cfg_.comp_photons + cfg_.ancilla_photons());
}

ParamVector GateProblem::wrap(const Eigen::VectorXd& coords) const {
    ParamVector x;
    x.chart = chart_;
    x.n_modes = cfg_.total_modes();
    x.mask = mask_;
    x.coords = coords;
    return x;
}

Eigen::MatrixXcd GateProblem::matrix_at(const Eigen::VectorXd& coords) const {
    return to_matrix(wrap(coords));
}

GateProblem::Values GateProblem::values_at(const Eigen::VectorXd& coords) const {
    const Eigen::MatrixXcd u = matrix_at(coords);
    evaluator_.evaluate(u, a_scratch_);
    Values v;
    v.fidelity = fidelity(a_scratch_, gate_.target, gate_.dc());
    v.success = success(a_scratch_, gate_.dc());
    if (chart_ == Chart::General) {
        const double sigma = spectral_norm(u);
        if (sigma <= 0.0)
            throw std::runtime_error("GateProblem: vanishing matrix in the general chart");
        v.success /= std::pow(sigma, scale_degree_);
    }
    return v;
}

double GateProblem::fidelity_at(const Eigen::VectorXd& coords) const {
    const Eigen::MatrixXcd u = matrix_at(coords);
    evaluator_.evaluate(u, a_scratch_);
    return fidelity(a_scratch_, gate_.target, gate_.dc());
}

double GateProblem::success_at(const Eigen::VectorXd& coords) const {
    return values_at(coords).success;
}

Eigen::VectorXd GateProblem::gradient(Objective obj, const Eigen::VectorXd& coords) const {
    auto f = [this, obj](const Eigen::VectorXd& c) {
        return obj == Objective::Fidelity ? fidelity_at(c) : success_at(c);
    };
    return finite_difference_gradient(f, coords);
}

AscentOutcome maximize_bfgs(const std::function<double(const Eigen::VectorXd&)>& f,
                            Eigen::VectorXd x0, const AscentOptions& options) {
    const Eigen::Index d = x0.size();
    AscentOutcome out;
    out.x = std::move(x0);
    out.value = f(out.x);
    if (!std::isfinite(out.value))
        throw std::runtime_error("maximize_bfgs: non-finite objective at the starting point");
    if (d == 0) {
        out.exit = AscentExit::GradientTol;
        return out;
    }

    Eigen::MatrixXd hinv = Eigen::MatrixXd::Identity(d, d);
    Eigen::VectorXd g = finite_difference_gradient(f, out.x, options.fd_step);

    while (true) {
        if (out.value >= options.target_value) {
            out.exit = AscentExit::Target;
            return out;
        }
        if (g.norm() < options.tol_gradient) {
            out.exit = AscentExit::GradientTol;
            return out;
        }
        if (out.iterations >= options.max_iters) {
            out.exit = AscentExit::MaxIters;
            return out;
        }

        Eigen::VectorXd p = hinv * g;
        double slope = p.dot(g);
        if (!(slope > 0.0)) { // curvature information unusable; restart on steepest ascent
            hinv.setIdentity();
            p = g;
            slope = g.squaredNorm();
        }

        double alpha = 1.0;
        double f_new = out.value;
        Eigen::VectorXd x_new;
        bool accepted = false;
        for (int h = 0; h < options.max_halvings; ++h) {
            x_new = out.x + alpha * p;
            f_new = f(x_new);
            if (std::isfinite(f_new) &&
                f_new >= out.value + std::max(options.armijo_c1 * alpha * slope,
                                              options.min_improvement)) {
                accepted = true;
                break;
            }
            alpha *= 0.5;
        }
        ++out.iterations;
        if (!accepted) {
            out.exit = AscentExit::Stall;
            return out;
        }

        Eigen::VectorXd g_new = finite_difference_gradient(f, x_new, options.fd_step);
        const Eigen::VectorXd s = x_new - out.x;
        const Eigen::VectorXd y = g - g_new; // gradient change of the negated objective
        const double sy = s.dot(y);
        if (sy > 1e-12 * s.norm() * y.norm()) {
            const Eigen::VectorXd hy = hinv * y;
            const double yhy = y.dot(hy);
            // inverse BFGS update for minimizing -f
            hinv += ((sy + yhy) / (sy * sy)) * (s * s.transpose());
            hinv -= (hy * s.transpose() + s * hy.transpose()) / sy;
        }
        out.x = std::move(x_new);
        out.value = f_new;
        g = std::move(g_new);
    }
}

namespace {

/// Fidelity ceiling used as an early ascent target: far tighter than any
/// on-manifold tolerance, loose enough to be reachable in double precision.
double fidelity_target(const OptimizeConfig& oc) {
    return 1.0 - std::min(1e-13, 0.01 * oc.tol_fidelity);
}

RunResult make_result(const GateProblem& problem, const Eigen::VectorXd& coords,
                      const OptimizeConfig& oc, int iterations) {
    RunResult r;
    r.final_x = problem.wrap(coords);
    r.final_u = to_matrix(r.final_x);
    const GateProblem::Values v = problem.values_at(coords);
    r.fidelity = v.fidelity;
    r.success = v.success;
    r.on_manifold = std::abs(1.0 - r.fidelity) < oc.tol_fidelity;
    r.iterations = iterations;
    return r;
}

/// Penalty legs plus fidelity re-polish; shared by both charts (the problem
/// object decides whether the success slot is S or the scaled success).
RunResult success_stage(const RunResult& r, const OptimizeConfig& oc, GateProblem& problem) {
    if (!r.on_manifold)
        throw std::invalid_argument("stage2: starting point is not on the F = 1 manifold");

    Eigen::VectorXd x = r.final_x.coords;
    int iterations = r.iterations;

    AscentOptions polish_opt;
    polish_opt.tol_gradient = oc.tol_gradient;
    polish_opt.max_iters = std::min(oc.max_iters, 500);
    polish_opt.target_value = fidelity_target(oc);
    auto fid = [&problem](const Eigen::VectorXd& c) { return problem.fidelity_at(c); };

    for (double mu : oc.penalty_weights) {
        auto merit = [&problem, mu](const Eigen::VectorXd& c) {
            const GateProblem::Values v = problem.values_at(c);
            return v.success - mu * (1.0 - v.fidelity);
        };
        AscentOptions leg_opt;
        leg_opt.tol_gradient = oc.tol_gradient;
        leg_opt.max_iters = oc.max_iters;
        AscentOutcome leg = maximize_bfgs(merit, x, leg_opt);
        x = std::move(leg.x);
        iterations += leg.iterations;

        AscentOutcome back = maximize_bfgs(fid, x, polish_opt);
        x = std::move(back.x);
        iterations += back.iterations;
    }

    RunResult out = make_result(problem, x, oc, iterations);
    out.restart_id = r.restart_id;
    out.wallclock_s = r.wallclock_s;
    return out;
}

/// In the unmasked general chart the coordinates are the matrix entries, so
/// the reported ray can be normalized to unit spectral norm without leaving
/// the chart. A mask pins the frozen diagonal to 1 and removes that freedom.
void normalize_general(RunResult& r, const OptimizeConfig& oc, const GateProblem& problem) {
    if (oc.chart != Chart::General || !oc.mask.empty()) return;
    const double sigma = spectral_norm(r.final_u);
    if (sigma <= 0.0 || std::abs(sigma - 1.0) < 1e-12) return;
    r.final_x.coords /= sigma;
    r.final_u = to_matrix(r.final_x);
    const GateProblem::Values v = problem.values_at(r.final_x.coords);
    r.fidelity = v.fidelity;
    r.success = v.success;
    r.on_manifold = std::abs(1.0 - r.fidelity) < oc.tol_fidelity;
}

} // namespace

RunResult stage1_fidelity(const ParamVector& x0, const OptimizeConfig& oc) {
    oc.validate();
    GateProblem problem(oc.gate, oc.mode_config, oc.chart, oc.mask);
    if (x0.coords.size() != problem.dim())
        throw std::invalid_argument("stage1: starting point does not match chart and mask");

    const auto t0 = std::chrono::steady_clock::now();
    auto fid = [&problem](const Eigen::VectorXd& c) { return problem.fidelity_at(c); };
    AscentOptions opt;
    opt.tol_gradient = oc.tol_gradient;
    opt.max_iters = oc.max_iters;
    opt.target_value = fidelity_target(oc);
    AscentOutcome a = maximize_bfgs(fid, x0.coords, opt);

    RunResult r = make_result(problem, a.x, oc, a.iterations);
    r.wallclock_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

RunResult stage2_success(const RunResult& r, const OptimizeConfig& oc) {
    oc.validate();
    GateProblem problem(oc.gate, oc.mode_config, oc.chart, oc.mask);
    const auto t0 = std::chrono::steady_clock::now();
    RunResult out = success_stage(r, oc, problem);
    normalize_general(out, oc, problem);
    out.wallclock_s += std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

RunResult optimize_scaled(const ParamVector& x0, const OptimizeConfig& oc) {
    if (oc.chart != Chart::General)
        throw std::invalid_argument("optimize_scaled: requires the general chart");
    RunResult r = stage1_fidelity(x0, oc);
    if (r.on_manifold) r = stage2_success(r, oc);
    return r;
}

RunResult run_restart(int restart_id, const OptimizeConfig& oc) {
    const std::uint64_t run_seed = derive_seed(oc.seed, static_cast<std::uint64_t>(restart_id));
    const ParamVector x0 =
        random_start(oc.chart, oc.mode_config.total_modes(), oc.mask, run_seed);
    const auto t0 = std::chrono::steady_clock::now();
    RunResult r = stage1_fidelity(x0, oc);
    if (r.on_manifold) r = stage2_success(r, oc);
    r.restart_id = restart_id;
    r.wallclock_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("LOQC_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

SweepResult sweep(const OptimizeConfig& oc) {
    oc.validate();
    const int n = oc.restarts;
    std::vector<RunResult> runs(static_cast<std::size_t>(n));

    const int workers = std::min(resolve_threads(oc.threads), n);
    std::atomic<int> next{0};
    auto worker = [&]() {
        while (true) {
            const int id = next.fetch_add(1);
            if (id >= n) return;
            try {
                runs[static_cast<std::size_t>(id)] = run_restart(id, oc);
            } catch (const std::exception& e) {
                // Failed runs stay off-manifold with zero success; the sweep goes on.
                std::cerr << "restart " << id << " failed: " << e.what() << "\n";
                runs[static_cast<std::size_t>(id)].restart_id = id;
            }
        }
    };
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int t = 0; t < workers; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    SweepResult result;
    result.runs = std::move(runs);
    std::sort(result.runs.begin(), result.runs.end(), [](const RunResult& a, const RunResult& b) {
        if (a.success != b.success) return a.success < b.success;
        return a.restart_id < b.restart_id;
    });

    Plateau current;
    double cluster_start = 0.0;
    auto flush = [&]() {
        if (current.count > 0) {
            current.success_mean /= current.count;
            result.plateaus.push_back(current);
        }
        current = Plateau{};
    };
    for (const RunResult& r : result.runs) {
        if (!r.on_manifold) continue;
        if (current.count > 0 && r.success - cluster_start >= kPlateauThreshold) flush();
        if (current.count == 0) {
            cluster_start = r.success;
            current.success_min = r.success;
        }
        current.success_mean += r.success;
        current.success_max = r.success;
        ++current.count;
    }
    flush();
    return result;
}

int manifold_dimension(const RunResult& r, const OptimizeConfig& oc) {
    if (!r.on_manifold)
        throw std::invalid_argument("manifold_dimension: result is not on the F = 1 manifold");
    GateProblem problem(oc.gate, oc.mode_config, oc.chart, oc.mask);
    const Eigen::VectorXd& x = r.final_x.coords;
    const Eigen::Index d = x.size();
    if (d == 0) return 0;

    auto fid = [&problem](const Eigen::VectorXd& c) { return problem.fidelity_at(c); };
    const double h = 1e-4;
    const double f0 = fid(x);
    Eigen::MatrixXd hess(d, d);
    Eigen::VectorXd probe = x;
    for (Eigen::Index i = 0; i < d; ++i) {
        probe[i] = x[i] + h;
        const double fp = fid(probe);
        probe[i] = x[i] - h;
        const double fm = fid(probe);
        probe[i] = x[i];
        hess(i, i) = (fp - 2.0 * f0 + fm) / (h * h);
    }
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = i + 1; j < d; ++j) {
            probe[i] = x[i] + h; probe[j] = x[j] + h;
            const double fpp = fid(probe);
            probe[j] = x[j] - h;
            const double fpm = fid(probe);
            probe[i] = x[i] - h; probe[j] = x[j] + h;
            const double fmp = fid(probe);
            probe[j] = x[j] - h;
            const double fmm = fid(probe);
            probe[i] = x[i]; probe[j] = x[j];
            hess(i, j) = hess(j, i) = (fpp - fpm - fmp + fmm) / (4.0 * h * h);
        }
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(hess);
    const Eigen::VectorXd& ev = es.eigenvalues();
    const double scale = ev.cwiseAbs().maxCoeff();
    if (scale == 0.0) return static_cast<int>(d);
    const double cutoff = 1e-6 * scale;
    int null_count = 0;
    int positive = 0;
    for (Eigen::Index i = 0; i < d; ++i) {
        if (std::abs(ev[i]) < cutoff)
            ++null_count;
        else if (ev[i] > 0.0)
            ++positive;
    }
    if (positive > 0)
        std::cerr << "manifold_dimension: " << positive
                  << " positive Hessian eigenvalue(s) above cutoff; "
                     "the point is not a fidelity maximum\n";
    return null_count;
}

VerifyReport verify(const Eigen::MatrixXcd& u, const TargetGate& gate, const ModeConfig& cfg,
                    double tol_fidelity) {
    const TransferMatrix a = transfer_matrix(u, cfg, gate.comp_basis, gate.out_basis);
    VerifyReport rep;
    rep.success = success(a);
    // a dead device (zero map) has no defined ray; report zero fidelity
    rep.fidelity = rep.success > 0.0 ? fidelity(a, gate) : 0.0;
    std::tie(rep.bound_lo, rep.bound_hi) = success_bounds(a);

    // Spread of the measurement probability over random normalized inputs;
    // collapses to zero at perfect fidelity.
    const Eigen::MatrixXcd gram = a.entries.adjoint() * a.entries;
    const int dc = gate.dc();
    SplitMix64 rng(0x5EEDu);
    const int samples = 100;
    double mean = 0.0, m2 = 0.0;
    for (int k = 0; k < samples; ++k) {
        Eigen::VectorXcd psi(dc);
        for (int i = 0; i < dc; ++i)
            psi[i] = std::complex<double>(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
        psi.normalize();
        const double p = (psi.adjoint() * gram * psi).value().real();
        const double delta = p - mean;
        mean += delta / (k + 1);
        m2 += delta * (p - mean);
    }
    rep.input_state_variance = m2 / samples;
    rep.pass = std::abs(1.0 - rep.fidelity) < tol_fidelity;
    return rep;
}

} // namespace loqc
