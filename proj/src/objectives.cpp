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

#include "loqc/objectives.hpp"

#include <cmath>
#include <stdexcept>

namespace loqc {

std::complex<double> hs_overlap(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b, int dc) {
    return (a.adjoint() * b).trace() / static_cast<double>(dc);
}

double fidelity(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& at, int dc) {
    if (a.rows() != at.rows() || a.cols() != at.cols())
        throw std::invalid_argument("fidelity: shape mismatch between realized and target maps");
    const double na = hs_overlap(a, a, dc).real();
    const double nt = hs_overlap(at, at, dc).real();
    if (na <= 0.0 || nt <= 0.0)
        throw std::invalid_argument("fidelity: undefined for a zero-norm map");
    return std::norm(hs_overlap(a, at, dc)) / (na * nt);
}

double fidelity(const TransferMatrix& a, const TargetGate& t) {
    return fidelity(a.entries, t.target, t.dc());
}

double success(const Eigen::MatrixXcd& a, int dc) {
    return hs_overlap(a, a, dc).real();
}

double success(const TransferMatrix& a) { return success(a.entries, a.dc()); }

std::pair<double, double> success_bounds(const Eigen::MatrixXcd& a) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(a.adjoint() * a);
    const auto& ev = es.eigenvalues();
    return {ev.minCoeff(), ev.maxCoeff()};
}

std::pair<double, double> success_bounds(const TransferMatrix& a) {
    return success_bounds(a.entries);
}

double spectral_norm(const Eigen::MatrixXcd& w) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(w.adjoint() * w);
    return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

double scaled_success(const Eigen::MatrixXcd& w, const ModeConfig& cfg, const TargetGate& t) {
    const double sigma = spectral_norm(w);
    if (sigma <= 0.0)
        throw std::invalid_argument("scaled_success: undefined for the zero matrix");
    TransferMatrix a = transfer_matrix(w, cfg, t.comp_basis, t.out_basis);
    const int degree = 2 * (cfg.comp_photons + cfg.ancilla_photons());
    return success(a) / std::pow(sigma, degree);
}

ObjectiveValue evaluate_objectives(const TransferMatrix& a, const TargetGate& t) {
    ObjectiveValue v;
    v.fidelity = fidelity(a, t);
    v.success = success(a);
    v.fubini_study = std::acos(std::sqrt(std::min(1.0, std::max(0.0, v.fidelity))));
    return v;
}

Eigen::VectorXd finite_difference_gradient(const std::function<double(const Eigen::VectorXd&)>& f,
                                           const Eigen::VectorXd& x, double step) {
    Eigen::VectorXd g(x.size());
    Eigen::VectorXd probe = x;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        probe[i] = x[i] + step;
        const double fp = f(probe);
        probe[i] = x[i] - step;
        const double fm = f(probe);
        probe[i] = x[i];
        if (!std::isfinite(fp) || !std::isfinite(fm))
            throw std::runtime_error("finite_difference_gradient: non-finite objective value");
        g[i] = (fp - fm) / (2.0 * step);
    }
    return g;
}

} // namespace loqc
