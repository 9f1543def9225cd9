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
#include "loqc/transfer.hpp"

#include <Eigen/Dense>

#include <complex>
#include <functional>
#include <utility>

namespace loqc {

/// Normalized Hilbert-Schmidt inner product <A|B> = Tr(A^dag B)/Dc.
std::complex<double> hs_overlap(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b, int dc);

/// Operational fidelity F = |<A|At>|^2 / (<A|A><At|At>). Projective: invariant
/// under independent nonzero complex rescaling of either matrix. Throws on a
/// zero-norm input, where the ray is undefined.
double fidelity(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& at, int dc);
double fidelity(const TransferMatrix& a, const TargetGate& t);

/// Success probability S = <A|A> = Tr(A^dag A)/Dc. At perfect fidelity with a
/// normalized target this is |g|^2 for A = g At, the probability of the
/// post-selected measurement pattern, independent of the input state.
double success(const Eigen::MatrixXcd& a, int dc);
double success(const TransferMatrix& a);

/// Extreme eigenvalues (lo, hi) of A^dag A: the input-state-wise bounds
/// {A}min^2 <= S <= {A}max^2 on the measurement probability.
std::pair<double, double> success_bounds(const Eigen::MatrixXcd& a);
std::pair<double, double> success_bounds(const TransferMatrix& a);

/// Largest singular value of w.
double spectral_norm(const Eigen::MatrixXcd& w);

/// Success of a general (not necessarily unitary) matrix, scaled by the
/// spectral norm: S(w) / ||w||^(2(Mc+Ma)). Invariant under w -> c w, equal to
/// plain success for unitary w. This is the objective for the dilation
/// approach, where vacuum modes are implicit; its gradient is discontinuous
/// where the top singular value of w is degenerate.
double scaled_success(const Eigen::MatrixXcd& w, const ModeConfig& cfg, const TargetGate& t);

/// Fidelity, success, and the Fubini-Study angle gamma = arccos(sqrt(F)) in
/// one evaluation.
struct ObjectiveValue {
    double fidelity = 0.0;
    double success = 0.0;
    double fubini_study = 0.0;
};
ObjectiveValue evaluate_objectives(const TransferMatrix& a, const TargetGate& t);

/// Central finite-difference gradient with step h, entrywise:
/// g_i = (f(x + h e_i) - f(x - h e_i)) / (2h). Throws on a non-finite
/// objective value.
Eigen::VectorXd finite_difference_gradient(const std::function<double(const Eigen::VectorXd&)>& f,
                                           const Eigen::VectorXd& x, double step = 1e-6);

} // namespace loqc
