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

#include "loqc/fock.hpp"

#include <Eigen/Dense>

#include <vector>

namespace loqc {

/// Mode and photon bookkeeping for a measurement-assisted device.
/// The interferometer acts on N = comp + ancilla + vacuum modes, in that
/// order. The measurement pattern spans the ancilla and vacuum modes jointly.
struct ModeConfig {
    int n_comp_modes = 0;    ///< Nc, leading modes carrying the computational state
    int n_ancilla_modes = 0; ///< Na
    int n_vacuum_modes = 0;  ///< Nv, zero input photons
    FockState ancilla_input; ///< occupations over the Na ancilla modes
    FockState measurement;   ///< detected photocounts over the Na+Nv measured modes
    int comp_photons = 0;    ///< Mc, photons of the (largest) computational sector

    int total_modes() const { return n_comp_modes + n_ancilla_modes + n_vacuum_modes; }
    int ancilla_photons() const { return ancilla_input.size() ? ancilla_input.sum() : 0; }

    /// Throws std::invalid_argument on any violated invariant, in particular
    /// when the measured photon total differs from the ancilla input total
    /// (which would change the computational photon number).
    void validate() const;
};

/// The post-selected linear map A: computational input basis -> output Fock
/// basis on the computational modes. Rows follow out_basis, columns in_basis.
struct TransferMatrix {
    FockBasis out_basis;
    std::vector<FockState> in_basis;
    Eigen::MatrixXcd entries;

    int dc() const { return static_cast<int>(in_basis.size()); }
};

/// Builds A(U) for one interferometer matrix. Precomputes the occupation
/// index tables once so that repeated evaluation at many U (the optimizer's
/// hot path) only fills entries. Each entry is
///   per(u[rows = in + ancilla + vacuum, cols = out + measurement])
///     / sqrt(prod n_i! * prod m_j!),
/// a polynomial of degree (input photons + ancilla photons) in entries of u.
/// Not thread safe; give each worker its own instance.
class TransferEvaluator {
public:
    TransferEvaluator(ModeConfig cfg, std::vector<FockState> in_basis);
    TransferEvaluator(ModeConfig cfg, std::vector<FockState> in_basis, FockBasis out_basis);

    const ModeConfig& config() const { return cfg_; }
    const FockBasis& out_basis() const { return out_basis_; }
    const std::vector<FockState>& in_basis() const { return in_basis_; }

    /// Fills `a` (resized to |out| x |in|) with the entries of A(u).
    void evaluate(const Eigen::MatrixXcd& u, Eigen::MatrixXcd& a) const;

    Eigen::MatrixXcd operator()(const Eigen::MatrixXcd& u) const {
        Eigen::MatrixXcd a;
        evaluate(u, a);
        return a;
    }

private:
    struct Side {
        std::vector<int> indices; ///< expanded mode indices, one per photon
        int photons = 0;
        double inv_sqrt_fact = 1.0; ///< 1/sqrt(prod occupation!)
    };

    ModeConfig cfg_;
    std::vector<FockState> in_basis_;
    FockBasis out_basis_;
    std::vector<Side> in_sides_;  ///< input occupations: state + ancilla + vacuum zeros
    std::vector<Side> out_sides_; ///< output occupations: state + measurement
    mutable Eigen::MatrixXcd scratch_;
};

/// One-shot A(U) construction; see TransferEvaluator for the entry formula.
TransferMatrix transfer_matrix(const Eigen::MatrixXcd& u, const ModeConfig& cfg,
                               const std::vector<FockState>& in_basis);
TransferMatrix transfer_matrix(const Eigen::MatrixXcd& u, const ModeConfig& cfg,
                               const std::vector<FockState>& in_basis,
                               const FockBasis& out_basis);

/// The induced transformation on the full `photons`-photon Fock space over
/// all N modes of a unitary u, as a matrix over enumerate_fock(photons, N).
/// Entry (i, j) is the amplitude from input basis state i to output basis
/// state j, so composition reads full_omega(u1 * u2) = full_omega(u1) *
/// full_omega(u2). Intended as a small-scale test oracle for
/// transfer_matrix, not for optimization loops.
Eigen::MatrixXcd full_omega(const Eigen::MatrixXcd& u, int photons);

} // namespace loqc
