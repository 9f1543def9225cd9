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

#include "loqc/transfer.hpp"

#include "loqc/permanent.hpp"

#include <cmath>
#include <stdexcept>

namespace loqc {

namespace {

double factorial(int n) {
    double f = 1.0;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

double inv_sqrt_fact_product(const FockState& occ) {
    double f = 1.0;
    for (Eigen::Index i = 0; i < occ.size(); ++i) f *= factorial(occ[i]);
    return 1.0 / std::sqrt(f);
}

void append_expanded(const FockState& occ, int mode_offset, std::vector<int>& indices) {
    for (Eigen::Index i = 0; i < occ.size(); ++i)
        for (int k = 0; k < occ[i]; ++k) indices.push_back(mode_offset + static_cast<int>(i));
}

} // namespace

void ModeConfig::validate() const {
    if (n_comp_modes < 1)
        throw std::invalid_argument("ModeConfig: need at least one computational mode");
    if (n_ancilla_modes < 0 || n_vacuum_modes < 0)
        throw std::invalid_argument("ModeConfig: negative mode count");
    if (ancilla_input.size() != n_ancilla_modes)
        throw std::invalid_argument("ModeConfig: ancilla pattern length must equal the ancilla mode count");
    if (measurement.size() != n_ancilla_modes + n_vacuum_modes)
        throw std::invalid_argument("ModeConfig: measurement pattern must span the ancilla and vacuum modes");
    if ((ancilla_input.size() && ancilla_input.minCoeff() < 0) ||
        (measurement.size() && measurement.minCoeff() < 0))
        throw std::invalid_argument("ModeConfig: negative occupation");
    const int measured = measurement.size() ? measurement.sum() : 0;
    if (measured != ancilla_photons())
        throw std::invalid_argument(
            "ModeConfig: measured photon total must equal the ancilla input total "
            "(photon conservation onto the computational modes)");
    if (comp_photons < 0)
        throw std::invalid_argument("ModeConfig: negative computational photon number");
}

TransferEvaluator::TransferEvaluator(ModeConfig cfg, std::vector<FockState> in_basis)
    : TransferEvaluator(cfg, in_basis, output_basis_for(in_basis, cfg.n_comp_modes)) {}

TransferEvaluator::TransferEvaluator(ModeConfig cfg, std::vector<FockState> in_basis,
                                     FockBasis out_basis)
    : cfg_(std::move(cfg)), in_basis_(std::move(in_basis)), out_basis_(std::move(out_basis)) {
    cfg_.validate();
    if (in_basis_.empty())
        throw std::invalid_argument("TransferEvaluator: empty input basis");
    if (out_basis_.n_modes() != cfg_.n_comp_modes)
        throw std::invalid_argument("TransferEvaluator: output basis mode count mismatch");

    in_sides_.reserve(in_basis_.size());
    for (const FockState& s : in_basis_) {
        if (s.size() != cfg_.n_comp_modes)
            throw std::invalid_argument("TransferEvaluator: input state has wrong mode count");
        if (s.minCoeff() < 0)
            throw std::invalid_argument("TransferEvaluator: negative occupation in input state");
        Side side;
        append_expanded(s, 0, side.indices);
        append_expanded(cfg_.ancilla_input, cfg_.n_comp_modes, side.indices);
        side.photons = static_cast<int>(side.indices.size());
        side.inv_sqrt_fact = inv_sqrt_fact_product(s) * inv_sqrt_fact_product(cfg_.ancilla_input);
        in_sides_.push_back(std::move(side));
    }
    out_sides_.reserve(static_cast<std::size_t>(out_basis_.size()));
    for (int i = 0; i < out_basis_.size(); ++i) {
        const FockState& s = out_basis_.state(i);
        Side side;
        append_expanded(s, 0, side.indices);
        append_expanded(cfg_.measurement, cfg_.n_comp_modes, side.indices);
        side.photons = static_cast<int>(side.indices.size());
        side.inv_sqrt_fact = inv_sqrt_fact_product(s) * inv_sqrt_fact_product(cfg_.measurement);
        out_sides_.push_back(std::move(side));
    }

    int max_photons = 0;
    for (const Side& s : in_sides_) max_photons = std::max(max_photons, s.photons);
    if (max_photons > kMaxPermanentDim)
        throw std::invalid_argument("TransferEvaluator: photon number exceeds the permanent guard");
    scratch_.resize(max_photons, max_photons);
}

void TransferEvaluator::evaluate(const Eigen::MatrixXcd& u, Eigen::MatrixXcd& a) const {
    const int n = cfg_.total_modes();
    if (u.rows() != n || u.cols() != n)
        throw std::invalid_argument("TransferEvaluator: interferometer must be N x N for N = Nc+Na+Nv");

    a.resize(out_basis_.size(), static_cast<Eigen::Index>(in_basis_.size()));
    for (std::size_t j = 0; j < in_sides_.size(); ++j) {
        const Side& in = in_sides_[j];
        for (std::size_t i = 0; i < out_sides_.size(); ++i) {
            const Side& out = out_sides_[i];
            if (in.photons != out.photons) {
                // Photon-number mismatch between sectors: amplitude is exactly zero.
                a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = 0.0;
                continue;
            }
            const int p = in.photons;
            for (int r = 0; r < p; ++r)
                for (int c = 0; c < p; ++c)
                    scratch_(r, c) = u(in.indices[static_cast<std::size_t>(r)],
                                       out.indices[static_cast<std::size_t>(c)]);
            a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                permanent(scratch_.topLeftCorner(p, p)) * in.inv_sqrt_fact * out.inv_sqrt_fact;
        }
    }
}

TransferMatrix transfer_matrix(const Eigen::MatrixXcd& u, const ModeConfig& cfg,
                               const std::vector<FockState>& in_basis) {
    TransferEvaluator eval(cfg, in_basis);
    TransferMatrix a{eval.out_basis(), eval.in_basis(), {}};
    eval.evaluate(u, a.entries);
    return a;
}

TransferMatrix transfer_matrix(const Eigen::MatrixXcd& u, const ModeConfig& cfg,
                               const std::vector<FockState>& in_basis,
                               const FockBasis& out_basis) {
    TransferEvaluator eval(cfg, in_basis, out_basis);
    TransferMatrix a{eval.out_basis(), eval.in_basis(), {}};
    eval.evaluate(u, a.entries);
    return a;
}

Eigen::MatrixXcd full_omega(const Eigen::MatrixXcd& u, int photons) {
    const int n = static_cast<int>(u.rows());
    if (u.cols() != n)
        throw std::invalid_argument("full_omega: matrix must be square");
    const double dev = (u.adjoint() * u - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
    if (dev > 1e-10)
        throw std::invalid_argument("full_omega: input is not unitary within 1e-10");

    const FockBasis basis = enumerate_fock(photons, n);
    Eigen::MatrixXcd omega(basis.size(), basis.size());
    std::vector<double> inv_sqrt(static_cast<std::size_t>(basis.size()));
    for (int i = 0; i < basis.size(); ++i)
        inv_sqrt[static_cast<std::size_t>(i)] = inv_sqrt_fact_product(basis.state(i));
    for (int i = 0; i < basis.size(); ++i)
        for (int j = 0; j < basis.size(); ++j)
            omega(i, j) = permanent(expand_submatrix(u, basis.state(i), basis.state(j))) *
                          inv_sqrt[static_cast<std::size_t>(i)] *
                          inv_sqrt[static_cast<std::size_t>(j)];
    return omega;
}

} // namespace loqc
