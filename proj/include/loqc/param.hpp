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

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

namespace loqc {

/// Coordinate chart for the interferometer matrix.
///  - Unitary: U = exp(sum_j x_j H_j) over a complete anti-Hermitian basis;
///    N^2 real coordinates for N modes (fewer when modes are frozen).
///  - General: arbitrary complex matrix, 2 N^2 real coordinates packing
///    re/im of each entry. Used by the dilation approach.
enum class Chart { Unitary, General };

/// Real coordinate vector plus the chart it lives in. Frozen modes (the
/// ansatz mask) contribute no coordinates; the matrix is the identity on
/// their rows and columns.
struct ParamVector {
    Chart chart = Chart::Unitary;
    int n_modes = 0;
    std::vector<int> mask; ///< frozen mode indices, 0-based, sorted ascending
    Eigen::VectorXd coords;

    int active_modes() const { return n_modes - static_cast<int>(mask.size()); }
};

/// Number of coordinates for a chart: a^2 (unitary) or 2 a^2 (general) where
/// a is the count of non-frozen modes.
int coord_count(Chart chart, int n_modes, const std::vector<int>& mask);

/// Coordinate origin mapping to the identity matrix: the zero vector for the
/// unitary chart, the packed identity for the general chart.
ParamVector zero_params(Chart chart, int n_modes, std::vector<int> mask = {});

/// Maps coordinates to the interferometer matrix. The unitary chart uses the
/// exact eigendecomposition exponential of the anti-Hermitian generator sum;
/// the result is unitary to machine precision and exactly the identity at
/// x = 0. Frozen modes come out as identity rows/columns in both charts.
///
/// Unitary-chart coordinate layout over the active modes a_0 < a_1 < ...:
/// first the diagonal phase generators (i E_kk), then for each pair p < q in
/// lexicographic order the real rotation (E_pq - E_qp) followed by the
/// imaginary symmetric generator i(E_pq + E_qp).
Eigen::MatrixXcd to_matrix(const ParamVector& x);

/// Inverse chart map. For the unitary chart this takes the principal matrix
/// logarithm (eigenphases in (-pi, pi]); coordinates of frozen modes are
/// dropped. For the general chart it packs the free block entries.
ParamVector from_matrix(const Eigen::MatrixXcd& u, Chart chart, std::vector<int> mask = {});

/// Random starting point, deterministic under the seed:
///  - Unitary chart: coordinates i.i.d. uniform in [-pi, pi).
///  - General chart: free-block entries with re/im i.i.d. uniform in [-1, 1),
///    then rescaled so the block's largest singular value is 1.
ParamVector random_start(Chart chart, int n_modes, const std::vector<int>& mask,
                         std::uint64_t seed);

/// Freezes additional modes: removes every coordinate that generates an entry
/// in the frozen rows/columns. Idempotent.
ParamVector apply_mask(const ParamVector& x, const std::vector<int>& frozen_modes);

/// Max-norm deviation from unitarity, ||U^dag U - I||_inf.
double unitarity_error(const Eigen::MatrixXcd& u);

} // namespace loqc
