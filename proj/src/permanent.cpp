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

#include "loqc/permanent.hpp"

namespace loqc {

namespace {

void expand_indices(const Eigen::VectorXi& mult, std::vector<int>& out) {
    out.clear();
    for (Eigen::Index i = 0; i < mult.size(); ++i) {
        if (mult[i] < 0)
            throw std::invalid_argument("expand_submatrix: negative multiplicity");
        for (int k = 0; k < mult[i]; ++k) out.push_back(static_cast<int>(i));
    }
}

} // namespace

Eigen::MatrixXcd expand_submatrix(const Eigen::MatrixXcd& u,
                                  const Eigen::VectorXi& row_mult,
                                  const Eigen::VectorXi& col_mult) {
    if (row_mult.size() > u.rows() || col_mult.size() > u.cols())
        throw std::invalid_argument("expand_submatrix: multiplicity vector longer than matrix dimension");
    if (row_mult.sum() != col_mult.sum())
        throw std::invalid_argument("expand_submatrix: photon number not conserved between rows and columns");

    std::vector<int> rows, cols;
    expand_indices(row_mult, rows);
    expand_indices(col_mult, cols);

    const int n = static_cast<int>(rows.size());
    Eigen::MatrixXcd out(n, n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            out(a, b) = u(rows[static_cast<std::size_t>(a)], cols[static_cast<std::size_t>(b)]);
    return out;
}

} // namespace loqc
