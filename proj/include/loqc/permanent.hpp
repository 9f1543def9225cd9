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

#include <bit>
#include <complex>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace loqc {

/// Largest dimension accepted by permanent(); 2^n work beyond this is outside
/// anything this library computes (expanded matrices never exceed the total
/// photon number, at most 6 for the built-in gates).
inline constexpr int kMaxPermanentDim = 16;

/// Largest dimension accepted by the n! reference evaluator.
inline constexpr int kMaxBruteForceDim = 8;

/// Permanent of a square matrix: per(m) = sum over permutations s of
/// prod_i m(i, s(i)). Computed by Ryser's inclusion-exclusion formula with
/// Gray-code column updates, O(2^n * n). per of the empty 0x0 matrix is 1.
template <typename Derived>
std::complex<double> permanent(const Eigen::MatrixBase<Derived>& m) {
    const int n = static_cast<int>(m.rows());
    if (m.cols() != m.rows())
        throw std::invalid_argument("permanent: matrix must be square");
    if (n > kMaxPermanentDim)
        throw std::invalid_argument("permanent: dimension exceeds the 2^n guard");
    if (n == 0) return {1.0, 0.0};

    using C = std::complex<double>;
    C rowsum[kMaxPermanentDim];
    for (int i = 0; i < n; ++i) rowsum[i] = C(0.0, 0.0);

    C total(0.0, 0.0);
    int popcount = 0;
    const std::uint64_t last = (std::uint64_t{1} << n) - 1;
    for (std::uint64_t k = 1; k <= last; ++k) {
        // Gray code k ^ (k >> 1) flips bit ctz(k) relative to the previous step.
        const int j = std::countr_zero(k);
        const bool added = ((((k ^ (k >> 1)) >> j) & 1ull) != 0);
        if (added) {
            for (int i = 0; i < n; ++i) rowsum[i] += m(i, j);
            ++popcount;
        } else {
            for (int i = 0; i < n; ++i) rowsum[i] -= m(i, j);
            --popcount;
        }
        C prod = rowsum[0];
        for (int i = 1; i < n; ++i) prod *= rowsum[i];
        if (((n - popcount) & 1) == 0)
            total += prod;
        else
            total -= prod;
    }
    return total;
}

/// Reference permanent: direct sum over all n! permutations. Test oracle for
/// permanent(); keep inputs at n <= 8.
template <typename Derived>
std::complex<double> permanent_bruteforce(const Eigen::MatrixBase<Derived>& m) {
    const int n = static_cast<int>(m.rows());
    if (m.cols() != m.rows())
        throw std::invalid_argument("permanent_bruteforce: matrix must be square");
    if (n > kMaxBruteForceDim)
        throw std::invalid_argument("permanent_bruteforce: dimension exceeds the n! guard");
    if (n == 0) return {1.0, 0.0};

    using C = std::complex<double>;
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    C total(0.0, 0.0);
    do {
        C prod(1.0, 0.0);
        for (int i = 0; i < n; ++i) prod *= m(i, perm[static_cast<std::size_t>(i)]);
        total += prod;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

/// Square matrix formed by repeating row i of `u` row_mult[i] times and
/// column j col_mult[j] times, indices in ascending order. The photon
/// multiplicity sums must agree; this is the matrix whose permanent gives a
/// multi-photon transition amplitude.
Eigen::MatrixXcd expand_submatrix(const Eigen::MatrixXcd& u,
                                  const Eigen::VectorXi& row_mult,
                                  const Eigen::VectorXi& col_mult);

} // namespace loqc
