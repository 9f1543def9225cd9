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

#include "loqc/param.hpp"

#include "loqc/rng.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <set>
#include <stdexcept>

namespace loqc {

namespace {

using Complex = std::complex<double>;

std::vector<int> active_mode_list(int n_modes, const std::vector<int>& mask) {
    std::set<int> frozen(mask.begin(), mask.end());
    for (int m : frozen)
        if (m < 0 || m >= n_modes)
            throw std::invalid_argument("mask: frozen mode index out of range");
    std::vector<int> active;
    for (int m = 0; m < n_modes; ++m)
        if (!frozen.count(m)) active.push_back(m);
    return active;
}

std::vector<int> normalize_mask(const std::vector<int>& mask) {
    std::set<int> s(mask.begin(), mask.end());
    return {s.begin(), s.end()};
}

void check_coords(const ParamVector& x) {
    if (x.coords.size() != coord_count(x.chart, x.n_modes, x.mask))
        throw std::invalid_argument("ParamVector: coordinate count does not match chart and mask");
}

double block_spectral_norm(const Eigen::MatrixXcd& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m.adjoint() * m);
    return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

} // namespace

int coord_count(Chart chart, int n_modes, const std::vector<int>& mask) {
    const int a = static_cast<int>(active_mode_list(n_modes, mask).size());
    return chart == Chart::Unitary ? a * a : 2 * a * a;
}

ParamVector zero_params(Chart chart, int n_modes, std::vector<int> mask) {
    ParamVector x;
    x.chart = chart;
    x.n_modes = n_modes;
    x.mask = normalize_mask(mask);
    x.coords = Eigen::VectorXd::Zero(coord_count(chart, n_modes, x.mask));
    if (chart == Chart::General) {
        const auto active = active_mode_list(n_modes, x.mask);
        const int a = static_cast<int>(active.size());
        for (int i = 0; i < a; ++i) x.coords[2 * (i * a + i)] = 1.0; // re of diagonal
    }
    return x;
}

Eigen::MatrixXcd to_matrix(const ParamVector& x) {
    check_coords(x);
    const int n = x.n_modes;
    const auto active = active_mode_list(n, x.mask);
    const int a = static_cast<int>(active.size());

    if (x.chart == Chart::General) {
        Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(n, n);
        for (int i = 0; i < a; ++i)
            for (int j = 0; j < a; ++j) {
                const int base = 2 * (i * a + j);
                m(active[static_cast<std::size_t>(i)], active[static_cast<std::size_t>(j)]) =
                    Complex(x.coords[base], x.coords[base + 1]);
            }
        return m;
    }

    if (a == 0 || x.coords.size() == 0 || x.coords.cwiseAbs().maxCoeff() == 0.0)
        return Eigen::MatrixXcd::Identity(n, n);

    // Hermitian K = -i sum_j x_j H_j; U = exp(iK) via eigendecomposition,
    // exact for anti-Hermitian generator sums.
    Eigen::MatrixXcd k = Eigen::MatrixXcd::Zero(n, n);
    int idx = 0;
    for (int t = 0; t < a; ++t)
        k(active[static_cast<std::size_t>(t)], active[static_cast<std::size_t>(t)]) =
            x.coords[idx++];
    for (int p = 0; p < a; ++p)
        for (int q = p + 1; q < a; ++q) {
            const double anti = x.coords[idx++]; // coefficient of E_pq - E_qp
            const double sym = x.coords[idx++];  // coefficient of i(E_pq + E_qp)
            const int mp = active[static_cast<std::size_t>(p)];
            const int mq = active[static_cast<std::size_t>(q)];
            k(mp, mq) = Complex(sym, -anti);
            k(mq, mp) = Complex(sym, anti);
        }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(k);
    const Eigen::VectorXd& phases = es.eigenvalues();
    Eigen::VectorXcd expi(phases.size());
    for (Eigen::Index i = 0; i < phases.size(); ++i)
        expi[i] = std::polar(1.0, phases[i]);
    return es.eigenvectors() * expi.asDiagonal() * es.eigenvectors().adjoint();
}

ParamVector from_matrix(const Eigen::MatrixXcd& u, Chart chart, std::vector<int> mask) {
    const int n = static_cast<int>(u.rows());
    if (u.cols() != n)
        throw std::invalid_argument("from_matrix: matrix must be square");
    ParamVector x;
    x.chart = chart;
    x.n_modes = n;
    x.mask = normalize_mask(mask);
    const auto active = active_mode_list(n, x.mask);
    const int a = static_cast<int>(active.size());
    x.coords = Eigen::VectorXd::Zero(coord_count(chart, n, x.mask));

    if (chart == Chart::General) {
        for (int i = 0; i < a; ++i)
            for (int j = 0; j < a; ++j) {
                const Complex z = u(active[static_cast<std::size_t>(i)],
                                    active[static_cast<std::size_t>(j)]);
                const int base = 2 * (i * a + j);
                x.coords[base] = z.real();
                x.coords[base + 1] = z.imag();
            }
        return x;
    }

    if (unitarity_error(u) > 1e-8)
        throw std::invalid_argument("from_matrix: unitary chart requires a unitary matrix");

    // Principal logarithm: u = V diag(e^{i theta}) V^dag with theta in (-pi, pi].
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(u);
    Eigen::VectorXcd logphase(n);
    for (int i = 0; i < n; ++i)
        logphase[i] = std::arg(es.eigenvalues()[i]);
    Eigen::MatrixXcd k = es.eigenvectors() * logphase.asDiagonal() *
                         es.eigenvectors().inverse();
    k = ((k + k.adjoint()) / 2.0).eval(); // enforce Hermiticity against roundoff

    int idx = 0;
    for (int t = 0; t < a; ++t)
        x.coords[idx++] = k(active[static_cast<std::size_t>(t)],
                            active[static_cast<std::size_t>(t)]).real();
    for (int p = 0; p < a; ++p)
        for (int q = p + 1; q < a; ++q) {
            const Complex z = k(active[static_cast<std::size_t>(p)],
                                active[static_cast<std::size_t>(q)]);
            x.coords[idx++] = -z.imag(); // anti coefficient
            x.coords[idx++] = z.real();  // sym coefficient
        }
    return x;
}

ParamVector random_start(Chart chart, int n_modes, const std::vector<int>& mask,
                         std::uint64_t seed) {
    ParamVector x;
    x.chart = chart;
    x.n_modes = n_modes;
    x.mask = normalize_mask(mask);
    const int dim = coord_count(chart, n_modes, x.mask);
    x.coords.resize(dim);
    SplitMix64 rng(seed);

    if (chart == Chart::Unitary) {
        for (int i = 0; i < dim; ++i)
            x.coords[i] = rng.uniform(-std::numbers::pi, std::numbers::pi);
        return x;
    }

    const int a = x.active_modes();
    Eigen::MatrixXcd block(a, a);
    for (int i = 0; i < a; ++i)
        for (int j = 0; j < a; ++j) {
            const double re = rng.uniform(-1.0, 1.0);
            const double im = rng.uniform(-1.0, 1.0);
            block(i, j) = Complex(re, im);
        }
    const double sigma = block_spectral_norm(block);
    block /= sigma;
    for (int i = 0; i < a; ++i)
        for (int j = 0; j < a; ++j) {
            const int base = 2 * (i * a + j);
            x.coords[base] = block(i, j).real();
            x.coords[base + 1] = block(i, j).imag();
        }
    return x;
}

ParamVector apply_mask(const ParamVector& x, const std::vector<int>& frozen_modes) {
    check_coords(x);
    std::set<int> merged(x.mask.begin(), x.mask.end());
    merged.insert(frozen_modes.begin(), frozen_modes.end());
    ParamVector y;
    y.chart = x.chart;
    y.n_modes = x.n_modes;
    y.mask = {merged.begin(), merged.end()};

    const auto old_active = active_mode_list(x.n_modes, x.mask);
    const auto new_active = active_mode_list(x.n_modes, y.mask);
    y.coords = Eigen::VectorXd::Zero(coord_count(y.chart, y.n_modes, y.mask));

    // Positions of the surviving modes within the old active list.
    std::vector<int> keep;
    for (std::size_t t = 0; t < old_active.size(); ++t)
        if (std::find(new_active.begin(), new_active.end(), old_active[t]) != new_active.end())
            keep.push_back(static_cast<int>(t));

    const int a_old = static_cast<int>(old_active.size());
    const int a_new = static_cast<int>(new_active.size());
    if (y.chart == Chart::General) {
        for (int i = 0; i < a_new; ++i)
            for (int j = 0; j < a_new; ++j) {
                const int src = 2 * (keep[static_cast<std::size_t>(i)] * a_old +
                                     keep[static_cast<std::size_t>(j)]);
                const int dst = 2 * (i * a_new + j);
                y.coords[dst] = x.coords[src];
                y.coords[dst + 1] = x.coords[src + 1];
            }
        return y;
    }

    auto old_pair_base = [a_old](int p, int q) {
        // offset of pair (p, q), p < q, after the a_old diagonal coords
        return a_old + 2 * (p * a_old - p * (p + 1) / 2 + (q - p - 1));
    };
    auto new_pair_base = [a_new](int p, int q) {
        return a_new + 2 * (p * a_new - p * (p + 1) / 2 + (q - p - 1));
    };
    for (int t = 0; t < a_new; ++t)
        y.coords[t] = x.coords[keep[static_cast<std::size_t>(t)]];
    for (int p = 0; p < a_new; ++p)
        for (int q = p + 1; q < a_new; ++q) {
            const int src = old_pair_base(keep[static_cast<std::size_t>(p)],
                                          keep[static_cast<std::size_t>(q)]);
            const int dst = new_pair_base(p, q);
            y.coords[dst] = x.coords[src];
            y.coords[dst + 1] = x.coords[src + 1];
        }
    return y;
}

double unitarity_error(const Eigen::MatrixXcd& u) {
    const Eigen::Index n = u.rows();
    return (u.adjoint() * u - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
}

} // namespace loqc
