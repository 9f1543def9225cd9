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

#include "loqc/param.hpp"
#include "loqc/rng.hpp"
#include "loqc/transfer.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstdint>

namespace loqc_test {

inline Eigen::MatrixXcd random_complex_matrix(int rows, int cols, std::uint64_t seed) {
    loqc::SplitMix64 rng(seed);
    Eigen::MatrixXcd m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            m(i, j) = std::complex<double>(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
    return m;
}

inline Eigen::VectorXcd random_complex_vector(int n, std::uint64_t seed) {
    loqc::SplitMix64 rng(seed ^ 0xABCDEFull);
    Eigen::VectorXcd v(n);
    for (int i = 0; i < n; ++i)
        v[i] = std::complex<double>(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
    return v;
}

inline Eigen::MatrixXcd random_unitary(int n, std::uint64_t seed) {
    return loqc::to_matrix(loqc::random_start(loqc::Chart::Unitary, n, {}, seed));
}

/// Two-qubit controlled-sign configuration: 4 computational modes, two
/// single-photon ancillas, no vacuum modes, one photon detected per ancilla.
inline loqc::ModeConfig cs_config(int n_ancillas = 2, int n_vacuum = 0) {
    loqc::ModeConfig cfg;
    cfg.n_comp_modes = 4;
    cfg.n_ancilla_modes = n_ancillas;
    cfg.n_vacuum_modes = n_vacuum;
    cfg.ancilla_input = loqc::FockState::Ones(n_ancillas);
    cfg.measurement = loqc::FockState::Zero(n_ancillas + n_vacuum);
    cfg.measurement.head(n_ancillas) = cfg.ancilla_input;
    cfg.comp_photons = 2;
    return cfg;
}

/// Nonlinear-sign configuration: one computational mode, one single-photon
/// ancilla, one vacuum mode.
inline loqc::ModeConfig ns_config() {
    loqc::ModeConfig cfg;
    cfg.n_comp_modes = 1;
    cfg.n_ancilla_modes = 1;
    cfg.n_vacuum_modes = 1;
    cfg.ancilla_input = loqc::FockState::Ones(1);
    cfg.measurement = loqc::FockState::Zero(2);
    cfg.measurement[0] = 1;
    cfg.comp_photons = 2;
    return cfg;
}

/// Toffoli-sign configuration: 6 computational modes, three single-photon
/// ancillas.
inline loqc::ModeConfig toffoli_config(int n_ancillas = 3) {
    loqc::ModeConfig cfg;
    cfg.n_comp_modes = 6;
    cfg.n_ancilla_modes = n_ancillas;
    cfg.n_vacuum_modes = 0;
    cfg.ancilla_input = loqc::FockState::Ones(n_ancillas);
    cfg.measurement = cfg.ancilla_input;
    cfg.comp_photons = 3;
    return cfg;
}

} // namespace loqc_test
