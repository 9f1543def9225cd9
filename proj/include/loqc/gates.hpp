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

#include <json.hpp>

#include <string>
#include <vector>

namespace loqc {

/// A target transformation defined projectively: the realized map A(U) has
/// perfect fidelity iff it is proportional to `target`. Stored normalized so
/// that Tr(At^dag At)/Dc = 1, which makes the success probability at perfect
/// fidelity read directly as |g|^2 for A = g At.
struct TargetGate {
    std::string name;
    std::vector<FockState> comp_basis; ///< input basis over the computational modes
    FockBasis out_basis;               ///< Fock basis the realized map acts into
    Eigen::MatrixXcd target;           ///< |out_basis| x |comp_basis|
    int n_modes = 0;                   ///< computational mode count Nc

    int dc() const { return static_cast<int>(comp_basis.size()); }
    /// Photon number of the largest computational sector (Mc).
    int comp_photons() const;
    /// True when basis states carry different photon numbers (e.g. the NS gate).
    bool sectored() const;
};

/// Embeds a Dc x Dc logical matrix into the output Fock basis: column j of
/// the result is sum_i logical(i, j) * e_{out index of comp_basis[i]},
/// then normalizes to Tr(At^dag At)/Dc = 1. Basis states with differing
/// photon numbers are rejected unless `allow_sectored` is set.
TargetGate make_gate_from_logical(std::string name, std::vector<FockState> comp_basis,
                                  const Eigen::MatrixXcd& logical, bool allow_sectored = false);

/// Nonlinear-sign gate on a single optical mode: |0>,|1>,|2> photon
/// components with the two-photon amplitude flipped, diag(1, 1, -1).
TargetGate make_ns();

/// Two-qubit controlled-sign gate diag(1,1,1,-1) on the dual-rail basis of 2
/// qubits in 4 modes; a 10 x 4 target.
TargetGate make_cs();

/// CNOT expressed at the target level: the controlled-sign gate conjugated by
/// logical Hadamards on the target qubit.
TargetGate make_cnot();

/// Three-qubit Toffoli in sign form (the standard Toffoli conjugated by a
/// Hadamard on the target qubit): diag(-1,...,-1,+1) with the +1 on the
/// dual-rail state (0,1,0,1,0,1); a 56 x 8 target.
TargetGate make_toffoli_sign();

std::vector<std::string> builtin_gate_names();
TargetGate make_builtin(const std::string& name);

/// Loads a gate from a JSON document of the form
///   { "name": str, "modes": int, "comp_basis": [[int,...],...],
///     "matrix": [[[re,im],...],...], "sectored": bool (optional) }
/// where "matrix" is the Dc x Dc logical matrix over comp_basis.
TargetGate load_gate(const nlohmann::json& doc);

} // namespace loqc
