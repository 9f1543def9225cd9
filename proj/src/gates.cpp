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

#include "loqc/gates.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

namespace loqc {

int TargetGate::comp_photons() const {
    int m = 0;
    for (const FockState& s : comp_basis) m = std::max(m, total_photons(s));
    return m;
}

bool TargetGate::sectored() const {
    std::set<int> sectors;
    for (const FockState& s : comp_basis) sectors.insert(total_photons(s));
    return sectors.size() > 1;
}

TargetGate make_gate_from_logical(std::string name, std::vector<FockState> comp_basis,
                                  const Eigen::MatrixXcd& logical, bool allow_sectored) {
    if (comp_basis.empty())
        throw std::invalid_argument("make_gate_from_logical: empty computational basis");
    const int dc = static_cast<int>(comp_basis.size());
    if (logical.rows() != dc || logical.cols() != dc)
        throw std::invalid_argument("make_gate_from_logical: matrix shape must match the basis size");

    std::set<int> sectors;
    for (const FockState& s : comp_basis) sectors.insert(total_photons(s));
    if (sectors.size() > 1 && !allow_sectored)
        throw std::invalid_argument(
            "make_gate_from_logical: basis states carry different photon numbers; "
            "pass the sectored flag for NS-style gates");

    TargetGate g;
    g.name = std::move(name);
    g.n_modes = static_cast<int>(comp_basis.front().size());
    g.out_basis = output_basis_for(comp_basis, g.n_modes);
    g.comp_basis = std::move(comp_basis);
    g.target = Eigen::MatrixXcd::Zero(g.out_basis.size(), dc);
    for (int i = 0; i < dc; ++i) {
        const int row = g.out_basis.index_of(g.comp_basis[static_cast<std::size_t>(i)]);
        for (int j = 0; j < dc; ++j) g.target(row, j) += logical(i, j);
    }
    const double norm2 = (g.target.adjoint() * g.target).trace().real() / dc;
    if (norm2 <= 0.0)
        throw std::invalid_argument("make_gate_from_logical: zero target matrix");
    g.target /= std::sqrt(norm2);
    return g;
}

TargetGate make_ns() {
    std::vector<FockState> basis;
    for (int p = 0; p <= 2; ++p) {
        FockState s(1);
        s << p;
        basis.push_back(s);
    }
    Eigen::MatrixXcd logical = Eigen::MatrixXcd::Identity(3, 3);
    logical(2, 2) = -1.0;
    return make_gate_from_logical("ns", std::move(basis), logical, /*allow_sectored=*/true);
}

TargetGate make_cs() {
    Eigen::MatrixXcd logical = Eigen::MatrixXcd::Identity(4, 4);
    logical(3, 3) = -1.0; // sign flip on |11> = (0,1,0,1)
    return make_gate_from_logical("cs", computational_basis(2), logical);
}

TargetGate make_cnot() {
    Eigen::MatrixXcd h2 = Eigen::MatrixXcd::Identity(4, 4);
    const double r = 1.0 / std::sqrt(2.0);
    // Hadamard on the second (target) qubit.
    h2.block(0, 0, 2, 2) << r, r, r, -r;
    h2.block(2, 2, 2, 2) << r, r, r, -r;
    Eigen::MatrixXcd cs = Eigen::MatrixXcd::Identity(4, 4);
    cs(3, 3) = -1.0;
    return make_gate_from_logical("cnot", computational_basis(2), h2 * cs * h2);
}

TargetGate make_toffoli_sign() {
    Eigen::MatrixXcd logical = -Eigen::MatrixXcd::Identity(8, 8);
    logical(7, 7) = 1.0; // + on |111> = (0,1,0,1,0,1)
    return make_gate_from_logical("toffoli-sign", computational_basis(3), logical);
}

std::vector<std::string> builtin_gate_names() { return {"ns", "cs", "cnot", "toffoli-sign"}; }

TargetGate make_builtin(const std::string& name) {
    if (name == "ns") return make_ns();
    if (name == "cs") return make_cs();
    if (name == "cnot") return make_cnot();
    if (name == "toffoli-sign") return make_toffoli_sign();
    throw std::invalid_argument("unknown gate '" + name + "'");
}

TargetGate load_gate(const nlohmann::json& doc) {
    if (!doc.is_object() || !doc.contains("comp_basis") || !doc.contains("matrix"))
        throw std::invalid_argument("gate document: need comp_basis and matrix fields");

    std::vector<FockState> basis;
    for (const auto& row : doc.at("comp_basis")) {
        FockState s(static_cast<Eigen::Index>(row.size()));
        Eigen::Index k = 0;
        for (const auto& v : row) {
            const int occ = v.get<int>();
            if (occ < 0) throw std::invalid_argument("gate document: negative occupation");
            s[k++] = occ;
        }
        basis.push_back(std::move(s));
    }
    if (basis.empty()) throw std::invalid_argument("gate document: empty comp_basis");

    const auto& m = doc.at("matrix");
    const int dc = static_cast<int>(basis.size());
    if (static_cast<int>(m.size()) != dc)
        throw std::invalid_argument("gate document: matrix row count must equal the basis size");
    Eigen::MatrixXcd logical(dc, dc);
    for (int i = 0; i < dc; ++i) {
        const auto& row = m.at(static_cast<std::size_t>(i));
        if (static_cast<int>(row.size()) != dc)
            throw std::invalid_argument("gate document: matrix column count must equal the basis size");
        for (int j = 0; j < dc; ++j) {
            const auto& z = row.at(static_cast<std::size_t>(j));
            if (!z.is_array() || z.size() != 2)
                throw std::invalid_argument("gate document: complex entries must be [re, im] pairs");
            logical(i, j) = std::complex<double>(z.at(0).get<double>(), z.at(1).get<double>());
        }
    }
    const std::string name = doc.value("name", std::string("custom"));
    const bool sectored = doc.value("sectored", false);
    return make_gate_from_logical(name, std::move(basis), logical, sectored);
}

} // namespace loqc
