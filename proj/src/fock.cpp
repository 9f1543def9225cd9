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

#include "loqc/fock.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace loqc {

FockBasis::FockBasis(std::vector<FockState> states) : states_(std::move(states)) {
    if (states_.empty()) return;
    n_modes_ = static_cast<int>(states_.front().size());
    for (std::size_t i = 0; i < states_.size(); ++i) {
        const FockState& s = states_[i];
        if (s.size() != n_modes_)
            throw std::invalid_argument("FockBasis: states must share a mode count");
        if (s.minCoeff() < 0)
            throw std::invalid_argument("FockBasis: negative occupation");
        if (!index_.emplace(s, static_cast<int>(i)).second)
            throw std::invalid_argument("FockBasis: duplicate state");
    }
}

int FockBasis::index_of(const FockState& s) const {
    auto it = index_.find(s);
    if (it == index_.end())
        throw std::out_of_range("FockBasis: state not in basis");
    return it->second;
}

namespace {

void enumerate_rec(int photons, int mode, FockState& scratch,
                   std::vector<FockState>& out) {
    const int modes = static_cast<int>(scratch.size());
    if (mode == modes - 1) {
        scratch[mode] = photons;
        out.push_back(scratch);
        return;
    }
    for (int k = photons; k >= 0; --k) {
        scratch[mode] = k;
        enumerate_rec(photons - k, mode + 1, scratch, out);
    }
}

} // namespace

FockBasis enumerate_fock(int photons, int modes) {
    if (modes < 1)
        throw std::invalid_argument("enumerate_fock: need at least one mode");
    if (photons < 0)
        throw std::invalid_argument("enumerate_fock: negative photon number");
    std::vector<FockState> states;
    FockState scratch = FockState::Zero(modes);
    enumerate_rec(photons, 0, scratch, states);
    return FockBasis(std::move(states));
}

FockState dual_rail_encode(const std::vector<int>& bits) {
    FockState s = FockState::Zero(2 * static_cast<int>(bits.size()));
    for (std::size_t q = 0; q < bits.size(); ++q) {
        if (bits[q] != 0 && bits[q] != 1)
            throw std::invalid_argument("dual_rail_encode: bits must be 0 or 1");
        s[2 * static_cast<int>(q) + bits[q]] = 1;
    }
    return s;
}

std::vector<FockState> computational_basis(int num_qubits) {
    if (num_qubits < 1)
        throw std::invalid_argument("computational_basis: need at least one qubit");
    std::vector<FockState> basis;
    basis.reserve(1u << num_qubits);
    for (int v = 0; v < (1 << num_qubits); ++v) {
        std::vector<int> bits(static_cast<std::size_t>(num_qubits));
        for (int q = 0; q < num_qubits; ++q)
            bits[static_cast<std::size_t>(q)] = (v >> (num_qubits - 1 - q)) & 1;
        basis.push_back(dual_rail_encode(bits));
    }
    return basis;
}

FockBasis output_basis_for(const std::vector<FockState>& in_states, int n_modes) {
    if (in_states.empty())
        throw std::invalid_argument("output_basis_for: empty input basis");
    std::set<int> sectors;
    for (const FockState& s : in_states) {
        if (s.size() != n_modes)
            throw std::invalid_argument("output_basis_for: input state has wrong mode count");
        sectors.insert(total_photons(s));
    }
    std::vector<FockState> states;
    for (int m : sectors) {
        FockBasis sector = enumerate_fock(m, n_modes);
        states.insert(states.end(), sector.states().begin(), sector.states().end());
    }
    return FockBasis(std::move(states));
}

} // namespace loqc
