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

#include <map>
#include <vector>

namespace loqc {

/// Occupation-number vector: photons per optical mode.
using FockState = Eigen::VectorXi;

inline int total_photons(const FockState& state) { return state.sum(); }

/// Lexicographic comparison of occupation vectors (shorter vectors first).
struct FockStateLess {
    bool operator()(const FockState& a, const FockState& b) const {
        if (a.size() != b.size()) return a.size() < b.size();
        for (Eigen::Index i = 0; i < a.size(); ++i)
            if (a[i] != b[i]) return a[i] < b[i];
        return false;
    }
};

/// Ordered list of Fock states over a common mode count, with reverse lookup.
/// Immutable after construction; safe for concurrent reads.
class FockBasis {
public:
    FockBasis() = default;
    explicit FockBasis(std::vector<FockState> states);

    int size() const { return static_cast<int>(states_.size()); }
    int n_modes() const { return n_modes_; }
    const FockState& state(int i) const { return states_.at(static_cast<std::size_t>(i)); }
    const std::vector<FockState>& states() const { return states_; }

    bool contains(const FockState& s) const { return index_.count(s) != 0; }
    /// Position of a state in the basis; throws std::out_of_range if absent.
    int index_of(const FockState& s) const;

private:
    std::vector<FockState> states_;
    std::map<FockState, int, FockStateLess> index_;
    int n_modes_ = 0;
};

/// All occupation vectors of `photons` total photons over `modes` modes, in
/// lexicographic descending order: (M,0,...,0) first, (0,...,0,M) last.
/// Size is the multiset coefficient C(photons+modes-1, photons).
FockBasis enumerate_fock(int photons, int modes);

/// Dual-rail encoding of a logical bit string: bit 0 -> (1,0) on its mode
/// pair, bit 1 -> (0,1). The result has 2*len(bits) modes and len(bits) photons.
FockState dual_rail_encode(const std::vector<int>& bits);

/// The 2^n dual-rail computational basis states in binary counting order of
/// the bit string (first qubit is the most significant bit).
std::vector<FockState> computational_basis(int num_qubits);

/// Output basis matching a set of input states: the union of the full Fock
/// sectors for every photon number present in `in_states`, sectors in
/// ascending photon order. For a fixed-photon-number input basis this is just
/// enumerate_fock(M, n_modes).
FockBasis output_basis_for(const std::vector<FockState>& in_states, int n_modes);

} // namespace loqc
