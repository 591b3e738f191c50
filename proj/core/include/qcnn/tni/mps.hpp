// Copyright 2026 The QCNN-BP Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file
 * Matrix product states with bond truncation.
 *
 * Site k holds a tensor A[l][s][r] with physical index s in {0, 1}. Sites
 * start in qubit order; two-qubit gates move one qubit next to the other with
 * swaps and leave it there, so the qubit-to-site layout drifts. Dense views
 * (to_vector) are always in qubit order, qubit 0 as the high bit.
 */
#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "qcnn/error.hpp"
#include "qcnn/sim/gates.hpp"

namespace qcnn::tni {

struct SiteTensor {
    std::size_t left = 1;
    std::size_t right = 1;
    std::vector<Complex> data;

    Complex &at(std::size_t l, std::size_t s, std::size_t r) { return data[(l * 2 + s) * right + r]; }
    Complex at(std::size_t l, std::size_t s, std::size_t r) const { return data[(l * 2 + s) * right + r]; }
};

/// A gate on sites (site, site + 1); `site` is the high qubit of u.
struct AdjacentOp {
    std::size_t site;
    sim::Mat4 u;
    bool swap = false;
};

class MpsState {
  public:
    /// Left-to-right SVD sweep keeping at most chi_cap singular values per
    /// bond; the result is renormalized to unit norm.
    static MpsState from_vector(std::span<const Complex> amplitudes, std::size_t chi_cap);
    /// Product state from per-site (amp0, amp1) pairs, each normalized.
    static MpsState product(std::span<const std::array<Complex, 2>> sites);

    std::size_t num_sites() const { return sites_.size(); }
    std::span<const SiteTensor> sites() const { return sites_; }
    std::size_t site_of(std::size_t qubit) const { return site_of_.at(qubit); }
    std::size_t qubit_at(std::size_t site) const { return qubit_at_.at(site); }
    std::vector<std::size_t> bond_dims() const;
    std::size_t max_bond() const;
    /// Sum of squared singular values dropped so far, before renormalizing.
    double truncated_weight() const { return truncated_weight_; }

    std::vector<Complex> to_vector() const;
    double norm() const;
    double expectation_z(std::size_t qubit) const;
    /// <Z_q> for every qubit, in qubit order.
    std::vector<double> expectations_z() const;

    void apply_1q(std::size_t qubit, const sim::Mat2 &u);
    /// Two-qubit gate on qubits (a, b), a as the high qubit of u. Qubit b is
    /// swapped next to a first. Every split keeps at most chi singular
    /// values. Returns the adjacent ops performed, for replay in reverse.
    std::vector<AdjacentOp> apply_2q(std::size_t a, std::size_t b, const sim::Mat4 &u, std::size_t chi);
    /// Applies op, or its inverse, updating the layout for swaps.
    void apply_adjacent(const AdjacentOp &op, std::size_t chi, bool inverse = false);

  private:
    explicit MpsState(std::vector<SiteTensor> sites);

    void move_center(std::size_t site);
    void apply_adjacent(std::size_t i, const sim::Mat4 &u, std::size_t chi);

    std::vector<SiteTensor> sites_;
    std::vector<std::size_t> site_of_;
    std::vector<std::size_t> qubit_at_;
    std::size_t center_ = 0;
    double truncated_weight_ = 0.0;
};

/// Convenience wrapper over MpsState::from_vector.
MpsState mps_from_vector(std::span<const Complex> amplitudes, std::size_t chi_cap);

/// T[a][b] = <bra| (|a><b|)_{qa qb} |ket> for adjacent qubits, qa as the
/// high bit of a and b. Both states must share a layout.
sim::Mat4 two_site_transition(const MpsState &bra, const MpsState &ket, std::size_t qa, std::size_t qb);

/// sum_ab O[a][b] <bra| (|a><b|)_{q_a q_b} |ket> for adjacent qubits qa, qb
/// (qa high in O). Both states must share a layout.
Complex two_site_matrix_element(const MpsState &bra, const MpsState &ket, std::size_t qa, std::size_t qb,
                                const sim::Mat4 &op);

/// 2-norm distance between the MPS contraction and a dense vector.
double reconstruction_error(const MpsState &mps, std::span<const Complex> amplitudes);

} // namespace qcnn::tni
