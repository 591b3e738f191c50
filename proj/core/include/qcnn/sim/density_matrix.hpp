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
 * Mixed-state simulation for the noisy evaluation path.
 *
 * Elements are stored row-major. Internally the matrix is treated as a
 * 2n-qubit vector: row qubit q is vector qubit q and column qubit q is
 * vector qubit n + q, so the pure-state kernels apply U to the rows and
 * conj(U) to the columns.
 */
#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "qcnn/error.hpp"
#include "qcnn/sim/gates.hpp"
#include "qcnn/sim/state_vector.hpp"

namespace qcnn::sim {

/// Densities are limited to half the pure-state cap (2n vector qubits).
inline constexpr std::size_t kMaxDensityQubits = 10;

/// Single-qubit depolarizing strength applied after every two-qubit block.
struct NoiseConfig {
    double p = 0.0;
    bool enabled = false;

    /// Throws ConfigError unless 0 <= p <= 0.75.
    void validate() const;
    bool active() const { return enabled; }
};

class DensityMatrix {
  public:
    /// |psi><psi|.
    static DensityMatrix from_state(const StateVector &state);
    /// Validates shape, Hermiticity and unit trace.
    static DensityMatrix from_elements(std::size_t num_qubits, std::vector<Complex> elements);

    std::size_t num_qubits() const { return num_qubits_; }
    std::size_t dimension() const { return std::size_t{1} << num_qubits_; }
    std::span<const Complex> elements() const { return elements_; }
    Complex operator()(std::size_t row, std::size_t col) const {
        return elements_[row * dimension() + col];
    }

    /// rho -> U rho U^dagger for a bound gate.
    void apply(const GateOp &op, std::optional<double> angle = std::nullopt);
    void apply_1q(std::size_t q, const Mat2 &u);
    void apply_2q(std::size_t qa, std::size_t qb, const Mat4 &u);
    /// In-place single-qubit depolarizing channel.
    void depolarize(std::size_t q, double p);

    Complex trace() const;
    double purity() const;
    /// max |rho - rho^dagger|.
    double hermiticity_error() const;

  private:
    DensityMatrix(std::size_t n, std::vector<Complex> e) : num_qubits_(n), elements_(std::move(e)) {}

    std::size_t num_qubits_;
    std::vector<Complex> elements_;
};

DensityMatrix to_density(const StateVector &state);

/// rho' = (1 - p) rho + (p / 3)(X rho X + Y rho Y + Z rho Z) on `qubit`.
DensityMatrix apply_depolarizing(DensityMatrix rho, std::size_t qubit, double p);

/// Traces out `discard`; the remaining qubits keep their relative order.
DensityMatrix partial_trace(const DensityMatrix &rho, std::span<const std::size_t> discard);

double expectation_z(const DensityMatrix &rho, std::size_t qubit);
double expectation_global_projector(const DensityMatrix &rho, std::span<const std::size_t> qubits);

/// Smallest eigenvalue of the Hermitian part of rho.
double min_eigenvalue(const DensityMatrix &rho);

} // namespace qcnn::sim
