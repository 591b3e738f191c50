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
 * Pure-state simulation: amplitude kernels and the StateVector carrier.
 */
#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "qcnn/error.hpp"
#include "qcnn/sim/gates.hpp"

namespace qcnn::sim {

inline constexpr std::size_t kMaxQubits = 20;

/// Bit position of qubit q in an n-qubit basis index (qubit 0 = MSB).
constexpr std::size_t bit_position(std::size_t num_qubits, std::size_t q) {
    return num_qubits - 1 - q;
}

/// In-place stride kernels over a raw amplitude buffer of length 2^n. They
/// do not require unit norm, so adjoint passes can reuse them.
namespace kernels {
void apply_1q(std::span<Complex> amps, std::size_t num_qubits, std::size_t q, const Mat2 &m);
void apply_2q(std::span<Complex> amps, std::size_t num_qubits, std::size_t qa, std::size_t qb,
              const Mat4 &m);
void apply_cz(std::span<Complex> amps, std::size_t num_qubits, std::size_t qa, std::size_t qb);
void apply_cnot(std::span<Complex> amps, std::size_t num_qubits, std::size_t control,
                std::size_t target);
/// Applies a bound gate; rotations need `angle`.
void apply_gate(std::span<Complex> amps, std::size_t num_qubits, const GateOp &op,
                std::optional<double> angle);
/// Applies the inverse of a bound gate.
void apply_gate_inverse(std::span<Complex> amps, std::size_t num_qubits, const GateOp &op,
                        std::optional<double> angle);
} // namespace kernels

class StateVector {
  public:
    /// |0...0> on n qubits, 1 <= n <= kMaxQubits.
    static StateVector zero(std::size_t num_qubits);
    /// Takes ownership of a unit-norm amplitude list of power-of-two length.
    static StateVector from_amplitudes(std::vector<Complex> amplitudes);

    std::size_t num_qubits() const { return num_qubits_; }
    std::size_t dimension() const { return amplitudes_.size(); }
    std::span<const Complex> amplitudes() const { return amplitudes_; }
    std::span<Complex> mutable_amplitudes() { return amplitudes_; }
    Complex operator[](std::size_t i) const { return amplitudes_[i]; }

    /// Applies `op` in place. Rotation gates need an angle unless their
    /// parameter is a fixed angle; symbolic gates must be bound by the caller.
    void apply(const GateOp &op, std::optional<double> angle = std::nullopt);

    double norm() const;

  private:
    StateVector(std::size_t n, std::vector<Complex> amps)
        : num_qubits_(n), amplitudes_(std::move(amps)) {}

    std::size_t num_qubits_;
    std::vector<Complex> amplitudes_;
};

/// Value-returning form of StateVector::apply.
StateVector apply_gate(StateVector state, const GateOp &op,
                       std::optional<double> angle = std::nullopt);

/// <Z_q>.
double expectation_z(const StateVector &state, std::size_t qubit);
double expectation_z(std::span<const Complex> amps, std::size_t num_qubits, std::size_t qubit);

/// Probability that every listed qubit reads 0, marginalised over the rest.
double expectation_global_projector(const StateVector &state, std::span<const std::size_t> qubits);

/// Resolves the angle a rotation will use: explicit angle wins, then a fixed
/// parameter. Throws if a rotation ends up without one.
std::optional<double> resolve_angle(const GateOp &op, std::optional<double> angle);

} // namespace qcnn::sim
