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
 * Gate set used by the QCNN ansatz: Pauli rotations plus CZ and CNOT.
 *
 * Qubit ordering: qubit 0 is the most significant bit of a basis index.
 * For n qubits, qubit q lives at bit position (n - 1 - q).
 */
#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>
#include <variant>

#include "qcnn/error.hpp"

namespace qcnn::sim {

enum class GateKind { kRX, kRY, kRZ, kCZ, kCNOT };

std::string_view to_string(GateKind kind);
GateKind gate_kind_from_string(std::string_view name);

constexpr bool is_rotation(GateKind kind) {
    return kind == GateKind::kRX || kind == GateKind::kRY || kind == GateKind::kRZ;
}

/// Row-major 2x2 and 4x4 complex matrices. For 4x4 matrices the first
/// qubit of the pair is the high bit of the row/column index.
using Mat2 = std::array<Complex, 4>;
using Mat4 = std::array<Complex, 16>;

/// exp(-i angle sigma / 2) for the rotation's Pauli axis.
Mat2 rotation_matrix(GateKind kind, double angle);
/// Fixed two-qubit gates; CNOT uses the first qubit as control.
Mat4 two_qubit_matrix(GateKind kind);
/// Pauli generator of a rotation gate.
Mat2 generator(GateKind kind);

Mat2 identity2();
Mat4 identity4();
Mat2 matmul(const Mat2 &a, const Mat2 &b);
Mat4 matmul(const Mat4 &a, const Mat4 &b);
Mat2 adjoint(const Mat2 &m);
Mat4 adjoint(const Mat4 &m);
/// a (x) b, with a acting on the high qubit.
Mat4 kron(const Mat2 &a, const Mat2 &b);
double max_abs_diff(const Mat2 &a, const Mat2 &b);
double max_abs_diff(const Mat4 &a, const Mat4 &b);

/// Reference to entry `index` of a ParameterVector.
struct SymbolRef {
    std::size_t index;
    friend bool operator==(const SymbolRef &, const SymbolRef &) = default;
};

/// A gate parameter is absent, a fixed angle in radians, or a symbol.
using GateParameter = std::variant<std::monostate, double, SymbolRef>;

struct GateOp {
    GateKind kind;
    std::array<std::size_t, 2> qubits{0, 0};
    GateParameter parameter;

    static GateOp rx(std::size_t q, GateParameter p);
    static GateOp ry(std::size_t q, GateParameter p);
    static GateOp rz(std::size_t q, GateParameter p);
    static GateOp cz(std::size_t a, std::size_t b);
    static GateOp cnot(std::size_t control, std::size_t target);

    std::size_t arity() const { return is_rotation(kind) ? 1 : 2; }
    bool is_symbolic() const { return std::holds_alternative<SymbolRef>(parameter); }
    std::optional<std::size_t> symbol() const;

    /// Throws ConfigError unless the arity/parameter combination is legal.
    void validate() const;
    /// Additionally checks qubit indices against a register size.
    void validate(std::size_t num_qubits) const;
};

} // namespace qcnn::sim
