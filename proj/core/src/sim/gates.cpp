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
#include "qcnn/sim/gates.hpp"

#include <cmath>
#include <string>

namespace qcnn::sim {

namespace {
constexpr Complex kI{0.0, 1.0};
}

std::string_view to_string(GateKind kind) {
    switch (kind) {
    case GateKind::kRX:
        return "RX";
    case GateKind::kRY:
        return "RY";
    case GateKind::kRZ:
        return "RZ";
    case GateKind::kCZ:
        return "CZ";
    case GateKind::kCNOT:
        return "CNOT";
    }
    return "?";
}

GateKind gate_kind_from_string(std::string_view name) {
    for (auto k : {GateKind::kRX, GateKind::kRY, GateKind::kRZ, GateKind::kCZ,
                   GateKind::kCNOT}) {
        if (to_string(k) == name) {
            return k;
        }
    }
    throw ConfigError("unknown gate kind '" + std::string(name) + "'");
}

Mat2 rotation_matrix(GateKind kind, double angle) {
    const double c = std::cos(angle / 2.0);
    const double s = std::sin(angle / 2.0);
    switch (kind) {
    case GateKind::kRX:
        return {Complex{c, 0}, -kI * s, -kI * s, Complex{c, 0}};
    case GateKind::kRY:
        return {Complex{c, 0}, Complex{-s, 0}, Complex{s, 0}, Complex{c, 0}};
    case GateKind::kRZ:
        return {std::polar(1.0, -angle / 2.0), 0.0, 0.0, std::polar(1.0, angle / 2.0)};
    default:
        throw ConfigError("rotation_matrix: " + std::string(to_string(kind)) +
                          " is not a rotation");
    }
}

Mat4 two_qubit_matrix(GateKind kind) {
    Mat4 m{};
    switch (kind) {
    case GateKind::kCZ:
        m[0] = m[5] = m[10] = 1.0;
        m[15] = -1.0;
        return m;
    case GateKind::kCNOT:
        m[0] = m[5] = 1.0;
        m[2 * 4 + 3] = 1.0;
        m[3 * 4 + 2] = 1.0;
        return m;
    default:
        throw ConfigError("two_qubit_matrix: " + std::string(to_string(kind)) +
                          " is not a two-qubit gate");
    }
}

Mat2 generator(GateKind kind) {
    switch (kind) {
    case GateKind::kRX:
        return {0.0, 1.0, 1.0, 0.0};
    case GateKind::kRY:
        return {0.0, -kI, kI, 0.0};
    case GateKind::kRZ:
        return {1.0, 0.0, 0.0, -1.0};
    default:
        throw ConfigError("generator: gate has no Pauli generator");
    }
}

Mat2 identity2() { return {1.0, 0.0, 0.0, 1.0}; }

Mat4 identity4() {
    Mat4 m{};
    for (std::size_t i = 0; i < 4; ++i) {
        m[i * 4 + i] = 1.0;
    }
    return m;
}

Mat2 matmul(const Mat2 &a, const Mat2 &b) {
    return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
            a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

Mat4 matmul(const Mat4 &a, const Mat4 &b) {
    Mat4 out{};
    for (std::size_t r = 0; r < 4; ++r) {
        for (std::size_t k = 0; k < 4; ++k) {
            const Complex ark = a[r * 4 + k];
            for (std::size_t c = 0; c < 4; ++c) {
                out[r * 4 + c] += ark * b[k * 4 + c];
            }
        }
    }
    return out;
}

Mat2 adjoint(const Mat2 &m) {
    return {std::conj(m[0]), std::conj(m[2]), std::conj(m[1]), std::conj(m[3])};
}

Mat4 adjoint(const Mat4 &m) {
    Mat4 out{};
    for (std::size_t r = 0; r < 4; ++r) {
        for (std::size_t c = 0; c < 4; ++c) {
            out[c * 4 + r] = std::conj(m[r * 4 + c]);
        }
    }
    return out;
}

Mat4 kron(const Mat2 &a, const Mat2 &b) {
    Mat4 out{};
    for (std::size_t ar = 0; ar < 2; ++ar) {
        for (std::size_t ac = 0; ac < 2; ++ac) {
            for (std::size_t br = 0; br < 2; ++br) {
                for (std::size_t bc = 0; bc < 2; ++bc) {
                    out[(ar * 2 + br) * 4 + (ac * 2 + bc)] = a[ar * 2 + ac] * b[br * 2 + bc];
                }
            }
        }
    }
    return out;
}

double max_abs_diff(const Mat2 &a, const Mat2 &b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        d = std::max(d, std::abs(a[i] - b[i]));
    }
    return d;
}

double max_abs_diff(const Mat4 &a, const Mat4 &b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        d = std::max(d, std::abs(a[i] - b[i]));
    }
    return d;
}

GateOp GateOp::rx(std::size_t q, GateParameter p) { return {GateKind::kRX, {q, q}, p}; }
GateOp GateOp::ry(std::size_t q, GateParameter p) { return {GateKind::kRY, {q, q}, p}; }
GateOp GateOp::rz(std::size_t q, GateParameter p) { return {GateKind::kRZ, {q, q}, p}; }
GateOp GateOp::cz(std::size_t a, std::size_t b) { return {GateKind::kCZ, {a, b}, {}}; }
GateOp GateOp::cnot(std::size_t control, std::size_t target) {
    return {GateKind::kCNOT, {control, target}, {}};
}

std::optional<std::size_t> GateOp::symbol() const {
    if (const auto *s = std::get_if<SymbolRef>(&parameter)) {
        return s->index;
    }
    return std::nullopt;
}

void GateOp::validate() const {
    const bool has_param = !std::holds_alternative<std::monostate>(parameter);
    if (is_rotation(kind)) {
        if (!has_param) {
            throw ConfigError(std::string(to_string(kind)) + " requires a parameter");
        }
        if (qubits[0] != qubits[1]) {
            throw ConfigError(std::string(to_string(kind)) + " acts on exactly one qubit");
        }
    } else {
        if (has_param) {
            throw ConfigError(std::string(to_string(kind)) + " takes no parameter");
        }
        if (qubits[0] == qubits[1]) {
            throw ConfigError(std::string(to_string(kind)) + " requires two distinct qubits");
        }
    }
}

void GateOp::validate(std::size_t num_qubits) const {
    validate();
    if (qubits[0] >= num_qubits || qubits[1] >= num_qubits) {
        throw DimensionError("gate " + std::string(to_string(kind)) + " qubit index out of range for " +
                             std::to_string(num_qubits) + " qubits");
    }
}

} // namespace qcnn::sim
