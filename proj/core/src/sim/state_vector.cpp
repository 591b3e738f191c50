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
#include "qcnn/sim/state_vector.hpp"

#include <cmath>
#include <string>

namespace qcnn::sim {

namespace kernels {

void apply_1q(std::span<Complex> amps, std::size_t num_qubits, std::size_t q, const Mat2 &m) {
    const std::size_t stride = std::size_t{1} << bit_position(num_qubits, q);
    const std::size_t dim = amps.size();
    for (std::size_t base = 0; base < dim; base += 2 * stride) {
        for (std::size_t j = base; j < base + stride; ++j) {
            const Complex a0 = amps[j];
            const Complex a1 = amps[j + stride];
            amps[j] = m[0] * a0 + m[1] * a1;
            amps[j + stride] = m[2] * a0 + m[3] * a1;
        }
    }
}

void apply_2q(std::span<Complex> amps, std::size_t num_qubits, std::size_t qa, std::size_t qb,
              const Mat4 &m) {
    const std::size_t ma = std::size_t{1} << bit_position(num_qubits, qa);
    const std::size_t mb = std::size_t{1} << bit_position(num_qubits, qb);
    const std::size_t dim = amps.size();
    for (std::size_t i = 0; i < dim; ++i) {
        if ((i & ma) || (i & mb)) {
            continue;
        }
        const std::size_t idx[4] = {i, i | mb, i | ma, i | ma | mb};
        Complex in[4];
        for (std::size_t k = 0; k < 4; ++k) {
            in[k] = amps[idx[k]];
        }
        for (std::size_t r = 0; r < 4; ++r) {
            amps[idx[r]] = m[r * 4] * in[0] + m[r * 4 + 1] * in[1] + m[r * 4 + 2] * in[2] +
                           m[r * 4 + 3] * in[3];
        }
    }
}

void apply_cz(std::span<Complex> amps, std::size_t num_qubits, std::size_t qa, std::size_t qb) {
    const std::size_t mask = (std::size_t{1} << bit_position(num_qubits, qa)) |
                             (std::size_t{1} << bit_position(num_qubits, qb));
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if ((i & mask) == mask) {
            amps[i] = -amps[i];
        }
    }
}

void apply_cnot(std::span<Complex> amps, std::size_t num_qubits, std::size_t control,
                std::size_t target) {
    const std::size_t mc = std::size_t{1} << bit_position(num_qubits, control);
    const std::size_t mt = std::size_t{1} << bit_position(num_qubits, target);
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if ((i & mc) && !(i & mt)) {
            std::swap(amps[i], amps[i | mt]);
        }
    }
}

void apply_gate(std::span<Complex> amps, std::size_t num_qubits, const GateOp &op,
                std::optional<double> angle) {
    switch (op.kind) {
    case GateKind::kRX:
    case GateKind::kRY:
    case GateKind::kRZ:
        apply_1q(amps, num_qubits, op.qubits[0], rotation_matrix(op.kind, *resolve_angle(op, angle)));
        return;
    case GateKind::kCZ:
        apply_cz(amps, num_qubits, op.qubits[0], op.qubits[1]);
        return;
    case GateKind::kCNOT:
        apply_cnot(amps, num_qubits, op.qubits[0], op.qubits[1]);
        return;
    }
}

void apply_gate_inverse(std::span<Complex> amps, std::size_t num_qubits, const GateOp &op,
                        std::optional<double> angle) {
    if (is_rotation(op.kind)) {
        apply_1q(amps, num_qubits, op.qubits[0],
                 rotation_matrix(op.kind, -*resolve_angle(op, angle)));
        return;
    }
    // CZ and CNOT are self-inverse.
    apply_gate(amps, num_qubits, op, std::nullopt);
}

} // namespace kernels

std::optional<double> resolve_angle(const GateOp &op, std::optional<double> angle) {
    if (!is_rotation(op.kind)) {
        return std::nullopt;
    }
    if (angle) {
        return angle;
    }
    if (const auto *fixed = std::get_if<double>(&op.parameter)) {
        return *fixed;
    }
    throw ConfigError("rotation " + std::string(to_string(op.kind)) + " applied without an angle");
}

StateVector StateVector::zero(std::size_t num_qubits) {
    if (num_qubits < 1 || num_qubits > kMaxQubits) {
        throw ConfigError("qubit count " + std::to_string(num_qubits) + " outside [1, " +
                          std::to_string(kMaxQubits) + "]");
    }
    std::vector<Complex> amps(std::size_t{1} << num_qubits);
    amps[0] = 1.0;
    return {num_qubits, std::move(amps)};
}

StateVector StateVector::from_amplitudes(std::vector<Complex> amplitudes) {
    const std::size_t dim = amplitudes.size();
    if (dim < 2 || (dim & (dim - 1)) != 0) {
        throw DimensionError("amplitude count " + std::to_string(dim) +
                             " is not a power of two >= 2");
    }
    std::size_t n = 0;
    while ((std::size_t{1} << n) < dim) {
        ++n;
    }
    if (n > kMaxQubits) {
        throw ConfigError("state exceeds " + std::to_string(kMaxQubits) + " qubits");
    }
    double sq = 0.0;
    for (const auto &a : amplitudes) {
        sq += std::norm(a);
    }
    if (std::abs(sq - 1.0) > 1e-10) {
        throw ConfigError("amplitudes are not unit norm (|psi|^2 = " + std::to_string(sq) + ")");
    }
    return {n, std::move(amplitudes)};
}

void StateVector::apply(const GateOp &op, std::optional<double> angle) {
    op.validate(num_qubits_);
    kernels::apply_gate(amplitudes_, num_qubits_, op, angle);
}

double StateVector::norm() const {
    double sq = 0.0;
    for (const auto &a : amplitudes_) {
        sq += std::norm(a);
    }
    return std::sqrt(sq);
}

StateVector apply_gate(StateVector state, const GateOp &op, std::optional<double> angle) {
    state.apply(op, angle);
    return state;
}

double expectation_z(std::span<const Complex> amps, std::size_t num_qubits, std::size_t qubit) {
    if (qubit >= num_qubits) {
        throw DimensionError("expectation_z: qubit " + std::to_string(qubit) + " out of range");
    }
    const std::size_t mask = std::size_t{1} << bit_position(num_qubits, qubit);
    double acc = 0.0;
    for (std::size_t i = 0; i < amps.size(); ++i) {
        const double p = std::norm(amps[i]);
        acc += (i & mask) ? -p : p;
    }
    return acc;
}

double expectation_z(const StateVector &state, std::size_t qubit) {
    return expectation_z(state.amplitudes(), state.num_qubits(), qubit);
}

double expectation_global_projector(const StateVector &state, std::span<const std::size_t> qubits) {
    if (qubits.empty()) {
        throw ConfigError("global projector needs a non-empty survivor set");
    }
    std::size_t mask = 0;
    for (auto q : qubits) {
        if (q >= state.num_qubits()) {
            throw DimensionError("global projector: qubit " + std::to_string(q) + " out of range");
        }
        mask |= std::size_t{1} << bit_position(state.num_qubits(), q);
    }
    double acc = 0.0;
    const auto amps = state.amplitudes();
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if ((i & mask) == 0) {
            acc += std::norm(amps[i]);
        }
    }
    return acc;
}

} // namespace qcnn::sim
