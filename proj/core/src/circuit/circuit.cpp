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
#include "qcnn/circuit/circuit.hpp"

#include <string>

#include "qcnn/sim/state_vector.hpp"

namespace qcnn::circuit {

Circuit::Circuit(std::size_t num_qubits, std::size_t num_symbols)
    : num_qubits_(num_qubits), num_symbols_(num_symbols), discarded_(num_qubits, false) {
    if (num_qubits < 1 || num_qubits > sim::kMaxQubits) {
        throw ConfigError("circuit qubit count " + std::to_string(num_qubits) + " out of range");
    }
}

void Circuit::append(const GateOp &op) {
    op.validate(num_qubits_);
    if (auto s = op.symbol(); s && *s >= num_symbols_) {
        throw DimensionError("symbol " + std::to_string(*s) + " exceeds symbol count " +
                             std::to_string(num_symbols_));
    }
    for (std::size_t k = 0; k < op.arity(); ++k) {
        if (discarded_[op.qubits[k]]) {
            throw ConfigError("gate on discarded qubit " + std::to_string(op.qubits[k]));
        }
    }
    ops_.push_back(op);
}

void Circuit::append_block(BlockKind kind, std::size_t qa, std::size_t qb,
                           std::span<const GateOp> ops, std::size_t stage) {
    const std::size_t first = ops_.size();
    for (const auto &op : ops) {
        append(op);
    }
    blocks_.push_back({kind, first, ops_.size(), {qa, qb}, stage});
}

void Circuit::discard(std::size_t qubit) {
    if (qubit >= num_qubits_) {
        throw DimensionError("discard: qubit out of range");
    }
    if (discarded_[qubit]) {
        throw ConfigError("qubit " + std::to_string(qubit) + " discarded twice");
    }
    discarded_[qubit] = true;
    discards_.push_back({ops_.size(), qubit});
}

void Circuit::set_num_symbols(std::size_t n) {
    for (const auto &op : ops_) {
        if (auto s = op.symbol(); s && *s >= n) {
            throw DimensionError("cannot shrink symbol table below referenced symbol " +
                                 std::to_string(*s));
        }
    }
    num_symbols_ = n;
}

std::vector<std::size_t> Circuit::occurrences(std::size_t symbol) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < ops_.size(); ++i) {
        if (ops_[i].symbol() == symbol) {
            out.push_back(i);
        }
    }
    return out;
}

double bound_angle(const GateOp &op, const ParameterVector &theta) {
    if (auto s = op.symbol()) {
        if (*s >= theta.size()) {
            throw DimensionError("symbol " + std::to_string(*s) + " unbound");
        }
        return theta[*s];
    }
    if (const auto *fixed = std::get_if<double>(&op.parameter)) {
        return *fixed;
    }
    throw ConfigError("op has no angle");
}

std::vector<GateOp> conv_block(std::size_t qa, std::size_t qb, const std::array<std::size_t, 4> &symbols) {
    if (qa == qb) {
        throw ConfigError("conv_block: qubits must differ");
    }
    using sim::SymbolRef;
    return {GateOp::rx(qa, SymbolRef{symbols[0]}), GateOp::rx(qb, SymbolRef{symbols[1]}),
            GateOp::cz(qa, qb), GateOp::ry(qa, SymbolRef{symbols[2]}),
            GateOp::ry(qb, SymbolRef{symbols[3]})};
}

PoolBlock pool_block(std::size_t control, std::size_t target, std::size_t symbol) {
    if (control == target) {
        throw ConfigError("pool_block: qubits must differ");
    }
    return {{GateOp::cnot(control, target), GateOp::ry(target, sim::SymbolRef{symbol}),
             GateOp::cnot(control, target)},
            control};
}

sim::Mat4 two_qubit_unitary(std::span<const GateOp> ops, std::size_t qa, std::size_t qb,
                            const ParameterVector &theta) {
    // Column c of U is U|c>; simulate each basis state on a 2-qubit register.
    sim::Mat4 u{};
    for (std::size_t c = 0; c < 4; ++c) {
        std::array<Complex, 4> amps{};
        amps[c] = 1.0;
        for (const auto &op : ops) {
            GateOp local = op;
            for (std::size_t k = 0; k < 2; ++k) {
                if (op.qubits[k] == qa) {
                    local.qubits[k] = 0;
                } else if (op.qubits[k] == qb) {
                    local.qubits[k] = 1;
                } else {
                    throw DimensionError("two_qubit_unitary: op touches a qubit outside the pair");
                }
            }
            std::optional<double> angle;
            if (sim::is_rotation(op.kind)) {
                angle = bound_angle(op, theta);
            }
            sim::kernels::apply_gate(amps, 2, local, angle);
        }
        for (std::size_t r = 0; r < 4; ++r) {
            u[r * 4 + c] = amps[r];
        }
    }
    return u;
}

} // namespace qcnn::circuit
