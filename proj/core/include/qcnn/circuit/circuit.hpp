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
 * Symbolic gate IR: circuits whose rotation angles reference entries of a
 * ParameterVector, plus the two QCNN building blocks.
 */
#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "qcnn/error.hpp"
#include "qcnn/sim/gates.hpp"

namespace qcnn::circuit {

using sim::GateOp;

/// Trainable angles in radians, one per symbol.
class ParameterVector {
  public:
    ParameterVector() = default;
    explicit ParameterVector(std::vector<double> values) : values_(std::move(values)) {}
    static ParameterVector zeros(std::size_t n) { return ParameterVector(std::vector<double>(n, 0.0)); }

    std::size_t size() const { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }
    double &operator[](std::size_t i) { return values_[i]; }
    std::span<const double> values() const { return values_; }
    std::span<double> values() { return values_; }

    friend bool operator==(const ParameterVector &, const ParameterVector &) = default;

  private:
    std::vector<double> values_;
};

enum class BlockKind { kConv, kPool };

/// Contiguous run of ops forming one two-qubit block; noise attaches after it.
struct Block {
    BlockKind kind;
    std::size_t first_op;
    std::size_t end_op;
    std::array<std::size_t, 2> qubits;
    std::size_t stage;
};

/// `qubit` receives no gate at or after op index `after_op`.
struct Discard {
    std::size_t after_op;
    std::size_t qubit;
};

class Circuit {
  public:
    explicit Circuit(std::size_t num_qubits, std::size_t num_symbols = 0);

    std::size_t num_qubits() const { return num_qubits_; }
    std::size_t num_symbols() const { return num_symbols_; }
    std::size_t size() const { return ops_.size(); }
    std::span<const GateOp> ops() const { return ops_; }
    std::span<const Block> blocks() const { return blocks_; }
    std::span<const Discard> discards() const { return discards_; }

    /// Validates the op against the register and symbol table.
    void append(const GateOp &op);
    void append_block(BlockKind kind, std::size_t qa, std::size_t qb, std::span<const GateOp> ops,
                      std::size_t stage);
    /// Marks `qubit` as traced out from the current end of the op list on.
    void discard(std::size_t qubit);
    /// Grows the symbol table; shrinking below a referenced symbol throws.
    void set_num_symbols(std::size_t n);

    /// Indices of ops referencing `symbol`.
    std::vector<std::size_t> occurrences(std::size_t symbol) const;

  private:
    std::size_t num_qubits_;
    std::size_t num_symbols_;
    std::vector<GateOp> ops_;
    std::vector<Block> blocks_;
    std::vector<Discard> discards_;
    std::vector<bool> discarded_;
};

/// Bound angle of a rotation op; fixed angles pass through.
double bound_angle(const GateOp &op, const ParameterVector &theta);

/// RX(phi1) a, RX(phi2) b, CZ(a, b), RY(phi3) a, RY(phi4) b.
std::vector<GateOp> conv_block(std::size_t qa, std::size_t qb, const std::array<std::size_t, 4> &symbols);

struct PoolBlock {
    std::vector<GateOp> ops;
    std::size_t discarded;
};

/// CNOT(c -> t), RY(theta) t, CNOT(c -> t); the control is discarded.
PoolBlock pool_block(std::size_t control, std::size_t target, std::size_t symbol);

/// 4x4 unitary of a gate sequence restricted to qubits (qa, qb), qa high.
sim::Mat4 two_qubit_unitary(std::span<const GateOp> ops, std::size_t qa, std::size_t qb,
                            const ParameterVector &theta);

} // namespace qcnn::circuit
