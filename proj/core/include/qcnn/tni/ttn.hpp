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
 * Tree tensor network view of a QCNN: one 4x4 node per conv or pool block,
 * linked to the nodes that last touched each of its two qubits.
 */
#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "qcnn/circuit/qcnn_plan.hpp"
#include "qcnn/tni/mps.hpp"

namespace qcnn::tni {

inline constexpr std::size_t kDefaultChi = 16;

struct TtnNode {
    circuit::BlockKind kind;
    std::array<std::size_t, 2> qubits;
    std::size_t stage;
    /// Op range of the block in the compiled circuit.
    std::size_t first_op;
    std::size_t end_op;
    sim::Mat4 unitary;
    /// Node feeding each qubit leg; empty for a data leaf.
    std::array<std::optional<std::size_t>, 2> inputs;
};

class TtnModel {
  public:
    TtnModel(std::size_t num_qubits, std::vector<TtnNode> nodes, std::vector<std::size_t> survivors)
        : num_qubits_(num_qubits), nodes_(std::move(nodes)), survivors_(std::move(survivors)) {}

    std::size_t num_qubits() const { return num_qubits_; }
    std::span<const TtnNode> nodes() const { return nodes_; }
    const std::vector<std::size_t> &survivors() const { return survivors_; }

  private:
    std::size_t num_qubits_;
    std::vector<TtnNode> nodes_;
    std::vector<std::size_t> survivors_;
};

TtnModel ttn_from_plan(const circuit::QcnnPlan &plan, const circuit::ParameterVector &theta);
TtnModel ttn_from_circuit(const circuit::Circuit &circuit, std::vector<std::size_t> survivors,
                          const circuit::ParameterVector &theta);

/// Applies nodes [first, last) to the MPS in order, truncating to chi.
void contract_nodes(std::span<const TtnNode> nodes, MpsState &mps, std::size_t chi);

/// Local readout (1/m) sum_i (1 - <Z_i>)/2 of a contracted MPS.
double local_score(const MpsState &mps, std::span<const std::size_t> survivors);

double contract_and_score(const TtnModel &ttn, MpsState mps, std::span<const std::size_t> survivors,
                          std::size_t chi = kDefaultChi);

} // namespace qcnn::tni
