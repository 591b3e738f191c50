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
#include "qcnn/tni/ttn.hpp"

#include <string>

namespace qcnn::tni {

TtnModel ttn_from_circuit(const circuit::Circuit &circuit, std::vector<std::size_t> survivors,
                          const circuit::ParameterVector &theta) {
    if (theta.size() != circuit.num_symbols()) {
        throw DimensionError("ttn: parameter count " + std::to_string(theta.size()) + " != symbols " +
                             std::to_string(circuit.num_symbols()));
    }
    std::vector<std::optional<std::size_t>> last(circuit.num_qubits());
    std::vector<TtnNode> nodes;
    const auto ops = circuit.ops();
    for (const auto &b : circuit.blocks()) {
        TtnNode node{b.kind,
                     b.qubits,
                     b.stage,
                     b.first_op,
                     b.end_op,
                     circuit::two_qubit_unitary(ops.subspan(b.first_op, b.end_op - b.first_op), b.qubits[0],
                                                b.qubits[1], theta),
                     {last[b.qubits[0]], last[b.qubits[1]]}};
        last[b.qubits[0]] = nodes.size();
        last[b.qubits[1]] = nodes.size();
        nodes.push_back(node);
    }
    return TtnModel(circuit.num_qubits(), std::move(nodes), std::move(survivors));
}

TtnModel ttn_from_plan(const circuit::QcnnPlan &plan, const circuit::ParameterVector &theta) {
    if (theta.size() != plan.total_parameters()) {
        throw DimensionError("ttn_from_plan: theta does not match the plan");
    }
    return ttn_from_circuit(plan.compile(), plan.survivors(), theta);
}

void contract_nodes(std::span<const TtnNode> nodes, MpsState &mps, std::size_t chi) {
    for (const auto &node : nodes) {
        mps.apply_2q(node.qubits[0], node.qubits[1], node.unitary, chi);
    }
}

double local_score(const MpsState &mps, std::span<const std::size_t> survivors) {
    if (survivors.empty()) {
        throw ConfigError("local_score: empty survivor set");
    }
    const auto z = mps.expectations_z();
    double acc = 0.0;
    for (auto q : survivors) {
        if (q >= z.size()) {
            throw DimensionError("local_score: survivor out of range");
        }
        acc += (1.0 - z[q]) / 2.0;
    }
    return acc / static_cast<double>(survivors.size());
}

double contract_and_score(const TtnModel &ttn, MpsState mps, std::span<const std::size_t> survivors,
                          std::size_t chi) {
    if (mps.num_sites() != ttn.num_qubits()) {
        throw DimensionError("contract_and_score: MPS has " + std::to_string(mps.num_sites()) +
                             " sites, network expects " + std::to_string(ttn.num_qubits()));
    }
    contract_nodes(ttn.nodes(), mps, chi);
    return local_score(mps, survivors);
}

} // namespace qcnn::tni
