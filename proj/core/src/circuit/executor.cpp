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
#include "qcnn/circuit/executor.hpp"

#include <algorithm>
#include <string>

namespace qcnn::circuit {

namespace {

void check_inputs(const Circuit &circuit, const ParameterVector &theta, std::size_t input_qubits) {
    if (theta.size() != circuit.num_symbols()) {
        throw DimensionError("parameter vector has " + std::to_string(theta.size()) +
                             " entries, circuit declares " + std::to_string(circuit.num_symbols()));
    }
    if (input_qubits != circuit.num_qubits()) {
        throw DimensionError("input has " + std::to_string(input_qubits) + " qubits, circuit " +
                             std::to_string(circuit.num_qubits()));
    }
}

} // namespace

std::size_t MixedOutput::local_index(std::size_t q) const {
    const auto it = std::find(labels.begin(), labels.end(), q);
    if (it == labels.end()) {
        throw DimensionError("qubit " + std::to_string(q) + " was traced out");
    }
    return static_cast<std::size_t>(it - labels.begin());
}

sim::StateVector run_pure(const Circuit &circuit, const ParameterVector &theta, sim::StateVector input) {
    check_inputs(circuit, theta, input.num_qubits());
    auto amps = input.mutable_amplitudes();
    for (const auto &op : circuit.ops()) {
        std::optional<double> angle;
        if (sim::is_rotation(op.kind)) {
            angle = bound_angle(op, theta);
        }
        sim::kernels::apply_gate(amps, circuit.num_qubits(), op, angle);
    }
    return input;
}

namespace {

/// The block's ops multiplied into one 4x4 unitary on (qubits[0], qubits[1]),
/// or nothing when an op leaves the pair or a qubit retires mid-block.
std::optional<sim::Mat4> fused_block(std::span<const sim::GateOp> ops, const Block &block,
                                     const ParameterVector &theta, std::span<const Discard> discards) {
    for (const auto &d : discards) {
        if (d.after_op > block.first_op && d.after_op < block.end_op) {
            return std::nullopt;
        }
    }
    const auto span = ops.subspan(block.first_op, block.end_op - block.first_op);
    for (const auto &op : span) {
        for (std::size_t k = 0; k < op.arity(); ++k) {
            if (op.qubits[k] != block.qubits[0] && op.qubits[k] != block.qubits[1]) {
                return std::nullopt;
            }
        }
    }
    return two_qubit_unitary(span, block.qubits[0], block.qubits[1], theta);
}

} // namespace

MixedOutput run_noisy(const Circuit &circuit, const ParameterVector &theta, const sim::StateVector &input,
                      double p) {
    check_inputs(circuit, theta, input.num_qubits());
    sim::NoiseConfig{p, true}.validate();
    MixedOutput out{sim::DensityMatrix::from_state(input), {}};
    for (std::size_t q = 0; q < circuit.num_qubits(); ++q) {
        out.labels.push_back(q);
    }
    const auto ops = circuit.ops();
    const auto blocks = circuit.blocks();
    const auto discards = circuit.discards();
    std::size_t next_block = 0;
    std::size_t next_discard = 0;

    auto retire = [&](std::size_t position) {
        std::vector<std::size_t> local;
        std::vector<std::size_t> gone;
        while (next_discard < discards.size() && discards[next_discard].after_op == position) {
            gone.push_back(discards[next_discard].qubit);
            local.push_back(out.local_index(discards[next_discard].qubit));
            ++next_discard;
        }
        if (local.empty()) {
            return;
        }
        out.rho = sim::partial_trace(out.rho, local);
        std::erase_if(out.labels, [&](std::size_t q) {
            return std::find(gone.begin(), gone.end(), q) != gone.end();
        });
    };

    retire(0);
    std::size_t i = 0;
    while (i < ops.size()) {
        if (next_block < blocks.size() && blocks[next_block].first_op == i) {
            const auto &block = blocks[next_block];
            if (auto u = fused_block(ops, block, theta, discards)) {
                out.rho.apply_2q(out.local_index(block.qubits[0]), out.local_index(block.qubits[1]), *u);
                if (p > 0.0) {
                    for (auto q : block.qubits) {
                        out.rho.depolarize(out.local_index(q), p);
                    }
                }
                ++next_block;
                i = block.end_op;
                retire(i);
                continue;
            }
        }
        sim::GateOp local = ops[i];
        for (std::size_t k = 0; k < local.arity(); ++k) {
            local.qubits[k] = out.local_index(local.qubits[k]);
        }
        if (local.arity() == 1) {
            local.qubits[1] = local.qubits[0];
        }
        std::optional<double> angle;
        if (sim::is_rotation(local.kind)) {
            angle = bound_angle(local, theta);
        }
        out.rho.apply(local, angle);
        while (next_block < blocks.size() && blocks[next_block].end_op == i + 1) {
            if (p > 0.0) {
                for (auto q : blocks[next_block].qubits) {
                    out.rho.depolarize(out.local_index(q), p);
                }
            }
            ++next_block;
        }
        ++i;
        retire(i);
    }
    return out;
}

Output bind_and_run(const Circuit &circuit, const ParameterVector &theta, const sim::StateVector &input,
                    const sim::NoiseConfig &noise) {
    if (!noise.active()) {
        return run_pure(circuit, theta, input);
    }
    return run_noisy(circuit, theta, input, noise.p);
}

Output bind_and_run(const Circuit &circuit, const ParameterVector &theta, const EncodedSample &input,
                    const sim::NoiseConfig &noise) {
    return bind_and_run(circuit, theta, input.to_state(), noise);
}

} // namespace qcnn::circuit
