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
 * Binds a symbolic circuit to angles and runs it on an input state.
 */
#pragma once

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include "qcnn/circuit/circuit.hpp"
#include "qcnn/circuit/encoding.hpp"
#include "qcnn/sim/density_matrix.hpp"
#include "qcnn/sim/state_vector.hpp"

namespace qcnn::circuit {

/// Noisy output: the density matrix over the qubits still active at the end.
/// `labels[i]` is the original qubit index of local qubit i.
struct MixedOutput {
    sim::DensityMatrix rho;
    std::vector<std::size_t> labels;

    /// Local index of original qubit q; throws if q was traced out.
    std::size_t local_index(std::size_t q) const;
};

using Output = std::variant<sim::StateVector, MixedOutput>;

/// Noiseless evolution. Discard markers are ignored: tracing out at the end
/// leaves every expectation on active qubits unchanged.
sim::StateVector run_pure(const Circuit &circuit, const ParameterVector &theta, sim::StateVector input);

/// Density-matrix evolution with depolarizing noise of strength p on both
/// qubits of every block, and discarded qubits traced out as they retire.
MixedOutput run_noisy(const Circuit &circuit, const ParameterVector &theta,
                      const sim::StateVector &input, double p);

/// Pure path when noise is disabled, density path otherwise.
Output bind_and_run(const Circuit &circuit, const ParameterVector &theta, const EncodedSample &input,
                    const sim::NoiseConfig &noise);
Output bind_and_run(const Circuit &circuit, const ParameterVector &theta, const sim::StateVector &input,
                    const sim::NoiseConfig &noise);

} // namespace qcnn::circuit
