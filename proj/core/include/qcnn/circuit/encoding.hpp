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
#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "qcnn/sim/state_vector.hpp"

namespace qcnn::circuit {

/// Amplitude-encoded input with its binary label. Amplitudes are real.
struct EncodedSample {
    std::vector<double> amplitudes;
    int label = 0;

    std::size_t num_qubits() const;
    sim::StateVector to_state() const;
};

/// Zero-pads `pixels` to 2^n and divides by the 2-norm. Pixels must be
/// non-negative and not all zero.
EncodedSample amplitude_encode(std::span<const double> pixels, std::size_t num_qubits, int label = 0);

} // namespace qcnn::circuit
