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
#include "qcnn/circuit/encoding.hpp"

#include <cmath>
#include <string>

namespace qcnn::circuit {

std::size_t EncodedSample::num_qubits() const {
    std::size_t n = 0;
    while ((std::size_t{1} << n) < amplitudes.size()) {
        ++n;
    }
    return n;
}

sim::StateVector EncodedSample::to_state() const {
    return sim::StateVector::from_amplitudes(
        std::vector<Complex>(amplitudes.begin(), amplitudes.end()));
}

EncodedSample amplitude_encode(std::span<const double> pixels, std::size_t num_qubits, int label) {
    if (num_qubits < 1 || num_qubits > sim::kMaxQubits) {
        throw ConfigError("amplitude_encode: qubit count out of range");
    }
    const std::size_t dim = std::size_t{1} << num_qubits;
    if (pixels.size() > dim) {
        throw DimensionError("amplitude_encode: " + std::to_string(pixels.size()) +
                             " values do not fit in " + std::to_string(dim) + " amplitudes");
    }
    double sq = 0.0;
    for (double p : pixels) {
        if (!(p >= 0.0) || !std::isfinite(p)) {
            throw ConfigError("amplitude_encode: pixel values must be finite and non-negative");
        }
        sq += p * p;
    }
    if (sq == 0.0) {
        throw ConfigError("amplitude_encode: all-zero input has no normalised direction");
    }
    const double norm = std::sqrt(sq);
    EncodedSample out;
    out.amplitudes.assign(dim, 0.0);
    for (std::size_t i = 0; i < pixels.size(); ++i) {
        out.amplitudes[i] = pixels[i] / norm;
    }
    out.label = label;
    return out;
}

} // namespace qcnn::circuit
