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
// Random symbolic circuits for gradient oracles.
#pragma once

#include <cstddef>
#include <numbers>
#include <random>
#include <vector>

#include "qcnn/circuit/circuit.hpp"
#include "qcnn/circuit/executor.hpp"
#include "qcnn/train/cost.hpp"
#include "qcnn/train/gradient.hpp"

namespace testutil {

struct RandomCircuit {
    qcnn::circuit::Circuit circuit;
    qcnn::circuit::ParameterVector theta;
};

/// n qubits, `gates` ops drawn from the full gate set. Rotations mostly
/// reference one of `symbols` shared symbols, so most symbols occur several
/// times; a few carry fixed angles.
inline RandomCircuit random_circuit(std::size_t n, std::size_t gates, std::size_t symbols, std::mt19937_64 &rng) {
    using qcnn::sim::GateOp;
    using qcnn::sim::SymbolRef;
    std::uniform_int_distribution<int> kind(0, 5);
    std::uniform_int_distribution<std::size_t> qubit(0, n - 1);
    std::uniform_int_distribution<std::size_t> sym(0, symbols - 1);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    qcnn::circuit::Circuit c(n, symbols);
    for (std::size_t g = 0; g < gates; ++g) {
        const std::size_t a = qubit(rng);
        std::size_t b = qubit(rng);
        while (n > 1 && b == a) {
            b = qubit(rng);
        }
        const int k = kind(rng);
        qcnn::sim::GateParameter p = SymbolRef{sym(rng)};
        if (k == 5) {
            p = angle(rng);
        }
        if (n == 1 || k == 0 || k == 5) {
            c.append(GateOp::rx(a, p));
        } else if (k == 1) {
            c.append(GateOp::ry(a, p));
        } else if (k == 2) {
            c.append(GateOp::rz(a, p));
        } else if (k == 3) {
            c.append(GateOp::cz(a, b));
        } else {
            c.append(GateOp::cnot(a, b));
        }
    }
    std::vector<double> th(symbols);
    for (auto &x : th) {
        x = angle(rng);
    }
    return {std::move(c), qcnn::circuit::ParameterVector(std::move(th))};
}

inline double score_of(const qcnn::circuit::Circuit &c, const qcnn::circuit::ParameterVector &theta,
                       const qcnn::sim::StateVector &in, const qcnn::train::Readout &ro) {
    return qcnn::train::readout(qcnn::circuit::run_pure(c, theta, in), ro.survivors, ro.kind);
}

/// Central difference of the score in symbol mu.
inline double central_difference(const qcnn::circuit::Circuit &c, qcnn::circuit::ParameterVector theta,
                                 const qcnn::sim::StateVector &in, const qcnn::train::Readout &ro, std::size_t mu,
                                 double h) {
    const double base = theta[mu];
    theta[mu] = base + h;
    const double up = score_of(c, theta, in, ro);
    theta[mu] = base - h;
    const double down = score_of(c, theta, in, ro);
    return (up - down) / (2 * h);
}

} // namespace testutil
