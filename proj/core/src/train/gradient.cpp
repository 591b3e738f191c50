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
#include "qcnn/train/gradient.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>

#include "qcnn/circuit/executor.hpp"
#include "qcnn/parallel.hpp"

namespace qcnn::train {

namespace {

constexpr double kShift = std::numbers::pi / 2.0;

void check(const circuit::Circuit &circuit, const circuit::ParameterVector &theta,
           const sim::StateVector &input, const Readout &ro) {
    if (theta.size() != circuit.num_symbols()) {
        throw DimensionError("gradient: parameter count " + std::to_string(theta.size()) +
                             " != circuit symbols " + std::to_string(circuit.num_symbols()));
    }
    if (input.num_qubits() != circuit.num_qubits()) {
        throw DimensionError("gradient: input qubit count mismatch");
    }
    if (ro.survivors.empty()) {
        throw ConfigError("gradient: empty survivor set");
    }
}

std::optional<double> angle_of(const sim::GateOp &op, const circuit::ParameterVector &theta) {
    if (sim::is_rotation(op.kind)) {
        return circuit::bound_angle(op, theta);
    }
    return std::nullopt;
}

/// Diagonal of the readout observable: score = sum_i w_i |psi_i|^2.
std::vector<double> observable_diagonal(std::size_t n, const Readout &ro) {
    const std::size_t dim = std::size_t{1} << n;
    std::vector<double> w(dim, 0.0);
    std::size_t mask = 0;
    for (auto q : ro.survivors) {
        if (q >= n) {
            throw DimensionError("readout survivor out of range");
        }
        mask |= std::size_t{1} << sim::bit_position(n, q);
    }
    const double inv_m = 1.0 / static_cast<double>(ro.survivors.size());
    for (std::size_t i = 0; i < dim; ++i) {
        if (ro.kind == CostKind::kLocal) {
            w[i] = inv_m * static_cast<double>(std::popcount(i & mask));
        } else {
            w[i] = (i & mask) ? 1.0 : 0.0;
        }
    }
    return w;
}

/// <lambda| P |psi> for the Pauli generator of `kind` on qubit q.
Complex pauli_inner(std::span<const Complex> lambda, std::span<const Complex> psi, std::size_t n,
                    std::size_t q, sim::GateKind kind) {
    const std::size_t stride = std::size_t{1} << sim::bit_position(n, q);
    const std::size_t dim = psi.size();
    Complex acc = 0.0;
    for (std::size_t base = 0; base < dim; base += 2 * stride) {
        for (std::size_t a = base; a < base + stride; ++a) {
            const std::size_t b = a + stride;
            switch (kind) {
            case sim::GateKind::kRX:
                acc += std::conj(lambda[a]) * psi[b] + std::conj(lambda[b]) * psi[a];
                break;
            case sim::GateKind::kRY:
                acc += std::conj(lambda[a]) * Complex(0, -1) * psi[b] +
                       std::conj(lambda[b]) * Complex(0, 1) * psi[a];
                break;
            default:
                acc += std::conj(lambda[a]) * psi[a] - std::conj(lambda[b]) * psi[b];
                break;
            }
        }
    }
    return acc;
}

} // namespace

std::string_view to_string(GradientMethod method) {
    return method == GradientMethod::kParameterShift ? "parameter-shift" : "adjoint";
}

GradientMethod gradient_method_from_string(std::string_view name) {
    if (name == "parameter-shift") {
        return GradientMethod::kParameterShift;
    }
    if (name == "adjoint") {
        return GradientMethod::kAdjoint;
    }
    throw ConfigError("unknown gradient method '" + std::string(name) + "'");
}

ScoreGradient shift_rule_score_gradient(const circuit::Circuit &circuit,
                                        const circuit::ParameterVector &theta,
                                        const sim::StateVector &input, const Readout &ro,
                                        std::optional<std::size_t> only_symbol) {
    check(circuit, theta, input, ro);
    const auto ops = circuit.ops();
    const std::size_t n = circuit.num_qubits();
    ScoreGradient out;
    out.gradient.assign(theta.size(), 0.0);

    auto finish = [&](sim::StateVector state, std::size_t from) {
        auto amps = state.mutable_amplitudes();
        for (std::size_t j = from; j < ops.size(); ++j) {
            sim::kernels::apply_gate(amps, n, ops[j], angle_of(ops[j], theta));
        }
        return readout(state, ro.survivors, ro.kind);
    };

    sim::StateVector prefix = input;
    for (std::size_t k = 0; k < ops.size(); ++k) {
        const auto &op = ops[k];
        if (auto sym = op.symbol(); sym && (!only_symbol || *sym == *only_symbol)) {
            const double base = theta[*sym];
            double shifted[2];
            for (int sign = 0; sign < 2; ++sign) {
                sim::StateVector s = prefix;
                sim::kernels::apply_gate(s.mutable_amplitudes(), n, op,
                                         base + (sign == 0 ? kShift : -kShift));
                shifted[sign] = finish(std::move(s), k + 1);
            }
            out.gradient[*sym] += 0.5 * (shifted[0] - shifted[1]);
        }
        sim::kernels::apply_gate(prefix.mutable_amplitudes(), n, op, angle_of(op, theta));
    }
    out.score = readout(prefix, ro.survivors, ro.kind);
    return out;
}

ScoreGradient adjoint_score_gradient(const circuit::Circuit &circuit,
                                     const circuit::ParameterVector &theta,
                                     const sim::StateVector &input, const Readout &ro) {
    check(circuit, theta, input, ro);
    const auto ops = circuit.ops();
    const std::size_t n = circuit.num_qubits();
    ScoreGradient out;
    out.gradient.assign(theta.size(), 0.0);

    std::vector<Complex> psi(input.amplitudes().begin(), input.amplitudes().end());
    for (const auto &op : ops) {
        sim::kernels::apply_gate(psi, n, op, angle_of(op, theta));
    }
    const auto w = observable_diagonal(n, ro);
    std::vector<Complex> lambda(psi.size());
    double score = 0.0;
    for (std::size_t i = 0; i < psi.size(); ++i) {
        lambda[i] = w[i] * psi[i];
        score += w[i] * std::norm(psi[i]);
    }
    out.score = score;

    for (std::size_t k = ops.size(); k-- > 0;) {
        const auto &op = ops[k];
        const auto angle = angle_of(op, theta);
        if (auto sym = op.symbol()) {
            out.gradient[*sym] += pauli_inner(lambda, psi, n, op.qubits[0], op.kind).imag();
        }
        if (k > 0) {
            sim::kernels::apply_gate_inverse(psi, n, op, angle);
            sim::kernels::apply_gate_inverse(lambda, n, op, angle);
        }
    }
    return out;
}

ScoreGradient score_gradient(const circuit::Circuit &circuit, const circuit::ParameterVector &theta,
                             const sim::StateVector &input, const Readout &ro,
                             GradientMethod method) {
    return method == GradientMethod::kParameterShift
               ? shift_rule_score_gradient(circuit, theta, input, ro)
               : adjoint_score_gradient(circuit, theta, input, ro);
}

BatchEvaluation evaluate_batch(const circuit::ParameterVector &theta,
                               std::span<const circuit::EncodedSample> batch, const circuit::Qcnn &model,
                               CostKind kind, GradientMethod method, std::size_t threads) {
    if (batch.empty()) {
        throw ConfigError("evaluate_batch: empty batch");
    }
    const Readout ro{kind, model.survivors()};
    std::vector<ScoreGradient> per_sample(batch.size());
    parallel_for(batch.size(), threads, [&](std::size_t i) {
        per_sample[i] = score_gradient(model.circuit, theta, batch[i].to_state(), ro, method);
    });

    BatchEvaluation ev;
    ev.gradient.assign(theta.size(), 0.0);
    ev.scores.reserve(batch.size());
    const double inv_b = 1.0 / static_cast<double>(batch.size());
    for (std::size_t i = 0; i < batch.size(); ++i) {
        const double residual = per_sample[i].score - batch[i].label;
        ev.loss += residual * residual * inv_b;
        const double outer = 2.0 * residual * inv_b;
        for (std::size_t p = 0; p < theta.size(); ++p) {
            ev.gradient[p] += outer * per_sample[i].gradient[p];
        }
        ev.scores.push_back(per_sample[i].score);
    }
    return ev;
}

std::vector<double> parameter_shift_gradient(const circuit::ParameterVector &theta,
                                             std::span<const circuit::EncodedSample> batch,
                                             const circuit::Qcnn &model, CostKind kind) {
    return evaluate_batch(theta, batch, model, kind, GradientMethod::kParameterShift).gradient;
}

double l2_norm(std::span<const double> v) {
    double acc = 0.0;
    for (double x : v) {
        acc += x * x;
    }
    return std::sqrt(acc);
}

} // namespace qcnn::train
