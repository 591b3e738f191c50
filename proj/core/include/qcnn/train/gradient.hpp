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
 * Gradients of the readout score and of the batch MSE loss.
 *
 * Every symbol is generated by Pauli rotations, so for each occurrence k of
 * a symbol the shift rule gives the exact partial derivative
 *
 *     d score / d angle_k = [score(angle_k + pi/2) - score(angle_k - pi/2)] / 2,
 *
 * and a weight-tied symbol's derivative is the sum over its occurrences.
 *
 * Two routes evaluate the same quantity:
 *  - kParameterShift runs the two shifted circuits per occurrence.
 *  - kAdjoint evaluates the shift-rule difference in closed form. With
 *    R(+-pi/2) = (I -+ iP)/sqrt(2), the difference collapses to
 *    Im<lambda_k| P |psi_k>, where lambda_k is the observable applied to the
 *    output and pulled back through the suffix. One backward pass covers all
 *    occurrences.
 */
#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "qcnn/circuit/circuit.hpp"
#include "qcnn/circuit/encoding.hpp"
#include "qcnn/circuit/qcnn_plan.hpp"
#include "qcnn/sim/state_vector.hpp"
#include "qcnn/train/cost.hpp"

namespace qcnn::train {

enum class GradientMethod { kParameterShift, kAdjoint };

std::string_view to_string(GradientMethod method);
GradientMethod gradient_method_from_string(std::string_view name);

/// Which score a circuit's output is read as.
struct Readout {
    CostKind kind = CostKind::kLocal;
    std::vector<std::size_t> survivors;
};

struct ScoreGradient {
    double score = 0.0;
    std::vector<double> gradient;
};

/// Literal shift rule, one shifted pair per symbol occurrence. With
/// `only_symbol` set, every other entry is left at zero.
ScoreGradient shift_rule_score_gradient(const circuit::Circuit &circuit,
                                        const circuit::ParameterVector &theta,
                                        const sim::StateVector &input, const Readout &ro,
                                        std::optional<std::size_t> only_symbol = std::nullopt);

ScoreGradient adjoint_score_gradient(const circuit::Circuit &circuit,
                                     const circuit::ParameterVector &theta,
                                     const sim::StateVector &input, const Readout &ro);

ScoreGradient score_gradient(const circuit::Circuit &circuit, const circuit::ParameterVector &theta,
                             const sim::StateVector &input, const Readout &ro,
                             GradientMethod method);

struct BatchEvaluation {
    double loss = 0.0;
    std::vector<double> gradient;
    std::vector<double> scores;
};

/// MSE loss over the batch and its gradient, chaining 2(score - y)/B through
/// each sample's score gradient. Per-sample work may run on `threads`
/// workers; the reduction is always in ascending sample order.
BatchEvaluation evaluate_batch(const circuit::ParameterVector &theta,
                               std::span<const circuit::EncodedSample> batch, const circuit::Qcnn &model,
                               CostKind kind, GradientMethod method, std::size_t threads = 1);

/// Batch-loss gradient by explicit shifted circuit evaluations.
std::vector<double> parameter_shift_gradient(const circuit::ParameterVector &theta,
                                             std::span<const circuit::EncodedSample> batch,
                                             const circuit::Qcnn &model, CostKind kind);

double l2_norm(std::span<const double> v);

} // namespace qcnn::train
