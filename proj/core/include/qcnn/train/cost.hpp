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
 * Readout costs, prediction and the batch MSE loss.
 *
 * Both costs lie in [0, 1] and decrease toward label-0 targets:
 *   local  = (1/m) sum_i (1 - <Z_i>) / 2
 *   global = 1 - <|0..0><0..0|> on the survivors
 * A sample is classified 1 when its score is >= 0.5.
 */
#pragma once

#include <cstddef>
#include <span>
#include <string_view>

#include "qcnn/circuit/encoding.hpp"
#include "qcnn/circuit/executor.hpp"
#include "qcnn/circuit/qcnn_plan.hpp"

namespace qcnn::train {

enum class CostKind { kLocal, kGlobal };

std::string_view to_string(CostKind kind);
CostKind cost_kind_from_string(std::string_view name);

double cost_local(const sim::StateVector &state, std::span<const std::size_t> survivors);
double cost_local(const circuit::MixedOutput &out, std::span<const std::size_t> survivors);
double cost_local(const circuit::Output &out, std::span<const std::size_t> survivors);

double cost_global(const sim::StateVector &state, std::span<const std::size_t> survivors);
double cost_global(const circuit::MixedOutput &out, std::span<const std::size_t> survivors);
double cost_global(const circuit::Output &out, std::span<const std::size_t> survivors);

double readout(const circuit::Output &out, std::span<const std::size_t> survivors, CostKind kind);
double readout(const sim::StateVector &state, std::span<const std::size_t> survivors, CostKind kind);

inline constexpr double kDecisionThreshold = 0.5;

/// Ties go to class 1.
constexpr int classify(double score) { return score >= kDecisionThreshold ? 1 : 0; }

struct Prediction {
    double score;
    int label;
};

Prediction predict(const circuit::ParameterVector &theta, const circuit::EncodedSample &sample,
                   const circuit::Qcnn &model, const sim::NoiseConfig &noise,
                   CostKind kind = CostKind::kLocal);

/// (1/B) sum_b (score_b - y_b)^2 on the noiseless path.
double batch_loss(const circuit::ParameterVector &theta, std::span<const circuit::EncodedSample> batch,
                  const circuit::Qcnn &model, CostKind kind);

} // namespace qcnn::train
