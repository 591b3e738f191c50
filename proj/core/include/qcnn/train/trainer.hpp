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
 * Mini-batch training loop and dataset evaluation.
 */
#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "qcnn/circuit/encoding.hpp"
#include "qcnn/circuit/qcnn_plan.hpp"
#include "qcnn/sim/density_matrix.hpp"
#include "qcnn/train/adam.hpp"

namespace qcnn::train {

struct EpochMetrics {
    std::size_t epoch = 0;
    double train_loss = 0.0;
    double val_loss = 0.0;
    double train_acc = 0.0;
    double val_acc = 0.0;
    /// Mean L2 norm of the per-batch loss gradients seen during the epoch.
    double grad_norm = 0.0;

    friend bool operator==(const EpochMetrics &, const EpochMetrics &) = default;
};

struct Evaluation {
    double loss = 0.0;
    double accuracy = 0.0;
    double mean_score = 0.0;
    std::vector<double> scores;
};

/// MSE loss, accuracy and mean score over a dataset. An active noise config
/// routes evaluation through the density-matrix path.
Evaluation evaluate(const circuit::ParameterVector &theta, std::span<const circuit::EncodedSample> samples,
                    const circuit::Qcnn &model, CostKind kind, const sim::NoiseConfig &noise = {},
                    std::size_t threads = 1);

struct TrainResult {
    std::vector<EpochMetrics> metrics;
    circuit::ParameterVector theta;
    OptimizerState optimizer;
};

using EpochCallback = std::function<void(const EpochMetrics &)>;

/// Runs config.epochs epochs of shuffled mini-batch Adam descent. Train
/// metrics are running means over the epoch's batches, taken before each
/// update; validation metrics use the parameters at the end of the epoch.
TrainResult train(const TrainConfig &config, const circuit::Qcnn &model,
                  std::span<const circuit::EncodedSample> train_set,
                  std::span<const circuit::EncodedSample> val_set, circuit::ParameterVector theta_init,
                  const EpochCallback &on_epoch = {});

} // namespace qcnn::train
