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
 * Adam with bias correction and a stepped exponential learning-rate decay.
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "qcnn/circuit/circuit.hpp"
#include "qcnn/train/cost.hpp"
#include "qcnn/train/gradient.hpp"

namespace qcnn::train {

struct TrainConfig {
    double eta0 = 0.015;
    double gamma = 0.9;
    /// 0 selects one decay tier per epoch (batches per epoch).
    std::size_t decay_steps = 0;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-7;
    std::size_t batch_size = 32;
    std::size_t epochs = 150;
    CostKind cost_kind = CostKind::kLocal;
    std::uint64_t seed = 0;
    GradientMethod gradient_method = GradientMethod::kAdjoint;
    std::size_t threads = 1;

    void validate() const;
};

struct OptimizerState {
    std::vector<double> m;
    std::vector<double> v;
    std::size_t t = 0;

    static OptimizerState fresh(std::size_t num_parameters);
};

/// eta0 * gamma^floor(t / S). Throws ConfigError when S is zero.
double lr_at(std::size_t t, const TrainConfig &config);

/// One Adam update; the step uses lr_at(opt.t) and then advances opt.t.
void adam_step(OptimizerState &opt, circuit::ParameterVector &theta, std::span<const double> grad,
               const TrainConfig &config);

} // namespace qcnn::train
