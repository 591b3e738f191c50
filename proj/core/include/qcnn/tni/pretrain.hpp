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
 * Classical warm start: fit the QCNN angles on tensor-network contractions
 * of compressed inputs, then hand the result to quantum training.
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "qcnn/circuit/encoding.hpp"
#include "qcnn/circuit/qcnn_plan.hpp"
#include "qcnn/tni/ttn.hpp"
#include "qcnn/train/gradient.hpp"

namespace qcnn::tni {

struct TniConfig {
    std::size_t chi = kDefaultChi;
    std::size_t chi_data = 1;
    std::size_t iterations = 50;
    std::size_t subset_size = 128;
    std::size_t batch_size = 16;
    double learning_rate = 0.015;
    double init_stddev = 0.1;
    std::uint64_t seed = 0;
    std::size_t threads = 1;
    train::GradientMethod gradient_method = train::GradientMethod::kAdjoint;

    void validate() const;
    /// Every field as text, for checkpoint provenance.
    std::map<std::string, std::string> to_tags() const;
};

inline constexpr double kScoreClamp = 1e-7;

/// Cross-entropy on a score clamped to [1e-7, 1 - 1e-7].
double pseudo_loss(double score, int label);
/// Derivative of pseudo_loss in the score; zero where the clamp is active.
double pseudo_loss_derivative(double score, int label);

/// theta ~ Normal(0, stddev^2), drawn from a generator seeded with `seed`.
circuit::ParameterVector small_variance_init(std::size_t count, double stddev, std::uint64_t seed);

struct PseudoLossGradient {
    double loss = 0.0;
    std::vector<double> gradient;
};

/// Mean pseudo-loss over the inputs and its shift-rule gradient.
///
/// kParameterShift shifts each rotation occurrence by +-pi/2 inside its node
/// and re-contracts the suffix from a cached prefix MPS. kAdjoint evaluates
/// the same difference as -(1/2m) sum_i Im<lambda_i| O |psi>, pulling
/// lambda_i = Z_i psi_out back through the recorded contraction once per
/// survivor; O is the occurrence's generator conjugated to the node output.
PseudoLossGradient pseudo_loss_gradient(const circuit::Circuit &circuit, std::span<const std::size_t> survivors,
                                        const circuit::ParameterVector &theta, std::span<const MpsState> inputs,
                                        std::span<const int> labels, std::size_t chi,
                                        train::GradientMethod method = train::GradientMethod::kAdjoint,
                                        std::size_t threads = 1);

struct TniResult {
    circuit::ParameterVector theta;
    /// Batch pseudo-loss before each update.
    std::vector<double> losses;
};

/// Seeded draw of min(size, data.size()) samples without replacement.
std::vector<circuit::EncodedSample> tni_subset(std::span<const circuit::EncodedSample> data, std::size_t size,
                                               std::uint64_t seed);

TniResult tni_pretrain(std::span<const circuit::EncodedSample> data, const circuit::Qcnn &model,
                       const TniConfig &config);

} // namespace qcnn::tni
