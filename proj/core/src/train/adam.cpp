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
#include "qcnn/train/adam.hpp"

#include <cmath>
#include <string>

namespace qcnn::train {

void TrainConfig::validate() const {
    if (!(eta0 > 0.0)) {
        throw ConfigError("eta0 must be positive");
    }
    if (!(gamma > 0.0 && gamma <= 1.0)) {
        throw ConfigError("gamma must lie in (0, 1]");
    }
    if (!(beta1 >= 0.0 && beta1 < 1.0) || !(beta2 >= 0.0 && beta2 < 1.0)) {
        throw ConfigError("Adam betas must lie in [0, 1)");
    }
    if (!(epsilon > 0.0)) {
        throw ConfigError("epsilon must be positive");
    }
    if (batch_size == 0) {
        throw ConfigError("batch_size must be at least 1");
    }
    if (epochs == 0) {
        throw ConfigError("epochs must be at least 1");
    }
}

OptimizerState OptimizerState::fresh(std::size_t num_parameters) {
    return OptimizerState{std::vector<double>(num_parameters, 0.0), std::vector<double>(num_parameters, 0.0), 0};
}

double lr_at(std::size_t t, const TrainConfig &config) {
    if (config.decay_steps == 0) {
        throw ConfigError("lr_at: decay_steps must be at least 1");
    }
    const auto tier = static_cast<double>(t / config.decay_steps);
    return config.eta0 * std::pow(config.gamma, tier);
}

void adam_step(OptimizerState &opt, circuit::ParameterVector &theta, std::span<const double> grad,
               const TrainConfig &config) {
    const std::size_t p = theta.size();
    if (grad.size() != p || opt.m.size() != p || opt.v.size() != p) {
        throw DimensionError("adam_step: size mismatch (theta " + std::to_string(p) + ", grad " +
                             std::to_string(grad.size()) + ", moments " + std::to_string(opt.m.size()) + ")");
    }
    const double eta = lr_at(opt.t, config);
    ++opt.t;
    const double t = static_cast<double>(opt.t);
    const double c1 = 1.0 - std::pow(config.beta1, t);
    const double c2 = 1.0 - std::pow(config.beta2, t);
    for (std::size_t i = 0; i < p; ++i) {
        opt.m[i] = config.beta1 * opt.m[i] + (1.0 - config.beta1) * grad[i];
        opt.v[i] = config.beta2 * opt.v[i] + (1.0 - config.beta2) * grad[i] * grad[i];
        const double m_hat = opt.m[i] / c1;
        const double v_hat = opt.v[i] / c2;
        theta[i] -= eta * m_hat / (std::sqrt(v_hat) + config.epsilon);
    }
}

} // namespace qcnn::train
