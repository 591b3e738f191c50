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
#include "qcnn/train/trainer.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <string>

#include "qcnn/parallel.hpp"

namespace qcnn::train {

Evaluation evaluate(const circuit::ParameterVector &theta, std::span<const circuit::EncodedSample> samples,
                    const circuit::Qcnn &model, CostKind kind, const sim::NoiseConfig &noise,
                    std::size_t threads) {
    if (samples.empty()) {
        throw ConfigError("evaluate: empty dataset");
    }
    Evaluation ev;
    ev.scores.resize(samples.size());
    parallel_for(samples.size(), threads, [&](std::size_t i) {
        ev.scores[i] = predict(theta, samples[i], model, noise, kind).score;
    });
    std::size_t correct = 0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double s = ev.scores[i];
        const double r = s - samples[i].label;
        ev.loss += r * r;
        ev.mean_score += s;
        if (classify(s) == samples[i].label) {
            ++correct;
        }
    }
    const auto count = static_cast<double>(samples.size());
    ev.loss /= count;
    ev.mean_score /= count;
    ev.accuracy = static_cast<double>(correct) / count;
    return ev;
}

TrainResult train(const TrainConfig &config, const circuit::Qcnn &model,
                  std::span<const circuit::EncodedSample> train_set,
                  std::span<const circuit::EncodedSample> val_set, circuit::ParameterVector theta_init,
                  const EpochCallback &on_epoch) {
    config.validate();
    if (train_set.empty() || val_set.empty()) {
        throw ConfigError("train: training and validation sets must be non-empty");
    }
    if (theta_init.size() != model.num_parameters()) {
        throw DimensionError("train: theta has " + std::to_string(theta_init.size()) +
                             " entries, plan needs " + std::to_string(model.num_parameters()));
    }

    const std::size_t batches = (train_set.size() + config.batch_size - 1) / config.batch_size;
    TrainConfig cfg = config;
    if (cfg.decay_steps == 0) {
        cfg.decay_steps = batches;
    }

    TrainResult result{{}, std::move(theta_init), OptimizerState::fresh(model.num_parameters())};
    std::mt19937_64 rng(cfg.seed);
    std::vector<std::size_t> order(train_set.size());
    std::vector<circuit::EncodedSample> batch;
    batch.reserve(cfg.batch_size);

    for (std::size_t epoch = 1; epoch <= cfg.epochs; ++epoch) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::shuffle(order.begin(), order.end(), rng);

        double loss_sum = 0.0;
        double norm_sum = 0.0;
        std::size_t correct = 0;
        for (std::size_t b = 0; b < batches; ++b) {
            const std::size_t begin = b * cfg.batch_size;
            const std::size_t end = std::min(train_set.size(), begin + cfg.batch_size);
            batch.clear();
            for (std::size_t i = begin; i < end; ++i) {
                batch.push_back(train_set[order[i]]);
            }
            const auto ev = evaluate_batch(result.theta, batch, model, cfg.cost_kind, cfg.gradient_method,
                                           cfg.threads);
            loss_sum += ev.loss * static_cast<double>(batch.size());
            norm_sum += l2_norm(ev.gradient);
            for (std::size_t i = 0; i < batch.size(); ++i) {
                if (classify(ev.scores[i]) == batch[i].label) {
                    ++correct;
                }
            }
            adam_step(result.optimizer, result.theta, ev.gradient, cfg);
        }

        EpochMetrics m;
        m.epoch = epoch;
        m.train_loss = loss_sum / static_cast<double>(train_set.size());
        m.train_acc = static_cast<double>(correct) / static_cast<double>(train_set.size());
        m.grad_norm = norm_sum / static_cast<double>(batches);
        const auto val = evaluate(result.theta, val_set, model, cfg.cost_kind, {}, cfg.threads);
        m.val_loss = val.loss;
        m.val_acc = val.accuracy;
        result.metrics.push_back(m);
        if (on_epoch) {
            on_epoch(m);
        }
    }
    return result;
}

} // namespace qcnn::train
