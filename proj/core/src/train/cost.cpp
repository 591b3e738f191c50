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
#include "qcnn/train/cost.hpp"

#include <string>

namespace qcnn::train {

namespace {

void require_survivors(std::span<const std::size_t> survivors) {
    if (survivors.empty()) {
        throw ConfigError("cost needs a non-empty survivor set");
    }
}

std::vector<std::size_t> to_local(const circuit::MixedOutput &out, std::span<const std::size_t> survivors) {
    std::vector<std::size_t> local;
    local.reserve(survivors.size());
    for (auto q : survivors) {
        local.push_back(out.local_index(q));
    }
    return local;
}

} // namespace

std::string_view to_string(CostKind kind) { return kind == CostKind::kLocal ? "local" : "global"; }

CostKind cost_kind_from_string(std::string_view name) {
    if (name == "local") {
        return CostKind::kLocal;
    }
    if (name == "global") {
        return CostKind::kGlobal;
    }
    throw ConfigError("unknown cost kind '" + std::string(name) + "'");
}

double cost_local(const sim::StateVector &state, std::span<const std::size_t> survivors) {
    require_survivors(survivors);
    double acc = 0.0;
    for (auto q : survivors) {
        acc += (1.0 - sim::expectation_z(state, q)) / 2.0;
    }
    return acc / static_cast<double>(survivors.size());
}

double cost_local(const circuit::MixedOutput &out, std::span<const std::size_t> survivors) {
    require_survivors(survivors);
    double acc = 0.0;
    for (auto q : to_local(out, survivors)) {
        acc += (1.0 - sim::expectation_z(out.rho, q)) / 2.0;
    }
    return acc / static_cast<double>(survivors.size());
}

double cost_local(const circuit::Output &out, std::span<const std::size_t> survivors) {
    return std::visit([&](const auto &o) { return cost_local(o, survivors); }, out);
}

double cost_global(const sim::StateVector &state, std::span<const std::size_t> survivors) {
    require_survivors(survivors);
    return 1.0 - sim::expectation_global_projector(state, survivors);
}

double cost_global(const circuit::MixedOutput &out, std::span<const std::size_t> survivors) {
    require_survivors(survivors);
    const auto local = to_local(out, survivors);
    return 1.0 - sim::expectation_global_projector(out.rho, local);
}

double cost_global(const circuit::Output &out, std::span<const std::size_t> survivors) {
    return std::visit([&](const auto &o) { return cost_global(o, survivors); }, out);
}

double readout(const circuit::Output &out, std::span<const std::size_t> survivors, CostKind kind) {
    return kind == CostKind::kLocal ? cost_local(out, survivors) : cost_global(out, survivors);
}

double readout(const sim::StateVector &state, std::span<const std::size_t> survivors, CostKind kind) {
    return kind == CostKind::kLocal ? cost_local(state, survivors) : cost_global(state, survivors);
}

Prediction predict(const circuit::ParameterVector &theta, const circuit::EncodedSample &sample,
                   const circuit::Qcnn &model, const sim::NoiseConfig &noise, CostKind kind) {
    const auto out = circuit::bind_and_run(model.circuit, theta, sample, noise);
    const double s = readout(out, model.survivors(), kind);
    return {s, classify(s)};
}

double batch_loss(const circuit::ParameterVector &theta, std::span<const circuit::EncodedSample> batch,
                  const circuit::Qcnn &model, CostKind kind) {
    if (batch.empty()) {
        throw ConfigError("batch_loss: empty batch");
    }
    double acc = 0.0;
    for (const auto &sample : batch) {
        const auto out = circuit::run_pure(model.circuit, theta, sample.to_state());
        const double d = readout(out, model.survivors(), kind) - sample.label;
        acc += d * d;
    }
    return acc / static_cast<double>(batch.size());
}

} // namespace qcnn::train
