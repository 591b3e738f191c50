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
#include "qcnn/tni/pretrain.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include "qcnn/parallel.hpp"
#include "qcnn/train/adam.hpp"
#include "qcnn/train/checkpoint.hpp"

namespace qcnn::tni {

namespace {

constexpr double kShift = std::numbers::pi / 2.0;

double clamp_score(double s) { return std::clamp(s, kScoreClamp, 1.0 - kScoreClamp); }

struct SampleGradient {
    double loss = 0.0;
    std::vector<double> gradient;
};

SampleGradient shift_sample_gradient(const circuit::Circuit &circuit, const TtnModel &ttn,
                               std::span<const std::size_t> survivors, const circuit::ParameterVector &theta,
                               const MpsState &input, int label, std::size_t chi) {
    const auto nodes = ttn.nodes();
    const auto ops = circuit.ops();
    // prefix[j] is the state entering node j.
    std::vector<MpsState> prefix;
    prefix.reserve(nodes.size() + 1);
    prefix.push_back(input);
    for (const auto &node : nodes) {
        MpsState next = prefix.back();
        next.apply_2q(node.qubits[0], node.qubits[1], node.unitary, chi);
        prefix.push_back(std::move(next));
    }
    const double score = local_score(prefix.back(), survivors);

    SampleGradient out;
    out.loss = pseudo_loss(score, label);
    out.gradient.assign(theta.size(), 0.0);
    const double outer = pseudo_loss_derivative(score, label);
    if (outer == 0.0) {
        return out;
    }
    for (std::size_t j = 0; j < nodes.size(); ++j) {
        const auto &node = nodes[j];
        std::vector<sim::GateOp> local(ops.begin() + static_cast<std::ptrdiff_t>(node.first_op),
                                       ops.begin() + static_cast<std::ptrdiff_t>(node.end_op));
        for (std::size_t k = 0; k < local.size(); ++k) {
            const auto sym = local[k].symbol();
            if (!sym) {
                continue;
            }
            const sim::GateOp original = local[k];
            const double angle = circuit::bound_angle(original, theta);
            double shifted[2];
            for (int sign = 0; sign < 2; ++sign) {
                local[k].parameter = angle + (sign == 0 ? kShift : -kShift);
                const auto u = circuit::two_qubit_unitary(local, node.qubits[0], node.qubits[1], theta);
                MpsState state = prefix[j];
                state.apply_2q(node.qubits[0], node.qubits[1], u, chi);
                contract_nodes(nodes.subspan(j + 1), state, chi);
                shifted[sign] = local_score(state, survivors);
            }
            local[k] = original;
            out.gradient[*sym] += outer * 0.5 * (shifted[0] - shifted[1]);
        }
    }
    return out;
}

/// Generator of each rotation in a node, conjugated through the node's
/// later ops: the operator whose transition element at the node output
/// gives that occurrence's shift-rule difference.
struct Occurrence {
    std::size_t symbol;
    sim::Mat4 op;
};

std::vector<Occurrence> node_occurrences(std::span<const sim::GateOp> ops, const TtnNode &node,
                                         const circuit::ParameterVector &theta) {
    std::vector<Occurrence> out;
    const auto qa = node.qubits[0];
    const auto qb = node.qubits[1];
    for (std::size_t t = 0; t < ops.size(); ++t) {
        const auto sym = ops[t].symbol();
        if (!sym) {
            continue;
        }
        const auto p = sim::generator(ops[t].kind);
        const auto gen = ops[t].qubits[0] == qa ? sim::kron(p, sim::identity2()) : sim::kron(sim::identity2(), p);
        const auto after = circuit::two_qubit_unitary(ops.subspan(t + 1), qa, qb, theta);
        out.push_back(Occurrence{*sym, sim::matmul(after, sim::matmul(gen, sim::adjoint(after)))});
    }
    return out;
}

SampleGradient adjoint_sample_gradient(const circuit::Circuit &circuit, const TtnModel &ttn,
                                       std::span<const std::size_t> survivors,
                                       const circuit::ParameterVector &theta, const MpsState &input, int label,
                                       std::size_t chi) {
    const auto nodes = ttn.nodes();
    const auto ops = circuit.ops();
    std::vector<MpsState> post;
    std::vector<std::vector<AdjacentOp>> trace;
    post.reserve(nodes.size());
    trace.reserve(nodes.size());
    MpsState state = input;
    for (const auto &node : nodes) {
        trace.push_back(state.apply_2q(node.qubits[0], node.qubits[1], node.unitary, chi));
        post.push_back(state);
    }
    const double score = local_score(state, survivors);

    SampleGradient out;
    out.loss = pseudo_loss(score, label);
    out.gradient.assign(theta.size(), 0.0);
    const double outer = pseudo_loss_derivative(score, label);
    if (outer == 0.0) {
        return out;
    }
    const sim::Mat2 z = {1.0, 0.0, 0.0, -1.0};
    std::vector<MpsState> lambda;
    for (auto q : survivors) {
        lambda.push_back(state);
        lambda.back().apply_1q(q, z);
    }
    const double scale = -outer / (2.0 * static_cast<double>(survivors.size()));
    for (std::size_t j = nodes.size(); j-- > 0;) {
        const auto &node = nodes[j];
        sim::Mat4 t{};
        for (const auto &l : lambda) {
            const auto ti = two_site_transition(l, post[j], node.qubits[0], node.qubits[1]);
            for (std::size_t e = 0; e < 16; ++e) {
                t[e] += ti[e];
            }
        }
        for (const auto &occ : node_occurrences(ops.subspan(node.first_op, node.end_op - node.first_op), node, theta)) {
            Complex element = 0.0;
            for (std::size_t e = 0; e < 16; ++e) {
                element += occ.op[e] * t[e];
            }
            out.gradient[occ.symbol] += scale * element.imag();
        }
        if (j == 0) {
            break;
        }
        for (auto &l : lambda) {
            for (auto it = trace[j].rbegin(); it != trace[j].rend(); ++it) {
                l.apply_adjacent(*it, chi, true);
            }
        }
    }
    return out;
}

} // namespace

void TniConfig::validate() const {
    if (chi == 0 || chi_data == 0) {
        throw ConfigError("tni: chi and chi_data must be at least 1");
    }
    if (iterations == 0) {
        throw ConfigError("tni: iterations must be at least 1");
    }
    if (subset_size == 0 || batch_size == 0) {
        throw ConfigError("tni: subset_size and batch_size must be at least 1");
    }
    if (!(learning_rate > 0.0) || !(init_stddev >= 0.0)) {
        throw ConfigError("tni: learning_rate must be positive and init_stddev non-negative");
    }
}

std::map<std::string, std::string> TniConfig::to_tags() const {
    return {{"tni.chi", std::to_string(chi)},
            {"tni.chi_data", std::to_string(chi_data)},
            {"tni.iterations", std::to_string(iterations)},
            {"tni.subset_size", std::to_string(subset_size)},
            {"tni.batch_size", std::to_string(batch_size)},
            {"tni.learning_rate", train::format_double(learning_rate)},
            {"tni.init_stddev", train::format_double(init_stddev)},
            {"tni.seed", std::to_string(seed)},
            {"tni.gradient_method", std::string(train::to_string(gradient_method))}};
}

double pseudo_loss(double score, int label) {
    const double s = clamp_score(score);
    return label == 1 ? -std::log(s) : -std::log(1.0 - s);
}

double pseudo_loss_derivative(double score, int label) {
    if (score < kScoreClamp || score > 1.0 - kScoreClamp) {
        return 0.0;
    }
    return label == 1 ? -1.0 / score : 1.0 / (1.0 - score);
}

circuit::ParameterVector small_variance_init(std::size_t count, double stddev, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> dist(0.0, stddev);
    std::vector<double> values(count);
    for (auto &v : values) {
        v = dist(rng);
    }
    return circuit::ParameterVector(std::move(values));
}

PseudoLossGradient pseudo_loss_gradient(const circuit::Circuit &circuit, std::span<const std::size_t> survivors,
                                        const circuit::ParameterVector &theta, std::span<const MpsState> inputs,
                                        std::span<const int> labels, std::size_t chi,
                                        train::GradientMethod method, std::size_t threads) {
    if (inputs.empty() || inputs.size() != labels.size()) {
        throw DimensionError("pseudo_loss_gradient: need matching non-empty inputs and labels");
    }
    const auto ttn = ttn_from_circuit(circuit, {survivors.begin(), survivors.end()}, theta);
    std::vector<SampleGradient> per(inputs.size());
    parallel_for(inputs.size(), threads, [&](std::size_t i) {
        per[i] = method == train::GradientMethod::kAdjoint
                     ? adjoint_sample_gradient(circuit, ttn, survivors, theta, inputs[i], labels[i], chi)
                     : shift_sample_gradient(circuit, ttn, survivors, theta, inputs[i], labels[i], chi);
    });
    PseudoLossGradient out;
    out.gradient.assign(theta.size(), 0.0);
    const double inv = 1.0 / static_cast<double>(inputs.size());
    for (const auto &g : per) {
        out.loss += g.loss * inv;
        for (std::size_t p = 0; p < theta.size(); ++p) {
            out.gradient[p] += g.gradient[p] * inv;
        }
    }
    return out;
}

std::vector<circuit::EncodedSample> tni_subset(std::span<const circuit::EncodedSample> data, std::size_t size,
                                               std::uint64_t seed) {
    std::vector<std::size_t> order(data.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::mt19937_64 rng(seed);
    std::shuffle(order.begin(), order.end(), rng);
    order.resize(std::min(size, order.size()));
    std::vector<circuit::EncodedSample> out;
    out.reserve(order.size());
    for (auto i : order) {
        out.push_back(data[i]);
    }
    return out;
}

TniResult tni_pretrain(std::span<const circuit::EncodedSample> data, const circuit::Qcnn &model,
                       const TniConfig &config) {
    config.validate();
    if (data.empty()) {
        throw ConfigError("tni_pretrain: empty subset");
    }
    std::vector<MpsState> inputs;
    std::vector<int> labels;
    inputs.reserve(data.size());
    for (const auto &s : data) {
        if (s.num_qubits() != model.circuit.num_qubits()) {
            throw DimensionError("tni_pretrain: sample qubit count does not match the plan");
        }
        std::vector<Complex> amps(s.amplitudes.begin(), s.amplitudes.end());
        inputs.push_back(mps_from_vector(amps, config.chi_data));
        labels.push_back(s.label);
    }

    TniResult result{small_variance_init(model.num_parameters(), config.init_stddev, config.seed), {}};
    train::TrainConfig adam;
    adam.eta0 = config.learning_rate;
    adam.gamma = 1.0;
    adam.decay_steps = 1;
    auto opt = train::OptimizerState::fresh(model.num_parameters());

    // Batches walk a seeded permutation of the subset, reshuffled each pass.
    std::mt19937_64 rng(config.seed ^ 0x9e3779b97f4a7c15ULL);
    std::vector<std::size_t> order(data.size());
    std::size_t cursor = order.size();
    const std::size_t batch = std::min(config.batch_size, data.size());
    std::vector<MpsState> batch_inputs;
    std::vector<int> batch_labels;
    for (std::size_t it = 0; it < config.iterations; ++it) {
        batch_inputs.clear();
        batch_labels.clear();
        while (batch_inputs.size() < batch) {
            if (cursor == order.size()) {
                std::iota(order.begin(), order.end(), std::size_t{0});
                std::shuffle(order.begin(), order.end(), rng);
                cursor = 0;
            }
            batch_inputs.push_back(inputs[order[cursor]]);
            batch_labels.push_back(labels[order[cursor]]);
            ++cursor;
        }
        const auto g = pseudo_loss_gradient(model.circuit, model.survivors(), result.theta, batch_inputs,
                                            batch_labels, config.chi, config.gradient_method, config.threads);
        result.losses.push_back(g.loss);
        train::adam_step(opt, result.theta, g.gradient, adam);
    }
    return result;
}

} // namespace qcnn::tni
