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
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "qcnn/circuit/encoding.hpp"
#include "qcnn/circuit/executor.hpp"
#include "qcnn/tni/mps.hpp"
#include "qcnn/tni/pretrain.hpp"
#include "qcnn/tni/ttn.hpp"
#include "qcnn/train/cost.hpp"
#include "test_util.hpp"

using namespace qcnn;
using namespace qcnn::tni;
using circuit::ParameterVector;
using testutil::C;

namespace {

constexpr double kPi = std::numbers::pi;

ParameterVector random_theta(std::size_t n, std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> u(0, 2 * kPi);
    std::vector<double> v(n);
    for (auto &x : v) {
        x = u(rng);
    }
    return ParameterVector(std::move(v));
}

double fidelity(const std::vector<C> &a, const std::vector<C> &b) {
    C acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        acc += std::conj(a[i]) * b[i];
    }
    return std::norm(acc);
}

std::vector<Complex> basis_amps(std::size_t n, std::size_t index) {
    std::vector<Complex> v(std::size_t{1} << n);
    v[index] = 1.0;
    return v;
}

} // namespace

TEST_CASE("product state compresses to bond one") {
    const auto amps = basis_amps(4, 0b0101);
    const auto mps = mps_from_vector(amps, 1);
    CHECK(mps.max_bond() == 1);
    CHECK(testutil::max_diff(mps.to_vector(), amps) < 1e-15);
    CHECK(mps.expectation_z(1) == doctest::Approx(-1.0));
    CHECK(mps.expectation_z(2) == doctest::Approx(1.0));
    CHECK_THROWS(mps_from_vector(std::vector<Complex>(8, 0.0), 4));
}

TEST_CASE("full-rank cap reconstructs exactly") {
    std::mt19937_64 rng(1);
    const auto psi = testutil::random_state(8, rng);
    const auto mps = mps_from_vector(psi, 16);
    CHECK(mps.max_bond() <= 16);
    CHECK(reconstruction_error(mps, psi) < 1e-10);
    CHECK(testutil::max_diff(mps.to_vector(), psi) < 1e-10);
}

TEST_CASE("Bell pair at bond one is the best product approximation") {
    const double h = 1.0 / std::sqrt(2.0);
    const std::vector<C> bell{h, 0, 0, h};
    const auto mps = mps_from_vector(bell, 1);
    CHECK(mps.norm() == doctest::Approx(1.0).epsilon(1e-10));
    const double f = fidelity(mps.to_vector(), bell);
    CHECK(f <= 0.5 + 1e-10);
    // Exhaustive search over product states on a Bloch-angle grid.
    double best = 0.0;
    const int steps = 24;
    for (int a = 0; a <= steps; ++a) {
        for (int pa = 0; pa < steps; ++pa) {
            for (int b = 0; b <= steps; ++b) {
                for (int pb = 0; pb < steps; ++pb) {
                    const double ta = kPi * a / steps;
                    const double tb = kPi * b / steps;
                    const C a0 = std::cos(ta / 2), a1 = std::polar(std::sin(ta / 2), 2 * kPi * pa / steps);
                    const C b0 = std::cos(tb / 2), b1 = std::polar(std::sin(tb / 2), 2 * kPi * pb / steps);
                    best = std::max(best, fidelity({a0 * b0, a0 * b1, a1 * b0, a1 * b1}, bell));
                }
            }
        }
    }
    CHECK(best <= 0.5 + 1e-10);
    CHECK(f == doctest::Approx(best).epsilon(1e-9));
}

TEST_CASE("reconstruction error is non-increasing in the bond cap") {
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 5; ++trial) {
        const auto psi = testutil::random_state(8, rng);
        double prev = 2.0;
        for (std::size_t chi = 1; chi <= 16; ++chi) {
            const auto mps = mps_from_vector(psi, chi);
            CHECK(mps.norm() == doctest::Approx(1.0).epsilon(1e-10));
            const double err = reconstruction_error(mps, psi);
            CHECK(err <= prev + 1e-12);
            prev = err;
        }
        CHECK(prev < 1e-10);
    }
}

TEST_CASE("TTN nodes mirror the plan's blocks") {
    const auto q = circuit::build_qcnn(10, circuit::StageSchedule::standard(10));
    const auto ttn = ttn_from_plan(q.plan, ParameterVector::zeros(q.num_parameters()));
    CHECK(ttn.nodes().size() == q.plan.block_count());
    CHECK(ttn.nodes().size() == q.circuit.blocks().size());
    const auto cz = sim::two_qubit_matrix(sim::GateKind::kCZ);
    for (const auto &node : ttn.nodes()) {
        if (node.kind == circuit::BlockKind::kConv) {
            CHECK(sim::max_abs_diff(node.unitary, cz) < 1e-12);
        } else {
            CHECK(sim::max_abs_diff(node.unitary, sim::identity4()) < 1e-12);
        }
    }
    std::mt19937_64 rng(3);
    const auto theta = random_theta(q.num_parameters(), rng);
    const auto t2 = ttn_from_plan(q.plan, theta);
    for (const auto &node : t2.nodes()) {
        const auto ref = circuit::two_qubit_unitary(
            q.circuit.ops().subspan(node.first_op, node.end_op - node.first_op), node.qubits[0], node.qubits[1], theta);
        CHECK(sim::max_abs_diff(node.unitary, ref) < 1e-12);
    }
    CHECK_THROWS(ttn_from_plan(q.plan, ParameterVector::zeros(3)));
}

TEST_CASE("identity TTN scores basis states") {
    const auto q = circuit::build_qcnn(6, circuit::StageSchedule::standard(6));
    const auto ttn = ttn_from_plan(q.plan, ParameterVector::zeros(q.num_parameters()));
    CHECK(contract_and_score(ttn, mps_from_vector(basis_amps(6, 0), 1), q.survivors()) ==
          doctest::Approx(0.0));
    CHECK(contract_and_score(ttn, mps_from_vector(basis_amps(6, 63), 1), q.survivors()) ==
          doctest::Approx(1.0));
}

TEST_CASE("TTN contraction matches the simulator") {
    std::mt19937_64 rng(4);
    std::uniform_int_distribution<std::size_t> nq(2, 6);
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = nq(rng);
        const auto sched = trial % 2 ? circuit::StageSchedule::standard(n)
                                     : circuit::StageSchedule::halving(n, 1, circuit::PoolSide::kLeading);
        const auto q = circuit::build_qcnn(n, sched);
        const auto theta = random_theta(q.num_parameters(), rng);
        const auto psi = testutil::random_state(n, rng);
        const double sim_score = train::readout(
            circuit::run_pure(q.circuit, theta, sim::StateVector::from_amplitudes(psi)), q.survivors(),
            train::CostKind::kLocal);
        const double ttn_score =
            contract_and_score(ttn_from_plan(q.plan, theta), mps_from_vector(psi, 64), q.survivors(), 64);
        worst = std::max(worst, std::abs(sim_score - ttn_score));
    }
    CHECK(worst < 1e-8);
}

TEST_CASE("pseudo-loss values") {
    CHECK(pseudo_loss(0.5, 0) == doctest::Approx(std::log(2.0)));
    CHECK(pseudo_loss(0.5, 1) == doctest::Approx(std::log(2.0)));
    CHECK(pseudo_loss(1.0 - 1e-12, 1) < 2e-7);
    CHECK(pseudo_loss(0.9, 0) == doctest::Approx(-std::log(0.1)).epsilon(1e-12));
    CHECK(std::isfinite(pseudo_loss(0.0, 1)));
    CHECK(pseudo_loss(0.0, 1) == doctest::Approx(-std::log(kScoreClamp)));
    CHECK(pseudo_loss_derivative(0.0, 1) == 0.0);
    CHECK(pseudo_loss_derivative(0.25, 1) == doctest::Approx(-4.0));
    CHECK(pseudo_loss_derivative(0.25, 0) == doctest::Approx(1.0 / 0.75));
}

TEST_CASE("pseudo-loss gradient against finite differences") {
    std::mt19937_64 rng(5);
    const auto q = circuit::build_qcnn(6, circuit::StageSchedule::standard(6));
    std::vector<MpsState> inputs;
    std::vector<int> labels;
    for (int i = 0; i < 4; ++i) {
        inputs.push_back(mps_from_vector(testutil::random_state(6, rng), 64));
        labels.push_back(i % 2);
    }
    const auto theta = random_theta(q.num_parameters(), rng);
    const auto adj = pseudo_loss_gradient(q.circuit, q.survivors(), theta, inputs, labels, 64);
    const auto shift = pseudo_loss_gradient(q.circuit, q.survivors(), theta, inputs, labels, 64,
                                            train::GradientMethod::kParameterShift);
    CHECK(adj.loss == doctest::Approx(shift.loss).epsilon(1e-12));
    auto loss_at = [&](const ParameterVector &t) {
        double l = 0.0;
        const auto ttn = ttn_from_plan(q.plan, t);
        for (std::size_t i = 0; i < inputs.size(); ++i) {
            l += pseudo_loss(contract_and_score(ttn, inputs[i], q.survivors(), 64), labels[i]);
        }
        return l / static_cast<double>(inputs.size());
    };
    CHECK(adj.loss == doctest::Approx(loss_at(theta)).epsilon(1e-12));
    for (std::size_t mu = 0; mu < theta.size(); ++mu) {
        auto up = theta;
        auto down = theta;
        up[mu] += 1e-5;
        down[mu] -= 1e-5;
        const double fd = (loss_at(up) - loss_at(down)) / 2e-5;
        CHECK(std::abs(adj.gradient[mu] - fd) / std::max(std::abs(fd), 1e-3) < 1e-4);
        CHECK(std::abs(adj.gradient[mu] - shift.gradient[mu]) < 1e-10);
    }
    const auto threaded = pseudo_loss_gradient(q.circuit, q.survivors(), theta, inputs, labels, 64,
                                               train::GradientMethod::kAdjoint, 3);
    CHECK(threaded.gradient == adj.gradient);
}

TEST_CASE("small-variance initialization") {
    const auto th = small_variance_init(10000, 0.1, 42);
    double mean = 0.0;
    for (double x : th.values()) {
        mean += x;
    }
    mean /= 10000.0;
    double var = 0.0;
    for (double x : th.values()) {
        var += (x - mean) * (x - mean);
    }
    const double sd = std::sqrt(var / 9999.0);
    CHECK(sd > 0.08);
    CHECK(sd < 0.12);
    CHECK(small_variance_init(10000, 0.1, 42) == th);
    CHECK_FALSE(small_variance_init(10000, 0.1, 43) == th);
}

TEST_CASE("TNI pre-training contract") {
    std::mt19937_64 rng(6);
    const auto q = circuit::build_qcnn(4, circuit::StageSchedule::standard(4));
    std::vector<circuit::EncodedSample> data;
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 24; ++i) {
        std::vector<double> px(16);
        for (std::size_t k = 0; k < 16; ++k) {
            px[k] = u(rng) + (i % 2 && k >= 8 ? 2.0 : 0.0);
        }
        data.push_back(circuit::amplitude_encode(px, 4, i % 2));
    }
    TniConfig cfg;
    cfg.iterations = 30;
    cfg.batch_size = 8;
    cfg.learning_rate = 0.05;
    cfg.seed = 9;
    const auto a = tni_pretrain(data, q, cfg);
    CHECK(a.theta.size() == q.num_parameters());
    CHECK(a.losses.size() == 30);
    CHECK(a.losses.back() < a.losses.front());
    const auto b = tni_pretrain(data, q, cfg);
    CHECK(a.theta == b.theta);
    CHECK(a.losses == b.losses);
    CHECK_THROWS_AS(tni_pretrain(std::vector<circuit::EncodedSample>{}, q, cfg), ConfigError);
    cfg.chi = 0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);

    TniConfig defaults;
    CHECK(defaults.chi == 16);
    CHECK(defaults.chi_data == 1);
    CHECK(defaults.iterations == 50);
    CHECK(defaults.subset_size == 128);
    CHECK(defaults.init_stddev == 0.1);
    CHECK(defaults.to_tags().at("tni.chi") == "16");

    const auto sub = tni_subset(data, 10, 3);
    CHECK(sub.size() == 10);
    const auto sub2 = tni_subset(data, 10, 3);
    for (std::size_t i = 0; i < sub.size(); ++i) {
        CHECK(sub[i].amplitudes == sub2[i].amplitudes);
    }
    CHECK(tni_subset(data, 100, 3).size() == data.size());
}
