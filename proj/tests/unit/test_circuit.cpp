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

#include <algorithm>
#include <numbers>
#include <random>
#include <set>

#include "qcnn/circuit/encoding.hpp"
#include "qcnn/circuit/executor.hpp"
#include "qcnn/circuit/qcnn_plan.hpp"
#include "test_util.hpp"

using namespace qcnn;
using namespace qcnn::circuit;
using testutil::C;
using testutil::Dense;

namespace {

constexpr double kPi = std::numbers::pi;

Dense dense4(const sim::Mat4 &m) {
    Dense d(4);
    d.a.assign(m.begin(), m.end());
    return d;
}

ParameterVector random_theta(std::size_t n, std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> u(0, 2 * kPi);
    std::vector<double> v(n);
    for (auto &x : v) {
        x = u(rng);
    }
    return ParameterVector(std::move(v));
}

/// Dense reference for a whole circuit: returns the final density matrix
/// over all qubits, with depolarizing Kraus sums after each block.
Dense dense_noisy(const Circuit &c, const ParameterVector &theta, const std::vector<C> &psi, double p) {
    const std::size_t n = c.num_qubits();
    Dense rho(psi.size());
    for (std::size_t i = 0; i < psi.size(); ++i) {
        for (std::size_t j = 0; j < psi.size(); ++j) {
            rho(i, j) = psi[i] * std::conj(psi[j]);
        }
    }
    auto gate = [&](const sim::GateOp &op) {
        switch (op.kind) {
        case sim::GateKind::kRX:
            return testutil::embed1(testutil::rx(bound_angle(op, theta)), n, op.qubits[0]);
        case sim::GateKind::kRY:
            return testutil::embed1(testutil::ry(bound_angle(op, theta)), n, op.qubits[0]);
        case sim::GateKind::kRZ:
            return testutil::embed1(testutil::rz(bound_angle(op, theta)), n, op.qubits[0]);
        case sim::GateKind::kCZ:
            return testutil::cz(n, op.qubits[0], op.qubits[1]);
        default:
            return testutil::cnot(n, op.qubits[0], op.qubits[1]);
        }
    };
    const auto ops = c.ops();
    const auto blocks = c.blocks();
    std::size_t next = 0;
    for (std::size_t i = 0; i < ops.size(); ++i) {
        const Dense u = gate(ops[i]);
        rho = testutil::mul(testutil::mul(u, rho), testutil::dagger(u));
        while (next < blocks.size() && blocks[next].end_op == i + 1) {
            for (auto q : blocks[next].qubits) {
                Dense out(rho.dim);
                for (std::size_t k = 0; k < rho.a.size(); ++k) {
                    out.a[k] = (1 - p) * rho.a[k];
                }
                for (const auto &pauli : {testutil::pauli_x(), testutil::pauli_y(), testutil::pauli_z()}) {
                    const Dense kq = testutil::embed1(pauli, n, q);
                    const Dense t = testutil::mul(testutil::mul(kq, rho), kq);
                    for (std::size_t k = 0; k < rho.a.size(); ++k) {
                        out.a[k] += (p / 3) * t.a[k];
                    }
                }
                rho = out;
            }
            ++next;
        }
    }
    return rho;
}

double dense_z(const Dense &rho, std::size_t n, std::size_t q) {
    double z = 0.0;
    for (std::size_t i = 0; i < rho.dim; ++i) {
        z += (((i >> (n - 1 - q)) & 1) ? -1.0 : 1.0) * rho(i, i).real();
    }
    return z;
}

} // namespace

TEST_CASE("amplitude encoding") {
    const std::vector<double> basis{1, 0, 0, 0};
    auto e = amplitude_encode(basis, 2);
    CHECK(e.amplitudes == std::vector<double>{1, 0, 0, 0});
    const std::vector<double> flat{1, 1, 1, 1};
    e = amplitude_encode(flat, 2, 1);
    for (double a : e.amplitudes) {
        CHECK(a == doctest::Approx(0.5));
    }
    CHECK(e.label == 1);

    std::vector<double> image(784);
    for (std::size_t i = 0; i < image.size(); ++i) {
        image[i] = static_cast<double>(i % 17) / 16.0;
    }
    e = amplitude_encode(image, 10);
    CHECK(e.amplitudes.size() == 1024);
    double norm = 0.0;
    for (double a : e.amplitudes) {
        norm += a * a;
    }
    CHECK(norm == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::all_of(e.amplitudes.begin() + 784, e.amplitudes.end(), [](double a) { return a == 0.0; }));
    CHECK(e.to_state().num_qubits() == 10);

    CHECK_THROWS_AS(amplitude_encode(std::vector<double>(4, 0.0), 2), ConfigError);
    CHECK_THROWS(amplitude_encode(std::vector<double>{1, -1}, 1));
    CHECK_THROWS(amplitude_encode(std::vector<double>(5, 1.0), 2));
}

TEST_CASE("conv block structure") {
    const auto ops = conv_block(2, 5, {7, 8, 9, 10});
    REQUIRE(ops.size() == 5);
    CHECK(ops[0].kind == sim::GateKind::kRX);
    CHECK(ops[0].qubits[0] == 2);
    CHECK(ops[0].symbol() == 7u);
    CHECK(ops[1].kind == sim::GateKind::kRX);
    CHECK(ops[1].qubits[0] == 5);
    CHECK(ops[2].kind == sim::GateKind::kCZ);
    CHECK(ops[3].kind == sim::GateKind::kRY);
    CHECK(ops[3].qubits[0] == 2);
    CHECK(ops[4].kind == sim::GateKind::kRY);
    CHECK(ops[4].symbol() == 10u);
    CHECK_THROWS(conv_block(1, 1, {0, 1, 2, 3}));

    const auto zero = two_qubit_unitary(conv_block(0, 1, {0, 1, 2, 3}), 0, 1, ParameterVector::zeros(4));
    CHECK(testutil::max_diff(dense4(zero), testutil::cz(2, 0, 1)) < 1e-12);

    std::mt19937_64 rng(1);
    for (int t = 0; t < 20; ++t) {
        const auto theta = random_theta(4, rng);
        const auto u = dense4(two_qubit_unitary(conv_block(0, 1, {0, 1, 2, 3}), 0, 1, theta));
        CHECK(testutil::max_diff(testutil::mul(testutil::dagger(u), u), Dense::identity(4)) < 1e-12);
        // RY layer * CZ * RX layer.
        const Dense ref = testutil::mul(
            testutil::kron(testutil::ry(theta[2]), testutil::ry(theta[3])),
            testutil::mul(testutil::cz(2, 0, 1), testutil::kron(testutil::rx(theta[0]), testutil::rx(theta[1]))));
        CHECK(testutil::max_diff(u, ref) < 1e-12);
    }
}

TEST_CASE("pool block matches the controlled-rotation product") {
    const auto pb = pool_block(0, 1, 0);
    CHECK(pb.discarded == 0);
    REQUIRE(pb.ops.size() == 3);
    CHECK(pb.ops[0].kind == sim::GateKind::kCNOT);
    CHECK(pb.ops[1].kind == sim::GateKind::kRY);
    CHECK(pb.ops[1].qubits[0] == 1);
    CHECK_THROWS(pool_block(3, 3, 0));

    const auto id = two_qubit_unitary(pb.ops, 0, 1, ParameterVector::zeros(1));
    CHECK(testutil::max_diff(dense4(id), Dense::identity(4)) < 1e-12);

    std::mt19937_64 rng(2);
    for (int t = 0; t < 100; ++t) {
        const auto theta = random_theta(1, rng);
        const auto u = dense4(two_qubit_unitary(pb.ops, 0, 1, theta));
        const Dense cx = testutil::cnot(2, 0, 1);
        const Dense ref =
            testutil::mul(cx, testutil::mul(testutil::kron(Dense::identity(2), testutil::ry(theta[0])), cx));
        CHECK(testutil::max_diff(u, ref) < 1e-12);
        // Control |0>: RY(theta) on the target; control |1>: RY(-theta).
        const Dense r0 = testutil::ry(theta[0]);
        const Dense r1 = testutil::ry(-theta[0]);
        for (std::size_t i = 0; i < 2; ++i) {
            for (std::size_t j = 0; j < 2; ++j) {
                CHECK(std::abs(u(i, j) - r0(i, j)) < 1e-12);
                CHECK(std::abs(u(2 + i, 2 + j) - r1(i, j)) < 1e-12);
                CHECK(std::abs(u(i, 2 + j)) < 1e-12);
            }
        }
    }
}

TEST_CASE("one-stage plan on four qubits") {
    const auto q = build_qcnn(4, StageSchedule{{2}, PoolSide::kTrailing});
    CHECK(q.num_parameters() == 9);
    const auto &st = q.plan.stages().at(0);
    CHECK(st.even.pairs == std::vector<std::array<std::size_t, 2>>{{0, 1}, {2, 3}});
    REQUIRE(st.offset.has_value());
    CHECK(st.offset->pairs == std::vector<std::array<std::size_t, 2>>{{1, 2}});
    REQUIRE(st.pools.size() == 2);
    CHECK(st.pools[0].control == 0);
    CHECK(st.pools[0].target == 1);
    CHECK(st.pools[1].control == 2);
    CHECK(st.pools[1].target == 3);
    CHECK(q.survivors() == std::vector<std::size_t>{1, 3});
}

TEST_CASE("two-qubit plan") {
    const auto q = build_qcnn(2, StageSchedule{{1}, PoolSide::kTrailing});
    CHECK(q.num_parameters() == 5);
    CHECK_FALSE(q.plan.stages()[0].offset.has_value());
    CHECK(q.survivors() == std::vector<std::size_t>{1});
    CHECK_THROWS(build_qcnn(1, StageSchedule{{1}, PoolSide::kTrailing}));
    CHECK_THROWS(build_qcnn(4, StageSchedule{{4}, PoolSide::kTrailing}));
    CHECK_THROWS(build_qcnn(4, StageSchedule{{2, 3}, PoolSide::kTrailing}));
}

TEST_CASE("reference plan has 45 parameters") {
    const auto q = build_qcnn(10, StageSchedule::standard(10));
    CHECK(q.num_parameters() == 45);
    CHECK(q.circuit.num_symbols() == 45);
    CHECK(q.plan.schedule().survivor_targets == std::vector<std::size_t>{9, 8, 7, 6, 5});
    CHECK(q.survivors() == std::vector<std::size_t>{0, 1, 2, 3, 9});
    CHECK(q.plan.sharing_map().size() == 45);
}

TEST_CASE("plan invariants") {
    for (std::size_t n : {2u, 3u, 5u, 8u, 10u, 12u}) {
        for (const auto &sched : {StageSchedule::standard(n), StageSchedule::halving(n, 1),
                                  StageSchedule::halving(n, 1, PoolSide::kLeading)}) {
            if (sched.survivor_targets.empty()) {
                continue;
            }
            const auto q = build_qcnn(n, sched);
            std::size_t prev = n;
            std::set<std::size_t> seen_symbols;
            for (const auto &st : q.plan.stages()) {
                CHECK(st.survivors.size() < prev);
                prev = st.survivors.size();
                std::set<std::size_t> used;
                for (const auto &pool : st.pools) {
                    CHECK(used.insert(pool.control).second);
                    CHECK(used.insert(pool.target).second);
                }
            }
            CHECK_FALSE(q.survivors().empty());
            // Weight tying: each block of a sub-layer uses the sub-layer's symbols.
            for (const auto &block : q.circuit.blocks()) {
                std::set<std::size_t> syms;
                for (std::size_t k = block.first_op; k < block.end_op; ++k) {
                    if (auto s = q.circuit.ops()[k].symbol()) {
                        syms.insert(*s);
                    }
                }
                CHECK((syms.size() == 4 || syms.size() == 1));
            }
            // No gate touches a qubit after it is discarded.
            for (const auto &d : q.circuit.discards()) {
                for (std::size_t k = d.after_op; k < q.circuit.size(); ++k) {
                    const auto &op = q.circuit.ops()[k];
                    for (std::size_t j = 0; j < op.arity(); ++j) {
                        CHECK(op.qubits[j] != d.qubit);
                    }
                }
            }
        }
    }
}

TEST_CASE("tied symbols act identically on every block of a layer") {
    const auto q = build_qcnn(8, StageSchedule{{4}, PoolSide::kTrailing});
    std::mt19937_64 rng(3);
    const auto theta = random_theta(q.num_parameters(), rng);
    const auto &even = q.plan.stages()[0].even;
    std::vector<sim::Mat4> mats;
    for (const auto &block : q.circuit.blocks()) {
        if (block.stage == 0 && block.kind == BlockKind::kConv &&
            std::find(even.pairs.begin(), even.pairs.end(), block.qubits) != even.pairs.end()) {
            mats.push_back(two_qubit_unitary(q.circuit.ops().subspan(block.first_op, block.end_op - block.first_op),
                                             block.qubits[0], block.qubits[1], theta));
        }
    }
    REQUIRE(mats.size() == 4);
    for (const auto &m : mats) {
        CHECK(sim::max_abs_diff(m, mats[0]) == 0.0);
    }
}

TEST_CASE("plan JSON round trip") {
    const auto q = build_qcnn(10, StageSchedule::standard(10));
    const auto text = q.plan.to_json();
    const auto back = QcnnPlan::from_json(text);
    CHECK(back.total_parameters() == 45);
    CHECK(back.schedule() == q.plan.schedule());
    CHECK(back.to_json() == text);
    CHECK_THROWS(QcnnPlan::from_json("{"));
}

TEST_CASE("bind and run") {
    Circuit empty(2);
    const auto in = amplitude_encode(std::vector<double>{1, 2, 3, 4}, 2);
    const auto out = std::get<sim::StateVector>(bind_and_run(empty, ParameterVector{}, in, {}));
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(out[i] == C(in.amplitudes[i]));
    }

    Circuit flip(1, 1);
    flip.append(sim::GateOp::rx(0, sim::SymbolRef{0}));
    const auto one = std::get<sim::StateVector>(
        bind_and_run(flip, ParameterVector({kPi}), amplitude_encode(std::vector<double>{1}, 1), {}));
    CHECK(std::abs(one[1]) == doctest::Approx(1.0));
    CHECK_THROWS_AS(bind_and_run(flip, ParameterVector({1.0, 2.0}), sim::StateVector::zero(1), {}),
                    DimensionError);
}

TEST_CASE("noisy path agrees with a dense Kraus simulation") {
    std::mt19937_64 rng(4);
    const auto q = build_qcnn(4, StageSchedule{{3, 2}, PoolSide::kTrailing});
    for (double p : {0.0, 0.01, 0.2}) {
        const auto theta = random_theta(q.num_parameters(), rng);
        const auto psi = testutil::random_state(4, rng);
        const auto mixed = run_noisy(q.circuit, theta, sim::StateVector::from_amplitudes(psi), p);
        const Dense ref = dense_noisy(q.circuit, theta, psi, p);
        CHECK(std::abs(mixed.rho.trace() - 1.0) < 1e-12);
        for (auto s : q.survivors()) {
            CHECK(std::abs(sim::expectation_z(mixed.rho, mixed.local_index(s)) - dense_z(ref, 4, s)) < 1e-12);
        }
        if (p == 0.0) {
            const auto pure = run_pure(q.circuit, theta, sim::StateVector::from_amplitudes(psi));
            for (auto s : q.survivors()) {
                CHECK(std::abs(sim::expectation_z(mixed.rho, mixed.local_index(s)) - sim::expectation_z(pure, s)) <
                      1e-10);
            }
        }
    }
}
