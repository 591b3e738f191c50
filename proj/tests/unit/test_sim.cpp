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

#include <numbers>
#include <random>

#include "qcnn/sim/density_matrix.hpp"
#include "qcnn/sim/state_vector.hpp"
#include "test_util.hpp"

using namespace qcnn;
using namespace qcnn::sim;
using testutil::C;
using testutil::Dense;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<C> amps_of(const StateVector &s) { return {s.amplitudes().begin(), s.amplitudes().end()}; }

StateVector state_of(std::vector<C> v) { return StateVector::from_amplitudes(std::move(v)); }

DensityMatrix density_of(const Dense &m, std::size_t n) { return DensityMatrix::from_elements(n, m.a); }

Dense dense_of(const DensityMatrix &rho) {
    Dense m(rho.dimension());
    m.a.assign(rho.elements().begin(), rho.elements().end());
    return m;
}

Dense oracle_of(const GateOp &op, std::size_t n, double angle) {
    switch (op.kind) {
    case GateKind::kRX:
        return testutil::embed1(testutil::rx(angle), n, op.qubits[0]);
    case GateKind::kRY:
        return testutil::embed1(testutil::ry(angle), n, op.qubits[0]);
    case GateKind::kRZ:
        return testutil::embed1(testutil::rz(angle), n, op.qubits[0]);
    case GateKind::kCZ:
        return testutil::cz(n, op.qubits[0], op.qubits[1]);
    default:
        return testutil::cnot(n, op.qubits[0], op.qubits[1]);
    }
}

GateOp random_op(std::size_t n, std::mt19937_64 &rng) {
    std::uniform_int_distribution<int> kind(0, 4);
    std::uniform_int_distribution<std::size_t> qubit(0, n - 1);
    const std::size_t a = qubit(rng);
    std::size_t b = qubit(rng);
    while (b == a) {
        b = qubit(rng);
    }
    switch (kind(rng)) {
    case 0:
        return GateOp::rx(a, SymbolRef{0});
    case 1:
        return GateOp::ry(a, SymbolRef{0});
    case 2:
        return GateOp::rz(a, SymbolRef{0});
    case 3:
        return GateOp::cz(a, b);
    default:
        return GateOp::cnot(a, b);
    }
}

/// Single-qubit depolarizing oracle written straight from the Kraus sum.
Dense depolarize_oracle(const Dense &rho, std::size_t n, std::size_t q, double p) {
    Dense out(rho.dim);
    for (std::size_t i = 0; i < out.a.size(); ++i) {
        out.a[i] = (1.0 - p) * rho.a[i];
    }
    for (const auto &pauli : {testutil::pauli_x(), testutil::pauli_y(), testutil::pauli_z()}) {
        const Dense k = testutil::embed1(pauli, n, q);
        const Dense term = testutil::mul(testutil::mul(k, rho), testutil::dagger(k));
        for (std::size_t i = 0; i < out.a.size(); ++i) {
            out.a[i] += (p / 3.0) * term.a[i];
        }
    }
    return out;
}

} // namespace

TEST_CASE("zero state") {
    auto s1 = StateVector::zero(1);
    CHECK(s1[0] == C(1.0));
    CHECK(s1[1] == C(0.0));
    auto s2 = StateVector::zero(2);
    CHECK(amps_of(s2) == std::vector<C>{1.0, 0.0, 0.0, 0.0});
    auto s10 = StateVector::zero(10);
    CHECK(s10.dimension() == 1024);
    CHECK(s10.norm() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(StateVector::zero(0), ConfigError);
    CHECK_THROWS_AS(StateVector::zero(kMaxQubits + 1), ConfigError);
}

TEST_CASE("from_amplitudes rejects bad input") {
    CHECK_THROWS(StateVector::from_amplitudes({1.0, 0.0, 0.0}));
    CHECK_THROWS(StateVector::from_amplitudes({1.0, 1.0}));
}

TEST_CASE("gate examples") {
    auto s = apply_gate(StateVector::zero(1), GateOp::rx(0, SymbolRef{0}), kPi);
    CHECK(std::abs(s[0]) < 1e-15);
    CHECK(std::abs(s[1] - C(0, -1)) < 1e-15);

    auto s11 = state_of({0, 0, 0, 1});
    s11.apply(GateOp::cz(0, 1));
    CHECK(std::abs(s11[3] + 1.0) < 1e-15);

    const double theta = 0.731;
    auto z = apply_gate(StateVector::zero(1), GateOp::rz(0, SymbolRef{0}), theta);
    CHECK(std::abs(z[0] - std::polar(1.0, -theta / 2)) < 1e-15);
    CHECK(std::abs(z[1]) < 1e-15);
}

TEST_CASE("qubit 0 is the most significant bit") {
    auto s = apply_gate(StateVector::zero(3), GateOp::rx(0, SymbolRef{0}), kPi);
    CHECK(std::abs(s[0b100]) == doctest::Approx(1.0));
    auto t = apply_gate(StateVector::zero(3), GateOp::rx(2, SymbolRef{0}), kPi);
    CHECK(std::abs(t[0b001]) == doctest::Approx(1.0));
    CHECK(bit_position(3, 0) == 2);
}

TEST_CASE("gate argument errors") {
    auto s = StateVector::zero(2);
    CHECK_THROWS_AS(s.apply(GateOp::rx(0, SymbolRef{0})), ConfigError);
    CHECK_THROWS_AS(GateOp::rx(0, {}).validate(), ConfigError);
    CHECK_THROWS(s.apply(GateOp::rx(2, SymbolRef{0}), 0.1));
    CHECK_THROWS(s.apply(GateOp::cz(0, 2)));
    CHECK_THROWS(GateOp::cz(1, 1).validate());
    CHECK_THROWS(GateOp{GateKind::kCZ, {0, 1}, 0.3}.validate());
}

TEST_CASE("kernels match dense matrices") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> angle(-2 * kPi, 2 * kPi);
    const std::size_t n = 4;
    for (int trial = 0; trial < 200; ++trial) {
        const auto op = random_op(n, rng);
        const double t = angle(rng);
        const auto psi = testutil::random_state(n, rng);
        auto s = state_of(psi);
        s.apply(op, is_rotation(op.kind) ? std::optional<double>(t) : std::nullopt);
        CHECK(testutil::max_diff(amps_of(s), testutil::apply(oracle_of(op, n, t), psi)) < 1e-12);

        auto back = s;
        kernels::apply_gate_inverse(back.mutable_amplitudes(), n, op,
                                    is_rotation(op.kind) ? std::optional<double>(t) : std::nullopt);
        CHECK(testutil::max_diff(amps_of(back), psi) < 1e-12);
    }
}

TEST_CASE("gate matrices are unitary") {
    for (auto kind : {GateKind::kRX, GateKind::kRY, GateKind::kRZ}) {
        for (double t : {0.0, 0.3, 1.7, -2.9, 6.1}) {
            const auto u = rotation_matrix(kind, t);
            CHECK(max_abs_diff(matmul(adjoint(u), u), identity2()) < 1e-12);
        }
    }
    for (auto kind : {GateKind::kCZ, GateKind::kCNOT}) {
        const auto u = two_qubit_matrix(kind);
        CHECK(max_abs_diff(matmul(adjoint(u), u), identity4()) < 1e-12);
    }
}

TEST_CASE("norm preservation over random circuits") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> angle(0, 2 * kPi);
    for (std::size_t n : {3u, 7u, 12u}) {
        auto s = state_of(testutil::random_state(n, rng));
        for (int g = 0; g < 200; ++g) {
            const auto op = random_op(n, rng);
            s.apply(op, is_rotation(op.kind) ? std::optional<double>(angle(rng)) : std::nullopt);
        }
        CHECK(std::abs(s.norm() - 1.0) < 1e-9);
    }
}

TEST_CASE("expectation_z examples") {
    CHECK(expectation_z(StateVector::zero(1), 0) == doctest::Approx(1.0));
    CHECK(expectation_z(state_of({0, 1}), 0) == doctest::Approx(-1.0));
    auto eq = apply_gate(StateVector::zero(1), GateOp::ry(0, SymbolRef{0}), kPi / 2);
    CHECK(std::abs(expectation_z(eq, 0)) < 1e-12);
    CHECK_THROWS(expectation_z(StateVector::zero(2), 2));
}

TEST_CASE("expectation_z matches sign-weighted sum") {
    std::mt19937_64 rng(3);
    const std::size_t n = 5;
    const auto psi = testutil::random_state(n, rng);
    const auto s = state_of(psi);
    for (std::size_t q = 0; q < n; ++q) {
        double ref = 0.0;
        for (std::size_t i = 0; i < psi.size(); ++i) {
            ref += (((i >> (n - 1 - q)) & 1) ? -1.0 : 1.0) * std::norm(psi[i]);
        }
        CHECK(expectation_z(s, q) == doctest::Approx(ref).epsilon(1e-12));
    }
}

TEST_CASE("global projector examples") {
    const std::vector<std::size_t> all{0, 1, 2};
    CHECK(expectation_global_projector(StateVector::zero(3), all) == doctest::Approx(1.0));
    const std::vector<std::size_t> one{0};
    CHECK(expectation_global_projector(state_of({0, 1}), one) == doctest::Approx(0.0));
    auto plus = StateVector::zero(3);
    for (std::size_t q = 0; q < 3; ++q) {
        plus.apply(GateOp::ry(q, SymbolRef{0}), kPi / 2);
    }
    CHECK(expectation_global_projector(plus, all) == doctest::Approx(0.125).epsilon(1e-12));
    const std::vector<std::size_t> two{0, 2};
    CHECK(expectation_global_projector(plus, two) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK_THROWS(expectation_global_projector(plus, std::vector<std::size_t>{}));
}

TEST_CASE("to_density") {
    const auto z = to_density(StateVector::zero(1));
    CHECK(z(0, 0) == C(1.0));
    CHECK(z(1, 1) == C(0.0));
    const double h = 1.0 / std::sqrt(2.0);
    const auto plus = to_density(state_of({h, h}));
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(std::abs(plus.elements()[i] - 0.5) < 1e-15);
    }
    std::mt19937_64 rng(2);
    const auto rho = to_density(state_of(testutil::random_state(4, rng)));
    CHECK(rho.purity() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(std::abs(rho.trace() - 1.0) < 1e-12);
}

TEST_CASE("depolarizing examples") {
    std::mt19937_64 rng(8);
    const auto rho1 = density_of(testutil::random_density(1, rng), 1);
    const auto same = apply_depolarizing(rho1, 0, 0.0);
    CHECK(testutil::max_diff(dense_of(same), dense_of(rho1)) == 0.0);

    const auto mixed = apply_depolarizing(rho1, 0, 0.75);
    CHECK(testutil::max_diff(dense_of(mixed), testutil::mat2(0.5, 0, 0, 0.5)) < 1e-15);

    const auto z = apply_depolarizing(to_density(StateVector::zero(1)), 0, 0.01);
    CHECK(z(0, 0).real() == doctest::Approx(1.0 - 0.02 / 3.0).epsilon(1e-14));
    CHECK(z(1, 1).real() == doctest::Approx(0.02 / 3.0).epsilon(1e-14));
    CHECK(std::abs(z(0, 1)) == 0.0);

    CHECK_THROWS_AS(apply_depolarizing(rho1, 0, 0.8), ConfigError);
    CHECK_THROWS_AS(apply_depolarizing(rho1, 0, -0.1), ConfigError);
    CHECK_THROWS_AS((NoiseConfig{1.0, true}.validate()), ConfigError);
}

TEST_CASE("depolarizing matches the Kraus sum on multi-qubit states") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> pd(0.0, 0.75);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 3;
        const auto rho = testutil::random_density(n, rng);
        const std::size_t q = trial % n;
        const double p = pd(rng);
        const auto got = apply_depolarizing(density_of(rho, n), q, p);
        CHECK(testutil::max_diff(dense_of(got), depolarize_oracle(rho, n, q, p)) < 1e-14);
    }
}

TEST_CASE("depolarizing channel is CPTP on random inputs") {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> pd(0.0, 0.75);
    double worst_trace = 0.0;
    double worst_eig = 1.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const auto out = apply_depolarizing(density_of(testutil::random_density(1, rng), 1), 0, pd(rng));
        worst_trace = std::max(worst_trace, std::abs(out.trace() - 1.0));
        worst_eig = std::min(worst_eig, min_eigenvalue(out));
        CHECK(out.hermiticity_error() < 1e-15);
    }
    CHECK(worst_trace < 1e-12);
    CHECK(worst_eig >= -1e-10);
}

TEST_CASE("partial trace") {
    const double h = 1.0 / std::sqrt(2.0);
    const auto bell = to_density(state_of({h, 0, 0, h}));
    const std::vector<std::size_t> zero{0};
    const auto red = partial_trace(bell, zero);
    CHECK(testutil::max_diff(dense_of(red), testutil::mat2(0.5, 0, 0, 0.5)) < 1e-15);

    std::mt19937_64 rng(6);
    const auto a = testutil::random_density(2, rng);
    const auto b = testutil::random_density(1, rng);
    const auto ab = density_of(testutil::kron(a, b), 3);
    const std::vector<std::size_t> drop_b{2};
    CHECK(testutil::max_diff(dense_of(partial_trace(ab, drop_b)), a) < 1e-14);
    const std::vector<std::size_t> drop_a{0, 1};
    CHECK(testutil::max_diff(dense_of(partial_trace(ab, drop_a)), b) < 1e-14);

    const auto big = density_of(testutil::random_density(4, rng), 4);
    const std::vector<std::size_t> mid{1, 2};
    const auto r = partial_trace(big, mid);
    CHECK(r.num_qubits() == 2);
    CHECK(std::abs(r.trace() - 1.0) < 1e-12);
    // Direct sum over the discarded indices.
    Dense ref(4);
    const auto full = dense_of(big);
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
            for (std::size_t k = 0; k < 4; ++k) {
                const std::size_t row = ((i >> 1) << 3) | (k << 1) | (i & 1);
                const std::size_t col = ((j >> 1) << 3) | (k << 1) | (j & 1);
                ref(i, j) += full(row, col);
            }
        }
    }
    CHECK(testutil::max_diff(dense_of(r), ref) < 1e-14);

    const std::vector<std::size_t> everything{0, 1};
    CHECK_THROWS(partial_trace(bell, everything));
}

TEST_CASE("deferred trace keeps survivor expectations") {
    std::mt19937_64 rng(9);
    const std::size_t n = 5;
    const auto s = state_of(testutil::random_state(n, rng));
    const std::vector<std::size_t> discard{1, 3};
    const auto reduced = partial_trace(to_density(s), discard);
    const std::size_t kept[] = {0, 2, 4};
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(std::abs(expectation_z(s, kept[i]) - expectation_z(reduced, i)) < 1e-10);
    }
}

TEST_CASE("density path agrees with the pure path without noise") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> angle(0, 2 * kPi);
    const std::size_t n = 4;
    auto s = state_of(testutil::random_state(n, rng));
    auto rho = to_density(s);
    for (int g = 0; g < 60; ++g) {
        const auto op = random_op(n, rng);
        const auto t = is_rotation(op.kind) ? std::optional<double>(angle(rng)) : std::nullopt;
        s.apply(op, t);
        rho.apply(op, t);
    }
    CHECK(testutil::max_diff(dense_of(rho), dense_of(to_density(s))) < 1e-10);
    for (std::size_t q = 0; q < n; ++q) {
        CHECK(std::abs(expectation_z(rho, q) - expectation_z(s, q)) < 1e-10);
    }
    const std::vector<std::size_t> all{0, 1, 2, 3};
    CHECK(std::abs(expectation_global_projector(rho, all) - expectation_global_projector(s, all)) < 1e-10);
}

TEST_CASE("density matrix validation") {
    CHECK_THROWS(DensityMatrix::from_elements(1, {1.0, 0.0, 0.0, 1.0}));
    CHECK_THROWS(DensityMatrix::from_elements(1, {1.0, 0.5, 0.0, 0.0}));
    CHECK_NOTHROW(DensityMatrix::from_elements(1, {0.5, 0.0, 0.0, 0.5}));
}
