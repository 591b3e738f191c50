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
#include <benchmark/benchmark.h>

#include <numbers>
#include <random>

#include "qcnn/circuit/executor.hpp"
#include "qcnn/circuit/qcnn_plan.hpp"
#include "qcnn/tni/mps.hpp"
#include "qcnn/train/gradient.hpp"

using namespace qcnn;

namespace {

std::vector<Complex> random_amplitudes(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    std::vector<Complex> v(std::size_t{1} << n);
    double norm = 0.0;
    for (auto &a : v) {
        a = {g(rng), g(rng)};
        norm += std::norm(a);
    }
    for (auto &a : v) {
        a /= std::sqrt(norm);
    }
    return v;
}

circuit::ParameterVector random_theta(std::size_t count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 2.0 * std::numbers::pi);
    std::vector<double> v(count);
    for (auto &x : v) {
        x = u(rng);
    }
    return circuit::ParameterVector(std::move(v));
}

void BM_RotationKernel(benchmark::State &state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    auto psi = sim::StateVector::from_amplitudes(random_amplitudes(n, 1));
    const auto op = sim::GateOp::ry(n / 2, 0.3);
    for (auto _ : state) {
        psi.apply(op);
        benchmark::DoNotOptimize(psi.amplitudes().data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(psi.dimension()));
}
BENCHMARK(BM_RotationKernel)->DenseRange(8, 14, 2);

void BM_CnotKernel(benchmark::State &state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    auto psi = sim::StateVector::from_amplitudes(random_amplitudes(n, 2));
    const auto op = sim::GateOp::cnot(0, n - 1);
    for (auto _ : state) {
        psi.apply(op);
        benchmark::DoNotOptimize(psi.amplitudes().data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(psi.dimension()));
}
BENCHMARK(BM_CnotKernel)->DenseRange(8, 14, 2);

void BM_AdjointGradient(benchmark::State &state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto model = circuit::build_qcnn(n, circuit::StageSchedule::standard(n));
    const auto theta = random_theta(model.num_parameters(), 3);
    const auto input = sim::StateVector::from_amplitudes(random_amplitudes(n, 4));
    const train::Readout ro{train::CostKind::kLocal, model.survivors()};
    for (auto _ : state) {
        benchmark::DoNotOptimize(train::adjoint_score_gradient(model.circuit, theta, input, ro));
    }
}
BENCHMARK(BM_AdjointGradient)->Arg(6)->Arg(8)->Arg(10)->Unit(benchmark::kMicrosecond);

void BM_ShiftGradient(benchmark::State &state) {
    const std::size_t n = 10;
    const auto model = circuit::build_qcnn(n, circuit::StageSchedule::standard(n));
    const auto theta = random_theta(model.num_parameters(), 3);
    const auto input = sim::StateVector::from_amplitudes(random_amplitudes(n, 4));
    const train::Readout ro{train::CostKind::kLocal, model.survivors()};
    for (auto _ : state) {
        benchmark::DoNotOptimize(train::shift_rule_score_gradient(model.circuit, theta, input, ro));
    }
}
BENCHMARK(BM_ShiftGradient)->Unit(benchmark::kMillisecond);

void BM_MpsFromVector(benchmark::State &state) {
    const auto chi = static_cast<std::size_t>(state.range(0));
    const auto amps = random_amplitudes(10, 5);
    for (auto _ : state) {
        benchmark::DoNotOptimize(tni::MpsState::from_vector(amps, chi));
    }
}
BENCHMARK(BM_MpsFromVector)->Arg(1)->Arg(4)->Arg(16)->Unit(benchmark::kMicrosecond);

void BM_NoisyForward(benchmark::State &state) {
    const std::size_t n = 10;
    const auto model = circuit::build_qcnn(n, circuit::StageSchedule::standard(n));
    const auto theta = random_theta(model.num_parameters(), 6);
    const auto input = sim::StateVector::from_amplitudes(random_amplitudes(n, 7));
    for (auto _ : state) {
        benchmark::DoNotOptimize(circuit::run_noisy(model.circuit, theta, input, 0.01));
    }
}
BENCHMARK(BM_NoisyForward)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
