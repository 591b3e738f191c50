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
 * Staged QCNN architecture: brick-layer convolution, pooling and the
 * active-qubit bookkeeping that ties them together.
 *
 * Each stage runs an even conv sub-layer on pairs (a0,a1),(a2,a3),... of the
 * active list, an offset sub-layer on (a1,a2),(a3,a4),..., then pools
 * `active - target` of the even pairs. Within a pair the lower-index qubit
 * is the control and is discarded. Every sub-layer is weight-tied: all of its
 * blocks share 4 conv symbols (or 1 pool symbol). An empty offset sub-layer
 * (two active qubits) has no symbols.
 */
#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qcnn/circuit/circuit.hpp"

namespace qcnn::circuit {

/// Which even pairs a partial pool layer uses when it pools fewer than all.
enum class PoolSide { kLeading, kTrailing };

std::string_view to_string(PoolSide side);
PoolSide pool_side_from_string(std::string_view name);

/// Survivor count after each stage.
struct StageSchedule {
    std::vector<std::size_t> survivor_targets;
    PoolSide side = PoolSide::kTrailing;

    /// ceil(a / 2) per stage until `terminal` survivors remain.
    static StageSchedule halving(std::size_t num_qubits, std::size_t terminal = 1,
                                 PoolSide side = PoolSide::kTrailing);
    /// One pooled pair per stage until `terminal` survivors remain.
    static StageSchedule one_pair_per_stage(std::size_t num_qubits, std::size_t terminal,
                                            PoolSide side = PoolSide::kTrailing);
    /// One pair per stage down to ceil(n / 2) survivors. For n = 10 this is
    /// the 45-parameter reference architecture (10 -> 9 -> 8 -> 7 -> 6 -> 5).
    static StageSchedule standard(std::size_t num_qubits);

    friend bool operator==(const StageSchedule &, const StageSchedule &) = default;
};

struct ConvSubLayer {
    std::vector<std::array<std::size_t, 2>> pairs;
    std::array<std::size_t, 4> symbols{};
};

struct PoolPair {
    std::size_t control;
    std::size_t target;
};

struct Stage {
    std::vector<std::size_t> active;
    ConvSubLayer even;
    std::optional<ConvSubLayer> offset;
    std::vector<PoolPair> pools;
    std::size_t pool_symbol = 0;
    std::vector<std::size_t> survivors;
};

class QcnnPlan {
  public:
    QcnnPlan(std::size_t num_qubits, StageSchedule schedule, std::vector<Stage> stages);

    std::size_t num_qubits() const { return num_qubits_; }
    const StageSchedule &schedule() const { return schedule_; }
    const std::vector<Stage> &stages() const { return stages_; }
    std::size_t total_parameters() const { return total_parameters_; }
    /// Qubits still active after the last stage.
    const std::vector<std::size_t> &survivors() const { return stages_.back().survivors; }
    std::size_t block_count() const;

    /// Human-readable role of every symbol, e.g. "stage0/even/rx_a".
    std::vector<std::string> sharing_map() const;

    Circuit compile() const;

    std::string to_json() const;
    /// Rebuilds from the stored schedule and checks the stored layout agrees.
    static QcnnPlan from_json(std::string_view text);

  private:
    std::size_t num_qubits_;
    StageSchedule schedule_;
    std::vector<Stage> stages_;
    std::size_t total_parameters_ = 0;
};

/// A plan together with its compiled circuit.
struct Qcnn {
    QcnnPlan plan;
    Circuit circuit;

    const std::vector<std::size_t> &survivors() const { return plan.survivors(); }
    std::size_t num_parameters() const { return plan.total_parameters(); }
};

/// Throws ConfigError for n < 2 or a schedule that never reaches its target
/// (a target that does not shrink or pools more pairs than exist).
Qcnn build_qcnn(std::size_t num_qubits, const StageSchedule &schedule);

} // namespace qcnn::circuit
