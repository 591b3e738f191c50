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
 * Flat `key = value` run configuration. Keys follow the hyperparameter
 * table's names; `#` starts a comment. Every run materializes all keys, so a
 * manifest's config alone reproduces the run.
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qcnn/circuit/qcnn_plan.hpp"
#include "qcnn/sim/density_matrix.hpp"
#include "qcnn/tni/pretrain.hpp"
#include "qcnn/train/adam.hpp"

namespace qcnn::experiments {

/// Raw key/value pairs with the line each came from.
class ConfigFile {
  public:
    static ConfigFile parse(std::string_view text, std::string source = "<config>");
    static ConfigFile load(const std::filesystem::path &path);

    /// Later values win; `line` 0 marks command-line overrides.
    void set(const std::string &key, const std::string &value, std::size_t line = 0);
    const std::map<std::string, std::string> &values() const { return values_; }
    /// "source:line" for diagnostics.
    std::string where(const std::string &key) const;

  private:
    std::string source_;
    std::map<std::string, std::string> values_;
    std::map<std::string, std::size_t> lines_;
};

enum class InitKind { kTni, kRandom, kSmall };

std::string_view to_string(InitKind kind);
InitKind init_kind_from_string(std::string_view name);

enum class VarianceInput { kZero, kRandomProduct };

std::string_view to_string(VarianceInput input);
VarianceInput variance_input_from_string(std::string_view name);

struct RunConfig {
    // Model.
    std::size_t qubits = 10;
    std::vector<std::size_t> survivor_targets;
    circuit::PoolSide pool_side = circuit::PoolSide::kTrailing;

    // Data.
    std::string data_dir;
    int digit_a = 0;
    int digit_b = 7;
    std::size_t train_size = 1000;
    std::size_t val_size = 200;
    std::size_t test_size = 200;
    std::uint64_t split_seed = 1;

    // Training; train.seed is the run seed.
    train::TrainConfig train;
    InitKind init = InitKind::kTni;

    // Warm start.
    tni::TniConfig tni;

    // Variance scan.
    std::size_t n_min = 4;
    std::size_t n_max = 12;
    std::size_t n_step = 2;
    std::size_t samples_per_n = 200;
    std::size_t variance_symbol = 0;
    std::string variance_schedule = "two-stage";
    VarianceInput variance_input = VarianceInput::kZero;

    // Ablation and noise sweep.
    std::size_t num_seeds = 5;
    std::vector<double> noise_levels{0.0, 0.005, 0.01, 0.02, 0.05};
    std::string checkpoint;

    std::size_t threads = 1;

    /// Reference schedule unless survivor_targets is set.
    circuit::StageSchedule schedule() const;
    /// Plan family of the variance scan evaluated at n qubits.
    circuit::StageSchedule variance_schedule_for(std::size_t n) const;
    void validate() const;

    std::map<std::string, std::string> to_map() const;
    std::string to_text() const;
    static RunConfig from_file(const ConfigFile &file);
    static RunConfig from_map(const std::map<std::string, std::string> &values);
};

/// Derived seed for trial `index` of a run; distinct and stable per index.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

} // namespace qcnn::experiments
