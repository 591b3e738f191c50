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
 * JSON checkpoints (theta and optimizer state keyed by symbol index) and the
 * per-epoch metrics CSV.
 */
#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>

#include "qcnn/circuit/circuit.hpp"
#include "qcnn/train/adam.hpp"
#include "qcnn/train/trainer.hpp"

namespace qcnn::train {

inline constexpr int kCsvSchemaVersion = 1;

struct Checkpoint {
    circuit::ParameterVector theta;
    std::optional<OptimizerState> optimizer;
    /// Free-form provenance, e.g. the generating config.
    std::map<std::string, std::string> tags;
};

std::string checkpoint_to_json(const Checkpoint &ckpt);
Checkpoint checkpoint_from_json(std::string_view text);

void save_checkpoint(const std::filesystem::path &path, const Checkpoint &ckpt);
Checkpoint load_checkpoint(const std::filesystem::path &path);

/// "# schema_version=1" line, header row, then one row per epoch.
std::string metrics_csv(std::span<const EpochMetrics> metrics);

/// Shortest text that parses back to exactly `x`.
std::string format_double(double x);

std::string read_text_file(const std::filesystem::path &path);
void write_text_file(const std::filesystem::path &path, std::string_view text);

} // namespace qcnn::train
