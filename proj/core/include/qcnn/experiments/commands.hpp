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
 * The experiment commands. Each `cmd_*` runs one study from a RunConfig,
 * writes its files into an output directory together with a manifest, and
 * returns that manifest. The computations behind them are exposed as well so
 * tests can check results without going through files.
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qcnn/circuit/qcnn_plan.hpp"
#include "qcnn/data/dataset.hpp"
#include "qcnn/experiments/config.hpp"
#include "qcnn/experiments/manifest.hpp"
#include "qcnn/tni/pretrain.hpp"
#include "qcnn/train/trainer.hpp"

namespace qcnn::experiments {

/// Seed streams split off the run seed with derive_seed.
enum class SeedStream : std::uint64_t { kInit = 0, kTni = 1, kShuffle = 2, kVariance = 3, kTniSubset = 4, kAblation = 100 };

std::uint64_t stream_seed(std::uint64_t run_seed, SeedStream stream, std::uint64_t index = 0);

/// Test accuracy below which a run counts as converged prematurely.
inline constexpr double kPrematureAccuracy = 0.90;

// Data -------------------------------------------------------------------

/// config data_dir, else $QCNN_MNIST_DIR; throws ConfigError when neither is set.
std::filesystem::path resolve_data_dir(const RunConfig &config);
data::Splits load_splits(const RunConfig &config);

// Variance scan ----------------------------------------------------------

struct VarianceRow {
    std::size_t n = 0;
    train::CostKind kind = train::CostKind::kGlobal;
    double variance = 0.0;
    std::size_t samples = 0;
};

std::vector<VarianceRow> variance_scan(const RunConfig &config);
std::string variance_csv(std::span<const VarianceRow> rows);

// Training ---------------------------------------------------------------

struct TrainRun {
    circuit::ParameterVector theta_init;
    std::optional<tni::TniResult> tni;
    train::TrainResult result;
    train::Evaluation test;
};

/// Starting point for `config.init`, drawn from the run seed's streams.
circuit::ParameterVector initial_theta(const RunConfig &config, const circuit::Qcnn &model,
                                       std::span<const circuit::EncodedSample> train_set,
                                       std::optional<tni::TniResult> *tni_out = nullptr);
TrainRun train_run(const RunConfig &config, const data::Splits &splits, std::ostream *log = nullptr);

// Ablation ---------------------------------------------------------------

struct AblationSeed {
    std::size_t index = 0;
    std::uint64_t seed = 0;
    double tni_first_loss = 0.0;
    double random_first_loss = 0.0;
    double tni_test_accuracy = 0.0;
    double random_test_accuracy = 0.0;
};

struct AblationReport {
    std::vector<AblationSeed> seeds;
    double median_tni_first_loss = 0.0;
    double median_random_first_loss = 0.0;
    /// Median over seeds of (random - tni) / random first-epoch loss.
    double median_loss_reduction = 0.0;
    double tni_premature_fraction = 0.0;
    double random_premature_fraction = 0.0;
};

AblationReport ablation(const RunConfig &config, const data::Splits &splits, std::ostream *log = nullptr);
std::string ablation_csv(const AblationReport &report);
std::string ablation_summary_json(const AblationReport &report);

// Noise sweep ------------------------------------------------------------

struct NoiseRow {
    double p = 0.0;
    double accuracy = 0.0;
    double mean_score = 0.0;
    /// Worst |tr(rho) - 1| and smallest eigenvalue over all outputs.
    double max_trace_error = 0.0;
    double min_eigenvalue = 0.0;
};

struct NoiseSweep {
    double noiseless_accuracy = 0.0;
    std::vector<NoiseRow> rows;
};

NoiseSweep noise_sweep(const RunConfig &config, std::span<const circuit::EncodedSample> test_set,
                       const circuit::ParameterVector &theta, std::ostream *log = nullptr);
std::string noise_csv(const NoiseSweep &sweep);
std::string noise_cptp_json(const NoiseSweep &sweep);

// Commands ---------------------------------------------------------------

inline constexpr std::string_view kCommands[] = {"variance-scan", "train", "ablation", "noise-sweep", "tni"};

RunManifest cmd_variance_scan(const RunConfig &config, const std::filesystem::path &out_dir,
                              std::ostream *log = nullptr);
RunManifest cmd_train(const RunConfig &config, const std::filesystem::path &out_dir, std::ostream *log = nullptr);
RunManifest cmd_ablation(const RunConfig &config, const std::filesystem::path &out_dir,
                         std::ostream *log = nullptr);
RunManifest cmd_noise_sweep(const RunConfig &config, const std::filesystem::path &out_dir,
                            std::ostream *log = nullptr);
RunManifest cmd_tni(const RunConfig &config, const std::filesystem::path &out_dir, std::ostream *log = nullptr);

/// Dispatches on the command name.
RunManifest run_command(std::string_view command, const RunConfig &config, const std::filesystem::path &out_dir,
                        std::ostream *log = nullptr);

/// Re-runs the command recorded in a manifest into `out_dir`.
RunManifest replay(const RunManifest &manifest, const std::filesystem::path &out_dir, std::ostream *log = nullptr);

} // namespace qcnn::experiments
