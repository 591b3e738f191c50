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
#include "qcnn/experiments/commands.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <ostream>
#include <random>

#include "qcnn/circuit/executor.hpp"
#include "qcnn/parallel.hpp"
#include "qcnn/train/checkpoint.hpp"
#include "qcnn/train/gradient.hpp"

namespace qcnn::experiments {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string csv_header(std::string_view columns) {
    return "# schema_version=" + std::to_string(train::kCsvSchemaVersion) + "\n" + std::string(columns) + "\n";
}

double median(std::vector<double> v) {
    if (v.empty()) {
        return 0.0;
    }
    std::sort(v.begin(), v.end());
    const std::size_t h = v.size() / 2;
    return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

/// Haar-random single-qubit states, one per qubit, tensored together.
sim::StateVector random_product_state(std::size_t n, std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<Complex> amps{1.0};
    for (std::size_t q = 0; q < n; ++q) {
        const double polar = std::acos(1.0 - 2.0 * unit(rng));
        const double phase = 2.0 * std::numbers::pi * unit(rng);
        const Complex a0 = std::cos(polar / 2.0);
        const Complex a1 = std::polar(std::sin(polar / 2.0), phase);
        std::vector<Complex> next(amps.size() * 2);
        for (std::size_t i = 0; i < amps.size(); ++i) {
            next[2 * i] = amps[i] * a0;
            next[2 * i + 1] = amps[i] * a1;
        }
        amps = std::move(next);
    }
    return sim::StateVector::from_amplitudes(std::move(amps));
}

bool first_stage_symbol(const circuit::QcnnPlan &plan, std::size_t symbol) {
    const auto &stage = plan.stages().front();
    auto has = [&](const circuit::ConvSubLayer &layer) {
        return std::find(layer.symbols.begin(), layer.symbols.end(), symbol) != layer.symbols.end();
    };
    return has(stage.even) || (stage.offset && has(*stage.offset));
}

class OutputWriter {
  public:
    OutputWriter(std::string command, const RunConfig &config, fs::path dir)
        : dir_(std::move(dir)), start_(std::chrono::steady_clock::now()) {
        manifest_.command = std::move(command);
        manifest_.config = config.to_map();
        manifest_.seed = config.train.seed;
        manifest_.version = std::string(code_version());
        fs::create_directories(dir_);
    }

    void write(const std::string &name, std::string_view text) {
        train::write_text_file(dir_ / name, text);
        manifest_.outputs.push_back(name);
    }

    void checkpoint(const std::string &name, const train::Checkpoint &ckpt) {
        train::save_checkpoint(dir_ / name, ckpt);
        manifest_.outputs.push_back(name);
    }

    RunManifest finish() {
        manifest_.duration_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        save_manifest(dir_ / kManifestFileName, manifest_);
        return manifest_;
    }

  private:
    fs::path dir_;
    std::chrono::steady_clock::time_point start_;
    RunManifest manifest_;
};

/// Pins the data directory so the manifest replays without the environment.
RunConfig with_resolved_data(RunConfig config) {
    config.data_dir = resolve_data_dir(config).string();
    return config;
}

std::string loss_trace_csv(std::span<const double> losses) {
    std::string out = csv_header("iteration,pseudo_loss");
    for (std::size_t i = 0; i < losses.size(); ++i) {
        out += std::to_string(i + 1) + "," + train::format_double(losses[i]) + "\n";
    }
    return out;
}

} // namespace

std::uint64_t stream_seed(std::uint64_t run_seed, SeedStream stream, std::uint64_t index) {
    return derive_seed(derive_seed(run_seed, static_cast<std::uint64_t>(stream)), index);
}

fs::path resolve_data_dir(const RunConfig &config) {
    if (!config.data_dir.empty()) {
        return config.data_dir;
    }
    if (const char *env = std::getenv("QCNN_MNIST_DIR"); env && *env) {
        return env;
    }
    throw ConfigError("no dataset: set data_dir, pass --data or export QCNN_MNIST_DIR");
}

data::Splits load_splits(const RunConfig &config) {
    const auto files = data::locate_mnist(resolve_data_dir(config));
    const auto raw = data::load_idx(files.images, files.labels);
    const auto ds = data::make_binary(raw, config.digit_a, config.digit_b, config.qubits, config.split_seed);
    return data::split_sizes(ds, {config.train_size, config.val_size, config.test_size});
}

std::vector<VarianceRow> variance_scan(const RunConfig &config) {
    if (config.n_min < 2 || config.n_min > config.n_max || config.n_max > 14) {
        throw ConfigError("variance-scan: need 2 <= n_min <= n_max <= 14");
    }
    if (config.n_step == 0) {
        throw ConfigError("variance-scan: n_step must be positive");
    }
    if (config.samples_per_n < 2) {
        throw ConfigError("variance-scan: samples_per_n must be at least 2");
    }
    const std::size_t samples = config.samples_per_n;
    const std::size_t mu = config.variance_symbol;
    std::vector<VarianceRow> rows;
    for (std::size_t n = config.n_min; n <= config.n_max; n += config.n_step) {
        const auto model = circuit::build_qcnn(n, config.variance_schedule_for(n));
        if (!first_stage_symbol(model.plan, mu)) {
            throw ConfigError("variance-scan: symbol " + std::to_string(mu) + " is not a first-stage conv symbol");
        }
        std::mt19937_64 rng(stream_seed(config.train.seed, SeedStream::kVariance, n));
        std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
        std::vector<circuit::ParameterVector> thetas;
        std::vector<sim::StateVector> inputs;
        for (std::size_t s = 0; s < samples; ++s) {
            std::vector<double> th(model.num_parameters());
            for (auto &x : th) {
                x = angle(rng);
            }
            thetas.emplace_back(std::move(th));
            inputs.push_back(config.variance_input == VarianceInput::kZero ? sim::StateVector::zero(n)
                                                                           : random_product_state(n, rng));
        }
        std::vector<double> dg(samples), dl(samples);
        parallel_for(samples, config.threads, [&](std::size_t s) {
            dg[s] = train::shift_rule_score_gradient(model.circuit, thetas[s], inputs[s],
                                                     {train::CostKind::kGlobal, model.survivors()}, mu)
                        .gradient[mu];
            dl[s] = train::shift_rule_score_gradient(model.circuit, thetas[s], inputs[s],
                                                     {train::CostKind::kLocal, model.survivors()}, mu)
                        .gradient[mu];
        });
        for (auto [kind, d] : {std::pair{train::CostKind::kGlobal, &dg}, std::pair{train::CostKind::kLocal, &dl}}) {
            double mean = 0.0;
            for (double x : *d) {
                mean += x;
            }
            mean /= static_cast<double>(samples);
            double ss = 0.0;
            for (double x : *d) {
                ss += (x - mean) * (x - mean);
            }
            rows.push_back({n, kind, ss / static_cast<double>(samples - 1), samples});
        }
    }
    return rows;
}

std::string variance_csv(std::span<const VarianceRow> rows) {
    std::string out = csv_header("n,cost_kind,variance,samples");
    for (const auto &r : rows) {
        out += std::to_string(r.n) + "," + std::string(train::to_string(r.kind)) + "," +
               train::format_double(r.variance) + "," + std::to_string(r.samples) + "\n";
    }
    return out;
}

circuit::ParameterVector initial_theta(const RunConfig &config, const circuit::Qcnn &model,
                                       std::span<const circuit::EncodedSample> train_set,
                                       std::optional<tni::TniResult> *tni_out) {
    const std::uint64_t seed = config.train.seed;
    switch (config.init) {
    case InitKind::kRandom: {
        std::mt19937_64 rng(stream_seed(seed, SeedStream::kInit));
        std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
        std::vector<double> th(model.num_parameters());
        for (auto &x : th) {
            x = angle(rng);
        }
        return circuit::ParameterVector(std::move(th));
    }
    case InitKind::kSmall:
        return tni::small_variance_init(model.num_parameters(), config.tni.init_stddev,
                                        stream_seed(seed, SeedStream::kInit));
    case InitKind::kTni:
    default: {
        auto tc = config.tni;
        tc.seed = stream_seed(seed, SeedStream::kTni);
        tc.threads = config.threads;
        const auto subset = tni::tni_subset(train_set, tc.subset_size, stream_seed(seed, SeedStream::kTniSubset));
        auto result = tni::tni_pretrain(subset, model, tc);
        auto theta = result.theta;
        if (tni_out) {
            *tni_out = std::move(result);
        }
        return theta;
    }
    }
}

TrainRun train_run(const RunConfig &config, const data::Splits &splits, std::ostream *log) {
    config.validate();
    const auto model = circuit::build_qcnn(config.qubits, config.schedule());
    TrainRun run;
    run.theta_init = initial_theta(config, model, splits.train.samples, &run.tni);
    if (log && run.tni) {
        *log << "tni: pseudo-loss " << run.tni->losses.front() << " -> " << run.tni->losses.back() << "\n";
    }
    auto tc = config.train;
    tc.seed = stream_seed(config.train.seed, SeedStream::kShuffle);
    tc.threads = config.threads;
    run.result = train::train(tc, model, splits.train.samples, splits.val.samples, run.theta_init,
                              [log](const train::EpochMetrics &m) {
                                  if (log) {
                                      *log << "epoch " << m.epoch << " train_loss " << m.train_loss
                                           << " val_loss " << m.val_loss << " val_acc " << m.val_acc
                                           << " grad_norm " << m.grad_norm << "\n";
                                  }
                              });
    run.test = train::evaluate(run.result.theta, splits.test.samples, model, tc.cost_kind, {}, config.threads);
    return run;
}

AblationReport ablation(const RunConfig &config, const data::Splits &splits, std::ostream *log) {
    if (config.num_seeds < 3) {
        throw ConfigError("ablation: num_seeds must be at least 3");
    }
    AblationReport report;
    std::vector<double> tni_losses, random_losses, reductions;
    std::size_t tni_capped = 0;
    std::size_t random_capped = 0;
    for (std::size_t k = 0; k < config.num_seeds; ++k) {
        RunConfig c = config;
        c.train.seed = stream_seed(config.train.seed, SeedStream::kAblation, k);
        AblationSeed row;
        row.index = k;
        row.seed = c.train.seed;
        c.init = InitKind::kTni;
        const auto warm = train_run(c, splits);
        c.init = InitKind::kRandom;
        const auto cold = train_run(c, splits);
        row.tni_first_loss = warm.result.metrics.front().train_loss;
        row.random_first_loss = cold.result.metrics.front().train_loss;
        row.tni_test_accuracy = warm.test.accuracy;
        row.random_test_accuracy = cold.test.accuracy;
        if (log) {
            *log << "seed " << k << " first-epoch loss tni " << row.tni_first_loss << " random "
                 << row.random_first_loss << " test acc tni " << row.tni_test_accuracy << " random "
                 << row.random_test_accuracy << "\n";
        }
        tni_losses.push_back(row.tni_first_loss);
        random_losses.push_back(row.random_first_loss);
        reductions.push_back((row.random_first_loss - row.tni_first_loss) / row.random_first_loss);
        tni_capped += row.tni_test_accuracy < kPrematureAccuracy;
        random_capped += row.random_test_accuracy < kPrematureAccuracy;
        report.seeds.push_back(row);
    }
    const auto count = static_cast<double>(config.num_seeds);
    report.median_tni_first_loss = median(tni_losses);
    report.median_random_first_loss = median(random_losses);
    report.median_loss_reduction = median(reductions);
    report.tni_premature_fraction = static_cast<double>(tni_capped) / count;
    report.random_premature_fraction = static_cast<double>(random_capped) / count;
    return report;
}

std::string ablation_csv(const AblationReport &report) {
    std::string out =
        csv_header("seed_index,seed,tni_first_loss,random_first_loss,tni_test_accuracy,random_test_accuracy");
    for (const auto &s : report.seeds) {
        out += std::to_string(s.index) + "," + std::to_string(s.seed) + "," + train::format_double(s.tni_first_loss) +
               "," + train::format_double(s.random_first_loss) + "," + train::format_double(s.tni_test_accuracy) +
               "," + train::format_double(s.random_test_accuracy) + "\n";
    }
    return out;
}

std::string ablation_summary_json(const AblationReport &report) {
    json j;
    j["num_seeds"] = report.seeds.size();
    j["median_tni_first_loss"] = report.median_tni_first_loss;
    j["median_random_first_loss"] = report.median_random_first_loss;
    j["median_initial_loss_reduction"] = report.median_loss_reduction;
    j["premature_accuracy_threshold"] = kPrematureAccuracy;
    j["tni_premature_fraction"] = report.tni_premature_fraction;
    j["random_premature_fraction"] = report.random_premature_fraction;
    return j.dump(2) + "\n";
}

NoiseSweep noise_sweep(const RunConfig &config, std::span<const circuit::EncodedSample> test_set,
                       const circuit::ParameterVector &theta, std::ostream *log) {
    const auto model = circuit::build_qcnn(config.qubits, config.schedule());
    if (theta.size() != model.num_parameters()) {
        throw DimensionError("noise-sweep: checkpoint has " + std::to_string(theta.size()) +
                             " parameters, plan needs " + std::to_string(model.num_parameters()));
    }
    if (test_set.empty()) {
        throw ConfigError("noise-sweep: empty test set");
    }
    const auto kind = config.train.cost_kind;
    NoiseSweep sweep;
    sweep.noiseless_accuracy = train::evaluate(theta, test_set, model, kind, {}, config.threads).accuracy;
    for (double p : config.noise_levels) {
        if (!(p >= 0.0 && p <= 0.75)) {
            throw ConfigError("noise-sweep: p must lie in [0, 0.75]");
        }
        const std::size_t count = test_set.size();
        std::vector<double> scores(count), trace_err(count), min_eig(count);
        parallel_for(count, config.threads, [&](std::size_t i) {
            auto out = circuit::run_noisy(model.circuit, theta, test_set[i].to_state(), p);
            trace_err[i] = std::abs(out.rho.trace() - 1.0);
            min_eig[i] = sim::min_eigenvalue(out.rho);
            scores[i] = train::readout(circuit::Output(std::move(out)), model.survivors(), kind);
        });
        NoiseRow row;
        row.p = p;
        row.max_trace_error = *std::max_element(trace_err.begin(), trace_err.end());
        row.min_eigenvalue = *std::min_element(min_eig.begin(), min_eig.end());
        std::size_t correct = 0;
        double total = 0.0;
        for (std::size_t i = 0; i < count; ++i) {
            correct += train::classify(scores[i]) == test_set[i].label;
            total += scores[i];
        }
        row.accuracy = static_cast<double>(correct) / static_cast<double>(count);
        row.mean_score = total / static_cast<double>(count);
        if (log) {
            *log << "p " << p << " accuracy " << row.accuracy << " mean_score " << row.mean_score << "\n";
        }
        sweep.rows.push_back(row);
    }
    return sweep;
}

std::string noise_csv(const NoiseSweep &sweep) {
    std::string out = csv_header("p,accuracy,mean_score");
    for (const auto &r : sweep.rows) {
        out += train::format_double(r.p) + "," + train::format_double(r.accuracy) + "," +
               train::format_double(r.mean_score) + "\n";
    }
    return out;
}

std::string noise_cptp_json(const NoiseSweep &sweep) {
    json j;
    j["noiseless_accuracy"] = sweep.noiseless_accuracy;
    j["levels"] = json::array();
    for (const auto &r : sweep.rows) {
        j["levels"].push_back({{"p", r.p}, {"max_trace_error", r.max_trace_error}, {"min_eigenvalue", r.min_eigenvalue}});
    }
    return j.dump(2) + "\n";
}

RunManifest cmd_variance_scan(const RunConfig &config, const fs::path &out_dir, std::ostream *log) {
    config.validate();
    OutputWriter out("variance-scan", config, out_dir);
    const auto rows = variance_scan(config);
    if (log) {
        for (const auto &r : rows) {
            *log << "n " << r.n << " " << train::to_string(r.kind) << " variance " << r.variance << "\n";
        }
    }
    out.write("variance.csv", variance_csv(rows));
    return out.finish();
}

RunManifest cmd_train(const RunConfig &input, const fs::path &out_dir, std::ostream *log) {
    const auto config = with_resolved_data(input);
    config.validate();
    OutputWriter out("train", config, out_dir);
    const auto splits = load_splits(config);
    const auto run = train_run(config, splits, log);
    out.write("metrics.csv", train::metrics_csv(run.result.metrics));
    train::Checkpoint ckpt{run.result.theta, run.result.optimizer, config.to_map()};
    out.checkpoint("checkpoint.json", ckpt);
    json summary;
    summary["test_accuracy"] = run.test.accuracy;
    summary["test_loss"] = run.test.loss;
    summary["epochs"] = run.result.metrics.size();
    summary["final_val_accuracy"] = run.result.metrics.empty() ? 0.0 : run.result.metrics.back().val_acc;
    summary["init"] = std::string(to_string(config.init));
    out.write("summary.json", summary.dump(2) + "\n");
    if (run.tni) {
        out.write("tni_losses.csv", loss_trace_csv(run.tni->losses));
    }
    if (log) {
        *log << "test accuracy " << run.test.accuracy << "\n";
    }
    return out.finish();
}

RunManifest cmd_ablation(const RunConfig &input, const fs::path &out_dir, std::ostream *log) {
    const auto config = with_resolved_data(input);
    config.validate();
    if (config.num_seeds < 3) {
        throw ConfigError("ablation: num_seeds must be at least 3");
    }
    OutputWriter out("ablation", config, out_dir);
    const auto report = ablation(config, load_splits(config), log);
    out.write("ablation.csv", ablation_csv(report));
    out.write("ablation_summary.json", ablation_summary_json(report));
    return out.finish();
}

RunManifest cmd_noise_sweep(const RunConfig &input, const fs::path &out_dir, std::ostream *log) {
    const auto config = with_resolved_data(input);
    config.validate();
    if (config.checkpoint.empty() || !fs::exists(config.checkpoint)) {
        throw ConfigError("noise-sweep: missing checkpoint '" + config.checkpoint + "'");
    }
    OutputWriter out("noise-sweep", config, out_dir);
    const auto ckpt = train::load_checkpoint(config.checkpoint);
    const auto splits = load_splits(config);
    const auto sweep = noise_sweep(config, splits.test.samples, ckpt.theta, log);
    out.write("noise.csv", noise_csv(sweep));
    out.write("noise_cptp.json", noise_cptp_json(sweep));
    return out.finish();
}

RunManifest cmd_tni(const RunConfig &input, const fs::path &out_dir, std::ostream *log) {
    const auto config = with_resolved_data(input);
    config.validate();
    OutputWriter out("tni", config, out_dir);
    const auto splits = load_splits(config);
    const auto model = circuit::build_qcnn(config.qubits, config.schedule());
    auto tc = config.tni;
    tc.seed = stream_seed(config.train.seed, SeedStream::kTni);
    tc.threads = config.threads;
    const auto subset = tni::tni_subset(splits.train.samples, tc.subset_size,
                                        stream_seed(config.train.seed, SeedStream::kTniSubset));
    const auto result = tni::tni_pretrain(subset, model, tc);
    if (log) {
        *log << "tni: pseudo-loss " << result.losses.front() << " -> " << result.losses.back() << "\n";
    }
    auto tags = tc.to_tags();
    tags["source"] = "tni";
    out.checkpoint("tni_seed.json", train::Checkpoint{result.theta, std::nullopt, tags});
    out.write("tni_losses.csv", loss_trace_csv(result.losses));
    return out.finish();
}

RunManifest run_command(std::string_view command, const RunConfig &config, const fs::path &out_dir,
                        std::ostream *log) {
    if (command == "variance-scan") {
        return cmd_variance_scan(config, out_dir, log);
    }
    if (command == "train") {
        return cmd_train(config, out_dir, log);
    }
    if (command == "ablation") {
        return cmd_ablation(config, out_dir, log);
    }
    if (command == "noise-sweep") {
        return cmd_noise_sweep(config, out_dir, log);
    }
    if (command == "tni") {
        return cmd_tni(config, out_dir, log);
    }
    throw ConfigError("unknown command '" + std::string(command) + "'");
}

RunManifest replay(const RunManifest &manifest, const fs::path &out_dir, std::ostream *log) {
    return run_command(manifest.command, RunConfig::from_map(manifest.config), out_dir, log);
}

} // namespace qcnn::experiments
