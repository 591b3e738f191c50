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
// qcnn: command-line front end for the experiment commands.
#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "qcnn/error.hpp"
#include "qcnn/experiments/commands.hpp"
#include "qcnn/experiments/config.hpp"
#include "qcnn/experiments/manifest.hpp"

namespace fs = std::filesystem;
using namespace qcnn::experiments;

namespace {

struct CommonOptions {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::string out;
    std::string data;
    std::optional<std::size_t> threads;
    std::vector<std::string> sets;
    bool quiet = false;
};

struct Overrides {
    std::string cost;
    std::string init;
    std::optional<std::size_t> epochs;
    std::string checkpoint;
    std::optional<std::size_t> samples;
    std::optional<std::size_t> num_seeds;
    std::string noise_levels;
};

void add_common(CLI::App *sub, CommonOptions &o) {
    sub->add_option("--config", o.config, "key = value config file")->check(CLI::ExistingFile);
    sub->add_option("--seed", o.seed, "run seed");
    sub->add_option("--out", o.out, "output directory (default runs/<command>)");
    sub->add_option("--data", o.data, "MNIST IDX directory (fallback: $QCNN_MNIST_DIR)");
    sub->add_option("--threads", o.threads, "worker threads");
    sub->add_option("--set", o.sets, "extra key=value override, repeatable");
    sub->add_flag("-q,--quiet", o.quiet, "no progress output");
}

RunConfig resolve(const CommonOptions &o, const Overrides &ov) {
    ConfigFile file = o.config.empty() ? ConfigFile{} : ConfigFile::load(o.config);
    auto put = [&](const std::string &key, const std::string &value) {
        if (!value.empty()) {
            file.set(key, value);
        }
    };
    for (const auto &kv : o.sets) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) {
            throw qcnn::ConfigError("--set expects key=value, got '" + kv + "'");
        }
        file.set(kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (o.seed) {
        put("seed", std::to_string(*o.seed));
    }
    put("data_dir", o.data);
    if (o.threads) {
        put("threads", std::to_string(*o.threads));
    }
    put("observables", ov.cost);
    put("init", ov.init);
    if (ov.epochs) {
        put("training_epochs", std::to_string(*ov.epochs));
    }
    put("checkpoint", ov.checkpoint);
    if (ov.samples) {
        put("samples_per_n", std::to_string(*ov.samples));
    }
    if (ov.num_seeds) {
        put("num_seeds", std::to_string(*ov.num_seeds));
    }
    put("noise_levels", ov.noise_levels);
    auto config = RunConfig::from_file(file);
    config.validate();
    return config;
}

void print_outputs(const RunManifest &m, const fs::path &dir) {
    for (const auto &name : m.outputs) {
        std::cout << (dir / name).string() << "\n";
    }
    std::cout << (dir / kManifestFileName).string() << "\n";
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"QCNN barren-plateau experiments"};
    app.set_version_flag("--version", std::string(code_version()));
    app.require_subcommand(1);

    CommonOptions common;
    Overrides ov;
    std::vector<CLI::App *> subs;
    for (auto name : kCommands) {
        auto *sub = app.add_subcommand(std::string(name));
        add_common(sub, common);
        subs.push_back(sub);
    }
    app.get_subcommand("variance-scan")->description("gradient variance against qubit count");
    app.get_subcommand("variance-scan")->add_option("--samples", ov.samples, "circuits per n");
    auto *train_cmd = app.get_subcommand("train");
    train_cmd->description("train a classifier; writes metrics, checkpoint and summary");
    train_cmd->add_option("--cost", ov.cost, "local or global");
    train_cmd->add_option("--init", ov.init, "tni, random or small");
    train_cmd->add_option("--epochs", ov.epochs, "training epochs");
    auto *abl = app.get_subcommand("ablation");
    abl->description("paired TNI and random-init runs per seed");
    abl->add_option("--num-seeds", ov.num_seeds, "paired seeds (>= 3)");
    abl->add_option("--epochs", ov.epochs, "training epochs per run");
    abl->add_option("--cost", ov.cost, "local or global");
    auto *noise = app.get_subcommand("noise-sweep");
    noise->description("evaluate a checkpoint under depolarizing noise");
    noise->add_option("--checkpoint", ov.checkpoint, "trained checkpoint JSON");
    noise->add_option("--levels", ov.noise_levels, "comma-separated p values");
    noise->add_option("--cost", ov.cost, "local or global");
    app.get_subcommand("tni")->description("tensor-network pre-training; writes a seed checkpoint");

    std::string manifest_path;
    std::string replay_out;
    bool replay_quiet = false;
    auto *rep = app.add_subcommand("replay", "re-run the command recorded in a manifest");
    rep->add_option("manifest", manifest_path, "manifest.json")->required()->check(CLI::ExistingFile);
    rep->add_option("--out", replay_out, "output directory")->required();
    rep->add_flag("-q,--quiet", replay_quiet, "no progress output");

    CLI11_PARSE(app, argc, argv);

    try {
        if (rep->parsed()) {
            const auto m = replay(load_manifest(manifest_path), replay_out, replay_quiet ? nullptr : &std::cerr);
            print_outputs(m, replay_out);
            return 0;
        }
        for (auto *sub : subs) {
            if (!sub->parsed()) {
                continue;
            }
            const auto config = resolve(common, ov);
            const fs::path out = common.out.empty() ? fs::path("runs") / sub->get_name() : fs::path(common.out);
            const auto m = run_command(sub->get_name(), config, out, common.quiet ? nullptr : &std::cerr);
            print_outputs(m, out);
        }
    } catch (const qcnn::Error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
