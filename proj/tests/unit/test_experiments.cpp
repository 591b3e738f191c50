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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <unistd.h>

#include "qcnn/experiments/commands.hpp"
#include "qcnn/experiments/config.hpp"
#include "qcnn/experiments/manifest.hpp"

using namespace qcnn;
using namespace qcnn::experiments;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        static int counter = 0;
        path = fs::temp_directory_path() /
               ("qcnn_exp_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string error_of(auto &&fn) {
    try {
        fn();
    } catch (const ConfigError &e) {
        return e.what();
    }
    return "";
}

RunConfig small_scan() {
    RunConfig c;
    c.n_min = 4;
    c.n_max = 6;
    c.samples_per_n = 40;
    return c;
}

const char *data_dir() { return std::getenv("QCNN_TEST_DATA_DIR"); }

} // namespace

TEST_CASE("config parsing") {
    const auto file = ConfigFile::parse("# comment\nqubits = 8\n\n  initial_learning_rate=0.02 # trailing\ndigits = 3,5\n",
                                        "run.cfg");
    const auto c = RunConfig::from_file(file);
    CHECK(c.qubits == 8);
    CHECK(c.train.eta0 == 0.02);
    CHECK(c.digit_a == 3);
    CHECK(c.digit_b == 5);
    CHECK(file.where("digits") == "run.cfg:5");

    CHECK(error_of([] { ConfigFile::parse("qubits = 4\nqubits = 6\n", "a.cfg"); }).find("a.cfg:2") !=
          std::string::npos);
    CHECK(error_of([] { ConfigFile::parse("qubits\n", "a.cfg"); }).find("a.cfg:1") != std::string::npos);
    CHECK(error_of([] { ConfigFile::parse(" = 3\n", "a.cfg"); }).find("empty key") != std::string::npos);
    const auto unknown = error_of([] { RunConfig::from_file(ConfigFile::parse("qubits = 4\nqbits = 5\n", "b.cfg")); });
    CHECK(unknown.find("b.cfg:2") != std::string::npos);
    CHECK(unknown.find("qbits") != std::string::npos);
    CHECK_FALSE(error_of([] { RunConfig::from_file(ConfigFile::parse("qubits = four\n")); }).empty());
    CHECK_FALSE(
        error_of([] { RunConfig::from_file(ConfigFile::parse("qubits = 10\namplitude_padding_length = 512\n")); })
            .empty());
    CHECK_NOTHROW(RunConfig::from_file(ConfigFile::parse("qubits = 9\namplitude_padding_length = 512\n")));
    CHECK_FALSE(error_of([] { RunConfig::from_file(ConfigFile::parse("init = warm\n")); }).empty());
    CHECK_FALSE(error_of([] { RunConfig::from_file(ConfigFile::parse("digits = 4,4\n")).validate(); }).empty());
}

TEST_CASE("config defaults and round trip") {
    RunConfig c;
    CHECK(c.qubits == 10);
    CHECK(c.train.eta0 == 0.015);
    CHECK(c.train.epochs == 150);
    CHECK(c.train.batch_size == 32);
    CHECK(c.tni.chi == 16);
    CHECK(c.samples_per_n == 200);
    CHECK(c.num_seeds == 5);
    CHECK(c.noise_levels == std::vector<double>{0.0, 0.005, 0.01, 0.02, 0.05});
    CHECK(circuit::build_qcnn(10, c.schedule()).survivors() == std::vector<std::size_t>{0, 1, 2, 3, 9});

    c.qubits = 8;
    c.train.seed = 1234567890123ULL;
    c.noise_levels = {0.0, 0.1};
    c.init = InitKind::kSmall;
    c.tni.learning_rate = 0.0123456789012345;
    const auto m = c.to_map();
    CHECK(RunConfig::from_map(m).to_map() == m);
    CHECK(RunConfig::from_file(ConfigFile::parse(c.to_text())).to_map() == m);
    auto bad = m;
    bad["mystery"] = "1";
    CHECK_THROWS_AS(RunConfig::from_map(bad), ConfigError);
}

TEST_CASE("seed derivation") {
    std::set<std::uint64_t> seen;
    for (std::uint64_t s = 0; s < 4; ++s) {
        for (std::uint64_t i = 0; i < 64; ++i) {
            seen.insert(derive_seed(s, i));
        }
    }
    CHECK(seen.size() == 256);
    CHECK(derive_seed(7, 3) == derive_seed(7, 3));
    CHECK(stream_seed(1, SeedStream::kInit) != stream_seed(1, SeedStream::kShuffle));
    CHECK(stream_seed(1, SeedStream::kAblation, 0) != stream_seed(1, SeedStream::kAblation, 1));
}

TEST_CASE("variance scan") {
    const auto rows = variance_scan(small_scan());
    REQUIRE(rows.size() == 4);
    std::set<std::pair<std::size_t, train::CostKind>> keys;
    for (const auto &r : rows) {
        CHECK(r.samples == 40);
        CHECK(r.variance > 0.0);
        keys.insert({r.n, r.kind});
    }
    CHECK(keys.size() == 4);
    CHECK(variance_scan(small_scan()).front().variance == rows.front().variance);
    const auto csv = variance_csv(rows);
    CHECK(csv.rfind("# schema_version=1\nn,cost_kind,variance,samples\n", 0) == 0);

    auto c = small_scan();
    c.samples_per_n = 0;
    CHECK_THROWS_AS(variance_scan(c), ConfigError);
    c = small_scan();
    c.n_max = 16;
    CHECK_THROWS_AS(variance_scan(c), ConfigError);
    c = small_scan();
    c.variance_symbol = 40;
    CHECK_THROWS_AS(variance_scan(c), ConfigError);
}

TEST_CASE("manifest round trip") {
    RunManifest m;
    m.command = "train";
    m.config = RunConfig{}.to_map();
    m.seed = 18446744073709551615ULL;
    m.version = std::string(code_version());
    m.outputs = {"metrics.csv", "checkpoint.json"};
    m.duration_seconds = 1.5;
    TempDir dir;
    save_manifest(dir.path / "manifest.json", m);
    const auto back = load_manifest(dir.path / "manifest.json");
    CHECK(back.command == m.command);
    CHECK(back.config == m.config);
    CHECK(back.seed == m.seed);
    CHECK(back.version == m.version);
    CHECK(back.outputs == m.outputs);
    CHECK(back.duration_seconds == m.duration_seconds);
    CHECK_THROWS(manifest_from_json("{\"format\": \"other\"}"));
    CHECK_THROWS(manifest_from_json("not json"));
}

TEST_CASE("variance-scan replay is bit-identical") {
    TempDir dir;
    const auto m = cmd_variance_scan(small_scan(), dir.path / "a");
    CHECK(fs::exists(dir.path / "a" / kManifestFileName));
    const auto loaded = load_manifest(dir.path / "a" / kManifestFileName);
    CHECK(loaded.command == "variance-scan");
    const auto m2 = replay(loaded, dir.path / "b");
    CHECK(m2.outputs == m.outputs);
    for (const auto &name : m.outputs) {
        CHECK(slurp(dir.path / "a" / name) == slurp(dir.path / "b" / name));
    }
}

TEST_CASE("command argument errors") {
    TempDir dir;
    RunConfig c;
    c.checkpoint = (dir.path / "none.json").string();
    c.data_dir = dir.path.string();
    const auto msg = error_of([&] { cmd_noise_sweep(c, dir.path / "out"); });
    CHECK(msg.find("checkpoint") != std::string::npos);
    c.num_seeds = 1;
    CHECK(error_of([&] { cmd_ablation(c, dir.path / "out"); }).find("num_seeds") != std::string::npos);
    CHECK_THROWS_AS(run_command("nope", c, dir.path / "out"), ConfigError);
}

TEST_CASE("short training run replays bit-identically" * doctest::skip(data_dir() == nullptr)) {
    TempDir dir;
    RunConfig c;
    c.data_dir = data_dir();
    c.train_size = 48;
    c.val_size = 16;
    c.test_size = 16;
    c.train.epochs = 2;
    c.train.batch_size = 16;
    c.init = InitKind::kRandom;
    const auto m = cmd_train(c, dir.path / "a");
    const auto m2 = replay(load_manifest(dir.path / "a" / kManifestFileName), dir.path / "b");
    REQUIRE(m.outputs == m2.outputs);
    for (const auto &name : m.outputs) {
        CHECK(slurp(dir.path / "a" / name) == slurp(dir.path / "b" / name));
    }
    c.checkpoint = (dir.path / "a" / "checkpoint.json").string();
    c.noise_levels = {0.0, 0.05};
    const auto n = cmd_noise_sweep(c, dir.path / "noise");
    CHECK(fs::exists(dir.path / "noise" / "noise.csv"));
    CHECK(n.command == "noise-sweep");
}
