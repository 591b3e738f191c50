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
#include "qcnn/experiments/manifest.hpp"

#include <json.hpp>

#include "qcnn/error.hpp"
#include "qcnn/train/checkpoint.hpp"

#ifndef QCNN_VERSION_STRING
#define QCNN_VERSION_STRING "unknown"
#endif

namespace qcnn::experiments {

using nlohmann::json;

namespace {
constexpr std::string_view kFormat = "qcnn-run-manifest";
constexpr int kFormatVersion = 1;
} // namespace

std::string_view code_version() { return QCNN_VERSION_STRING; }

std::string manifest_to_json(const RunManifest &manifest) {
    json j;
    j["format"] = kFormat;
    j["format_version"] = kFormatVersion;
    j["command"] = manifest.command;
    j["config"] = manifest.config;
    j["seed"] = manifest.seed;
    j["version"] = manifest.version;
    j["outputs"] = manifest.outputs;
    j["duration_seconds"] = manifest.duration_seconds;
    return j.dump(2) + "\n";
}

RunManifest manifest_from_json(std::string_view text) {
    try {
        const auto j = json::parse(text);
        if (j.at("format").get<std::string>() != kFormat) {
            throw FormatError("manifest: unexpected format tag");
        }
        if (j.at("format_version").get<int>() != kFormatVersion) {
            throw FormatError("manifest: unsupported format_version");
        }
        RunManifest m;
        m.command = j.at("command").get<std::string>();
        m.config = j.at("config").get<std::map<std::string, std::string>>();
        m.seed = j.at("seed").get<std::uint64_t>();
        m.version = j.at("version").get<std::string>();
        m.outputs = j.at("outputs").get<std::vector<std::string>>();
        m.duration_seconds = j.at("duration_seconds").get<double>();
        return m;
    } catch (const json::exception &e) {
        throw FormatError(std::string("manifest: ") + e.what());
    }
}

void save_manifest(const std::filesystem::path &path, const RunManifest &manifest) {
    train::write_text_file(path, manifest_to_json(manifest));
}

RunManifest load_manifest(const std::filesystem::path &path) {
    return manifest_from_json(train::read_text_file(path));
}

} // namespace qcnn::experiments
