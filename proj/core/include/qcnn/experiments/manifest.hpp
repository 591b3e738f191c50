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
 * Run manifests: the record written next to every command's outputs.
 */
#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace qcnn::experiments {

struct RunManifest {
    std::string command;
    /// Fully materialized config, as accepted by RunConfig::from_map.
    std::map<std::string, std::string> config;
    std::uint64_t seed = 0;
    std::string version;
    /// Output file names, relative to the manifest's directory.
    std::vector<std::string> outputs;
    double duration_seconds = 0.0;
};

inline constexpr std::string_view kManifestFileName = "manifest.json";

std::string_view code_version();

std::string manifest_to_json(const RunManifest &manifest);
RunManifest manifest_from_json(std::string_view text);
void save_manifest(const std::filesystem::path &path, const RunManifest &manifest);
RunManifest load_manifest(const std::filesystem::path &path);

} // namespace qcnn::experiments
