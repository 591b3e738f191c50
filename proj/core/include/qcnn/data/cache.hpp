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
 * Binary cache of encoded datasets.
 *
 * Layout, all integers little-endian:
 *   bytes 0-3   "QCDS"
 *   bytes 4-5   format version (1)
 *   byte  6     digit mapped to label 0
 *   byte  7     digit mapped to label 1
 *   bytes 8-11  sample count
 *   bytes 12-15 qubit count n
 * then per sample one f64 label followed by 2^n f64 amplitudes.
 */
#pragma once

#include <filesystem>

#include "qcnn/data/dataset.hpp"

namespace qcnn::data {

inline constexpr std::uint16_t kCacheVersion = 1;

std::vector<std::uint8_t> encode_cache(const BinaryDataset &ds);
BinaryDataset decode_cache(std::span<const std::uint8_t> bytes);

void save_cache(const std::filesystem::path &path, const BinaryDataset &ds);
BinaryDataset load_cache(const std::filesystem::path &path);

} // namespace qcnn::data
