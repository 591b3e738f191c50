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
 * Binary-class datasets: filtering, amplitude encoding and stratified splits.
 */
#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "qcnn/circuit/encoding.hpp"
#include "qcnn/data/idx.hpp"

namespace qcnn::data {

struct BinaryDataset {
    std::vector<circuit::EncodedSample> samples;
    /// Digit mapped to label 0, digit mapped to label 1.
    std::pair<int, int> class_pair{0, 1};
    std::uint64_t split_seed = 0;
    /// Position of each sample in the source RawDataset.
    std::vector<std::size_t> source_index;

    std::size_t size() const { return samples.size(); }
    std::array<std::size_t, 2> class_counts() const;
};

/// Row-major flattening of the image as non-negative reals.
std::vector<double> flatten_pixels(std::span<const std::uint8_t> image);

/// Keeps digits a and b (mapped to labels 0 and 1), encodes each image on n
/// qubits and shuffles with `seed`.
BinaryDataset make_binary(const RawDataset &raw, int a, int b, std::size_t num_qubits, std::uint64_t seed);

struct SplitSizes {
    std::size_t train;
    std::size_t val;
    std::size_t test;
};

struct Splits {
    BinaryDataset train;
    BinaryDataset val;
    BinaryDataset test;
};

/// Stratified partition into the given fractions, which must be positive
/// and sum to 1.
Splits split(const BinaryDataset &ds, std::array<double, 3> fractions);

/// Stratified selection of exact split sizes; samples beyond their sum are
/// left out. Per-class quotas use largest-remainder rounding.
Splits split_sizes(const BinaryDataset &ds, SplitSizes sizes);

} // namespace qcnn::data
