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
 * IDX container reader for MNIST-style image and label files. Files may be
 * gzip-compressed or plain.
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "qcnn/error.hpp"

namespace qcnn::data {

inline constexpr std::uint32_t kImagesMagic = 0x00000803;
inline constexpr std::uint32_t kLabelsMagic = 0x00000801;
inline constexpr std::size_t kImageSide = 28;

class BadMagicError : public FormatError {
  public:
    using FormatError::FormatError;
};

class TruncatedError : public FormatError {
  public:
    using FormatError::FormatError;
};

class CountMismatchError : public FormatError {
  public:
    using FormatError::FormatError;
};

struct RawDataset {
    std::size_t rows = kImageSide;
    std::size_t cols = kImageSide;
    std::vector<std::uint8_t> pixels;
    std::vector<std::uint8_t> labels;

    std::size_t size() const { return labels.size(); }
    std::span<const std::uint8_t> image(std::size_t i) const;
};

struct IdxImages {
    std::size_t count = 0;
    std::vector<std::uint8_t> pixels;
};

IdxImages parse_idx_images(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> parse_idx_labels(std::span<const std::uint8_t> bytes);

/// Whole file contents, inflating gzip transparently.
std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path &path);

RawDataset load_idx(const std::filesystem::path &images_path, const std::filesystem::path &labels_path);

struct MnistFiles {
    std::filesystem::path images;
    std::filesystem::path labels;
};

/// Finds train-images-idx3-ubyte and train-labels-idx1-ubyte, with or
/// without a .gz suffix, inside `dir`.
MnistFiles locate_mnist(const std::filesystem::path &dir);

} // namespace qcnn::data
