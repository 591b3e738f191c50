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
#include "qcnn/data/idx.hpp"

#include <zlib.h>

#include <memory>
#include <string>

namespace qcnn::data {

namespace {

std::uint32_t read_be32(std::span<const std::uint8_t> bytes, std::size_t offset) {
    return (std::uint32_t{bytes[offset]} << 24) | (std::uint32_t{bytes[offset + 1]} << 16) |
           (std::uint32_t{bytes[offset + 2]} << 8) | std::uint32_t{bytes[offset + 3]};
}

std::string hex(std::uint32_t v) {
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string s = "0x";
    for (int shift = 28; shift >= 0; shift -= 4) {
        s += kDigits[(v >> shift) & 0xf];
    }
    return s;
}

void need(std::span<const std::uint8_t> bytes, std::size_t size, const char *what) {
    if (bytes.size() < size) {
        throw TruncatedError(std::string(what) + ": expected " + std::to_string(size) + " bytes, found " +
                             std::to_string(bytes.size()));
    }
}

} // namespace

std::span<const std::uint8_t> RawDataset::image(std::size_t i) const {
    if (i >= size()) {
        throw DimensionError("image index out of range");
    }
    return std::span<const std::uint8_t>(pixels).subspan(i * rows * cols, rows * cols);
}

IdxImages parse_idx_images(std::span<const std::uint8_t> bytes) {
    need(bytes, 16, "idx images header");
    const auto magic = read_be32(bytes, 0);
    if (magic != kImagesMagic) {
        throw BadMagicError("idx images: magic " + hex(magic) + ", expected " + hex(kImagesMagic));
    }
    const std::size_t count = read_be32(bytes, 4);
    const std::size_t rows = read_be32(bytes, 8);
    const std::size_t cols = read_be32(bytes, 12);
    if (rows != kImageSide || cols != kImageSide) {
        throw FormatError("idx images: dimensions " + std::to_string(rows) + "x" + std::to_string(cols) +
                          ", expected 28x28");
    }
    const std::size_t payload = count * rows * cols;
    need(bytes, 16 + payload, "idx images payload");
    return IdxImages{count, std::vector<std::uint8_t>(bytes.begin() + 16,
                                                      bytes.begin() + static_cast<std::ptrdiff_t>(16 + payload))};
}

std::vector<std::uint8_t> parse_idx_labels(std::span<const std::uint8_t> bytes) {
    need(bytes, 8, "idx labels header");
    const auto magic = read_be32(bytes, 0);
    if (magic != kLabelsMagic) {
        throw BadMagicError("idx labels: magic " + hex(magic) + ", expected " + hex(kLabelsMagic));
    }
    const std::size_t count = read_be32(bytes, 4);
    need(bytes, 8 + count, "idx labels payload");
    std::vector<std::uint8_t> labels(bytes.begin() + 8, bytes.begin() + static_cast<std::ptrdiff_t>(8 + count));
    for (auto l : labels) {
        if (l > 9) {
            throw FormatError("idx labels: label " + std::to_string(l) + " outside 0-9");
        }
    }
    return labels;
}

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path &path) {
    struct Closer {
        void operator()(gzFile f) const { gzclose(f); }
    };
    std::unique_ptr<gzFile_s, Closer> file(gzopen(path.string().c_str(), "rb"));
    if (!file) {
        throw Error("cannot open " + path.string());
    }
    std::vector<std::uint8_t> out;
    std::uint8_t buf[1 << 16];
    for (;;) {
        const int got = gzread(file.get(), buf, sizeof buf);
        if (got < 0) {
            int code = 0;
            throw FormatError("read error in " + path.string() + ": " + gzerror(file.get(), &code));
        }
        if (got == 0) {
            break;
        }
        out.insert(out.end(), buf, buf + got);
    }
    return out;
}

RawDataset load_idx(const std::filesystem::path &images_path, const std::filesystem::path &labels_path) {
    auto images = parse_idx_images(read_file_bytes(images_path));
    auto labels = parse_idx_labels(read_file_bytes(labels_path));
    if (images.count != labels.size()) {
        throw CountMismatchError("idx: " + std::to_string(images.count) + " images but " +
                                 std::to_string(labels.size()) + " labels");
    }
    RawDataset raw;
    raw.pixels = std::move(images.pixels);
    raw.labels = std::move(labels);
    return raw;
}

MnistFiles locate_mnist(const std::filesystem::path &dir) {
    auto find = [&](const std::string &stem) {
        for (const auto &name : {stem, stem + ".gz"}) {
            const auto p = dir / name;
            if (std::filesystem::exists(p)) {
                return p;
            }
        }
        throw Error("no " + stem + "[.gz] in " + dir.string());
    };
    return MnistFiles{find("train-images-idx3-ubyte"), find("train-labels-idx1-ubyte")};
}

} // namespace qcnn::data
