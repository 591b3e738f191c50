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
#include "qcnn/data/cache.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <string>

namespace qcnn::data {

namespace {

constexpr char kMagic[4] = {'Q', 'C', 'D', 'S'};
constexpr std::size_t kHeaderSize = 16;

void put_le(std::vector<std::uint8_t> &out, std::uint64_t v, int bytes) {
    for (int i = 0; i < bytes; ++i) {
        out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    }
}

std::uint64_t get_le(std::span<const std::uint8_t> in, std::size_t offset, int bytes) {
    std::uint64_t v = 0;
    for (int i = 0; i < bytes; ++i) {
        v |= std::uint64_t{in[offset + static_cast<std::size_t>(i)]} << (8 * i);
    }
    return v;
}

} // namespace

std::vector<std::uint8_t> encode_cache(const BinaryDataset &ds) {
    if (ds.samples.empty()) {
        throw ConfigError("cache: empty dataset");
    }
    const std::size_t n = ds.samples.front().num_qubits();
    const std::size_t dim = std::size_t{1} << n;
    std::vector<std::uint8_t> out(kMagic, kMagic + 4);
    put_le(out, kCacheVersion, 2);
    put_le(out, static_cast<std::uint64_t>(ds.class_pair.first), 1);
    put_le(out, static_cast<std::uint64_t>(ds.class_pair.second), 1);
    put_le(out, ds.samples.size(), 4);
    put_le(out, n, 4);
    out.reserve(kHeaderSize + ds.samples.size() * (dim + 1) * 8);
    for (const auto &s : ds.samples) {
        if (s.amplitudes.size() != dim) {
            throw DimensionError("cache: samples disagree on qubit count");
        }
        put_le(out, std::bit_cast<std::uint64_t>(static_cast<double>(s.label)), 8);
        for (double a : s.amplitudes) {
            put_le(out, std::bit_cast<std::uint64_t>(a), 8);
        }
    }
    return out;
}

BinaryDataset decode_cache(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < kHeaderSize) {
        throw FormatError("cache: truncated header");
    }
    if (std::memcmp(bytes.data(), kMagic, 4) != 0) {
        throw FormatError("cache: bad magic");
    }
    const auto version = get_le(bytes, 4, 2);
    if (version != kCacheVersion) {
        throw FormatError("cache: unsupported version " + std::to_string(version));
    }
    BinaryDataset ds;
    ds.class_pair = {static_cast<int>(bytes[6]), static_cast<int>(bytes[7])};
    const auto count = static_cast<std::size_t>(get_le(bytes, 8, 4));
    const auto n = static_cast<std::size_t>(get_le(bytes, 12, 4));
    if (n == 0 || n > 20) {
        throw FormatError("cache: qubit count " + std::to_string(n) + " out of range");
    }
    const std::size_t dim = std::size_t{1} << n;
    if (bytes.size() != kHeaderSize + count * (dim + 1) * 8) {
        throw FormatError("cache: payload size does not match the header");
    }
    std::size_t offset = kHeaderSize;
    auto next = [&] {
        const double v = std::bit_cast<double>(get_le(bytes, offset, 8));
        offset += 8;
        return v;
    };
    ds.samples.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        circuit::EncodedSample s;
        const double label = next();
        if (label != 0.0 && label != 1.0) {
            throw FormatError("cache: label must be 0 or 1");
        }
        s.label = static_cast<int>(label);
        s.amplitudes.resize(dim);
        for (auto &a : s.amplitudes) {
            a = next();
        }
        ds.samples.push_back(std::move(s));
    }
    return ds;
}

void save_cache(const std::filesystem::path &path, const BinaryDataset &ds) {
    const auto bytes = encode_cache(ds);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error("cannot write " + path.string());
    }
    out.write(reinterpret_cast<const char *>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

BinaryDataset load_cache(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("cannot open " + path.string());
    }
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return decode_cache(bytes);
}

} // namespace qcnn::data
