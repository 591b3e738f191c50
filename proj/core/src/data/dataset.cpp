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
#include "qcnn/data/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

namespace qcnn::data {

namespace {

/// Splits `total` into parts proportional to `weights`, rounding by largest
/// remainder so the parts sum to `total` exactly.
std::vector<std::size_t> apportion(std::size_t total, std::span<const std::size_t> weights) {
    const std::size_t sum = std::accumulate(weights.begin(), weights.end(), std::size_t{0});
    std::vector<std::size_t> parts(weights.size());
    std::vector<std::pair<double, std::size_t>> remainders;
    std::size_t assigned = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        const double exact = static_cast<double>(total) * static_cast<double>(weights[i]) / static_cast<double>(sum);
        parts[i] = static_cast<std::size_t>(std::floor(exact));
        assigned += parts[i];
        remainders.emplace_back(exact - std::floor(exact), i);
    }
    std::stable_sort(remainders.begin(), remainders.end(),
                     [](const auto &x, const auto &y) { return x.first > y.first; });
    for (std::size_t k = 0; assigned < total; ++k, ++assigned) {
        ++parts[remainders[k % remainders.size()].second];
    }
    return parts;
}

BinaryDataset empty_like(const BinaryDataset &ds) {
    BinaryDataset out;
    out.class_pair = ds.class_pair;
    out.split_seed = ds.split_seed;
    return out;
}

} // namespace

std::array<std::size_t, 2> BinaryDataset::class_counts() const {
    std::array<std::size_t, 2> counts{0, 0};
    for (const auto &s : samples) {
        ++counts[static_cast<std::size_t>(s.label)];
    }
    return counts;
}

std::vector<double> flatten_pixels(std::span<const std::uint8_t> image) {
    return std::vector<double>(image.begin(), image.end());
}

BinaryDataset make_binary(const RawDataset &raw, int a, int b, std::size_t num_qubits, std::uint64_t seed) {
    if (a == b) {
        throw ConfigError("make_binary: class digits must differ");
    }
    if (a < 0 || a > 9 || b < 0 || b > 9) {
        throw ConfigError("make_binary: digits must lie in 0-9");
    }
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (raw.labels[i] == a || raw.labels[i] == b) {
            keep.push_back(i);
        }
    }
    std::mt19937_64 rng(seed);
    std::shuffle(keep.begin(), keep.end(), rng);

    BinaryDataset ds;
    ds.class_pair = {a, b};
    ds.split_seed = seed;
    ds.samples.reserve(keep.size());
    for (auto i : keep) {
        const int label = raw.labels[i] == a ? 0 : 1;
        const auto pixels = flatten_pixels(raw.image(i));
        ds.samples.push_back(circuit::amplitude_encode(pixels, num_qubits, label));
        ds.source_index.push_back(i);
    }
    const auto counts = ds.class_counts();
    if (counts[0] == 0 || counts[1] == 0) {
        throw ConfigError("make_binary: no samples of digit " + std::to_string(counts[0] == 0 ? a : b));
    }
    return ds;
}

Splits split(const BinaryDataset &ds, std::array<double, 3> fractions) {
    for (double f : fractions) {
        if (!(f > 0.0)) {
            throw ConfigError("split: fractions must be positive");
        }
    }
    if (std::abs(fractions[0] + fractions[1] + fractions[2] - 1.0) > 1e-9) {
        throw ConfigError("split: fractions must sum to 1");
    }
    const auto n = static_cast<double>(ds.size());
    const auto train = static_cast<std::size_t>(std::llround(fractions[0] * n));
    const auto val = std::min(ds.size() - train, static_cast<std::size_t>(std::llround(fractions[1] * n)));
    return split_sizes(ds, {train, val, ds.size() - train - val});
}

Splits split_sizes(const BinaryDataset &ds, SplitSizes sizes) {
    const std::size_t wanted = sizes.train + sizes.val + sizes.test;
    if (wanted > ds.size()) {
        throw ConfigError("split: asked for " + std::to_string(wanted) + " samples, dataset has " +
                          std::to_string(ds.size()));
    }
    const auto counts = ds.class_counts();
    // quota[c][part]: each part is shared across classes by the global ratio.
    std::array<std::array<std::size_t, 3>, 2> quota{};
    const std::array<std::size_t, 3> totals{sizes.train, sizes.val, sizes.test};
    for (std::size_t part = 0; part < 3; ++part) {
        const auto per_class = apportion(totals[part], counts);
        quota[0][part] = per_class[0];
        quota[1][part] = per_class[1];
    }
    for (std::size_t c = 0; c < 2; ++c) {
        if (quota[c][0] + quota[c][1] + quota[c][2] > counts[c]) {
            throw ConfigError("split: not enough samples of class " + std::to_string(c));
        }
    }

    Splits out{empty_like(ds), empty_like(ds), empty_like(ds)};
    BinaryDataset *targets[3] = {&out.train, &out.val, &out.test};
    std::array<std::size_t, 2> seen{0, 0};
    for (std::size_t i = 0; i < ds.size(); ++i) {
        const auto c = static_cast<std::size_t>(ds.samples[i].label);
        const std::size_t k = seen[c]++;
        std::size_t part = 0;
        std::size_t edge = quota[c][0];
        while (part < 3 && k >= edge) {
            ++part;
            if (part < 3) {
                edge += quota[c][part];
            }
        }
        if (part == 3) {
            continue;
        }
        targets[part]->samples.push_back(ds.samples[i]);
        if (!ds.source_index.empty()) {
            targets[part]->source_index.push_back(ds.source_index[i]);
        }
    }
    return out;
}

} // namespace qcnn::data
