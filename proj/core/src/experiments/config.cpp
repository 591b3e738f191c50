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
#include "qcnn/experiments/config.hpp"

#include <charconv>
#include <cmath>
#include <functional>
#include <sstream>

#include "qcnn/train/checkpoint.hpp"

namespace qcnn::experiments {

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

template <typename T> T parse_number(const std::string &key, const std::string &text) {
    T value{};
    const auto *end = text.data() + text.size();
    const auto res = std::from_chars(text.data(), end, value);
    if (res.ec != std::errc() || res.ptr != end) {
        throw ConfigError("'" + key + "': cannot parse '" + text + "' as a number");
    }
    return value;
}

std::vector<std::string> split_list(const std::string &text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) {
            out.push_back(item);
        }
    }
    return out;
}

template <typename T> std::vector<T> parse_list(const std::string &key, const std::string &text) {
    std::vector<T> out;
    for (const auto &item : split_list(text)) {
        out.push_back(parse_number<T>(key, item));
    }
    return out;
}

template <typename T> std::string join(const std::vector<T> &values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) {
            out += ',';
        }
        if constexpr (std::is_floating_point_v<T>) {
            out += train::format_double(values[i]);
        } else {
            out += std::to_string(values[i]);
        }
    }
    return out;
}

std::string fmt(double v) { return train::format_double(v); }

/// Per-key readers and writers, kept in one table so parsing and
/// materializing never drift apart.
struct Field {
    std::function<void(RunConfig &, const std::string &)> read;
    std::function<std::string(const RunConfig &)> write;
};

template <typename T> Field number(T RunConfig::*member) {
    return {[member](RunConfig &c, const std::string &v) { c.*member = parse_number<T>("", v); },
            [member](const RunConfig &c) {
                if constexpr (std::is_floating_point_v<T>) {
                    return fmt(c.*member);
                } else {
                    return std::to_string(c.*member);
                }
            }};
}

template <typename Sub, typename T> Field nested(Sub RunConfig::*sub, T Sub::*member) {
    return {[sub, member](RunConfig &c, const std::string &v) { (c.*sub).*member = parse_number<T>("", v); },
            [sub, member](const RunConfig &c) {
                if constexpr (std::is_floating_point_v<T>) {
                    return fmt((c.*sub).*member);
                } else {
                    return std::to_string((c.*sub).*member);
                }
            }};
}

const std::map<std::string, Field> &fields() {
    static const std::map<std::string, Field> table = {
        {"qubits", number(&RunConfig::qubits)},
        {"amplitude_padding_length",
         {[](RunConfig &c, const std::string &v) {
              const auto len = parse_number<std::size_t>("", v);
              if (len != (std::size_t{1} << c.qubits)) {
                  throw ConfigError("must equal 2^qubits (" + std::to_string(std::size_t{1} << c.qubits) + ")");
              }
          },
          [](const RunConfig &c) { return std::to_string(std::size_t{1} << c.qubits); }}},
        {"survivor_targets",
         {[](RunConfig &c, const std::string &v) { c.survivor_targets = parse_list<std::size_t>("", v); },
          [](const RunConfig &c) { return join(c.schedule().survivor_targets); }}},
        {"pool_side",
         {[](RunConfig &c, const std::string &v) { c.pool_side = circuit::pool_side_from_string(v); },
          [](const RunConfig &c) { return std::string(circuit::to_string(c.pool_side)); }}},
        {"data_dir", {[](RunConfig &c, const std::string &v) { c.data_dir = v; },
                      [](const RunConfig &c) { return c.data_dir; }}},
        {"digits",
         {[](RunConfig &c, const std::string &v) {
              const auto d = parse_list<int>("", v);
              if (d.size() != 2) {
                  throw ConfigError("expected two digits, e.g. 0,7");
              }
              c.digit_a = d[0];
              c.digit_b = d[1];
          },
          [](const RunConfig &c) { return std::to_string(c.digit_a) + "," + std::to_string(c.digit_b); }}},
        {"train_size", number(&RunConfig::train_size)},
        {"val_size", number(&RunConfig::val_size)},
        {"test_size", number(&RunConfig::test_size)},
        {"split_seed", number(&RunConfig::split_seed)},
        {"initial_learning_rate", nested(&RunConfig::train, &train::TrainConfig::eta0)},
        {"decay_gamma", nested(&RunConfig::train, &train::TrainConfig::gamma)},
        {"decay_steps", nested(&RunConfig::train, &train::TrainConfig::decay_steps)},
        {"adam_beta1", nested(&RunConfig::train, &train::TrainConfig::beta1)},
        {"adam_beta2", nested(&RunConfig::train, &train::TrainConfig::beta2)},
        {"adam_epsilon", nested(&RunConfig::train, &train::TrainConfig::epsilon)},
        {"batch_size", nested(&RunConfig::train, &train::TrainConfig::batch_size)},
        {"training_epochs", nested(&RunConfig::train, &train::TrainConfig::epochs)},
        {"seed", nested(&RunConfig::train, &train::TrainConfig::seed)},
        {"observables",
         {[](RunConfig &c, const std::string &v) { c.train.cost_kind = train::cost_kind_from_string(v); },
          [](const RunConfig &c) { return std::string(train::to_string(c.train.cost_kind)); }}},
        {"differentiator",
         {[](RunConfig &c, const std::string &v) { c.train.gradient_method = train::gradient_method_from_string(v); },
          [](const RunConfig &c) { return std::string(train::to_string(c.train.gradient_method)); }}},
        {"init", {[](RunConfig &c, const std::string &v) { c.init = init_kind_from_string(v); },
                  [](const RunConfig &c) { return std::string(to_string(c.init)); }}},
        {"tni_bond_dimension", nested(&RunConfig::tni, &tni::TniConfig::chi)},
        {"tni_data_bond_dimension", nested(&RunConfig::tni, &tni::TniConfig::chi_data)},
        {"tni_pretrain_iterations", nested(&RunConfig::tni, &tni::TniConfig::iterations)},
        {"tni_subset_size", nested(&RunConfig::tni, &tni::TniConfig::subset_size)},
        {"tni_batch_size", nested(&RunConfig::tni, &tni::TniConfig::batch_size)},
        {"tni_learning_rate", nested(&RunConfig::tni, &tni::TniConfig::learning_rate)},
        {"tni_init_stddev", nested(&RunConfig::tni, &tni::TniConfig::init_stddev)},
        {"tni_differentiator",
         {[](RunConfig &c, const std::string &v) { c.tni.gradient_method = train::gradient_method_from_string(v); },
          [](const RunConfig &c) { return std::string(train::to_string(c.tni.gradient_method)); }}},
        {"n_min", number(&RunConfig::n_min)},
        {"n_max", number(&RunConfig::n_max)},
        {"n_step", number(&RunConfig::n_step)},
        {"samples_per_n", number(&RunConfig::samples_per_n)},
        {"variance_symbol", number(&RunConfig::variance_symbol)},
        {"variance_schedule", {[](RunConfig &c, const std::string &v) {
                                   if (v != "two-stage" && v != "standard") {
                                       throw ConfigError("expected two-stage or standard");
                                   }
                                   c.variance_schedule = v;
                               },
                               [](const RunConfig &c) { return c.variance_schedule; }}},
        {"variance_input",
         {[](RunConfig &c, const std::string &v) { c.variance_input = variance_input_from_string(v); },
          [](const RunConfig &c) { return std::string(to_string(c.variance_input)); }}},
        {"num_seeds", number(&RunConfig::num_seeds)},
        {"noise_levels",
         {[](RunConfig &c, const std::string &v) { c.noise_levels = parse_list<double>("", v); },
          [](const RunConfig &c) { return join(c.noise_levels); }}},
        {"checkpoint", {[](RunConfig &c, const std::string &v) { c.checkpoint = v; },
                        [](const RunConfig &c) { return c.checkpoint; }}},
        {"threads", number(&RunConfig::threads)},
    };
    return table;
}

/// Keys whose readers depend on others run last.
bool deferred(const std::string &key) { return key == "amplitude_padding_length"; }

} // namespace

ConfigFile ConfigFile::parse(std::string_view text, std::string source) {
    ConfigFile cfg;
    cfg.source_ = std::move(source);
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        const auto raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        auto line = std::string(raw);
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(cfg.source_ + ":" + std::to_string(line_no) + ": expected 'key = value'");
        }
        const auto key = trim(std::string_view(line).substr(0, eq));
        const auto value = trim(std::string_view(line).substr(eq + 1));
        if (key.empty()) {
            throw ConfigError(cfg.source_ + ":" + std::to_string(line_no) + ": empty key");
        }
        if (cfg.lines_.count(key) && cfg.lines_[key] != 0) {
            throw ConfigError(cfg.source_ + ":" + std::to_string(line_no) + ": duplicate key '" + key +
                              "' (first set on line " + std::to_string(cfg.lines_[key]) + ")");
        }
        cfg.set(key, value, line_no);
    }
    return cfg;
}

ConfigFile ConfigFile::load(const std::filesystem::path &path) {
    return parse(train::read_text_file(path), path.string());
}

void ConfigFile::set(const std::string &key, const std::string &value, std::size_t line) {
    values_[key] = value;
    lines_[key] = line;
}

std::string ConfigFile::where(const std::string &key) const {
    const auto it = lines_.find(key);
    if (it == lines_.end() || it->second == 0) {
        return "command line";
    }
    return source_ + ":" + std::to_string(it->second);
}

std::string_view to_string(InitKind kind) {
    switch (kind) {
    case InitKind::kTni:
        return "tni";
    case InitKind::kRandom:
        return "random";
    default:
        return "small";
    }
}

InitKind init_kind_from_string(std::string_view name) {
    if (name == "tni") {
        return InitKind::kTni;
    }
    if (name == "random") {
        return InitKind::kRandom;
    }
    if (name == "small") {
        return InitKind::kSmall;
    }
    throw ConfigError("unknown init '" + std::string(name) + "' (tni, random, small)");
}

std::string_view to_string(VarianceInput input) {
    return input == VarianceInput::kZero ? "zero" : "random-product";
}

VarianceInput variance_input_from_string(std::string_view name) {
    if (name == "zero") {
        return VarianceInput::kZero;
    }
    if (name == "random-product") {
        return VarianceInput::kRandomProduct;
    }
    throw ConfigError("unknown variance_input '" + std::string(name) + "' (zero, random-product)");
}

circuit::StageSchedule RunConfig::schedule() const {
    if (survivor_targets.empty()) {
        return circuit::StageSchedule::standard(qubits);
    }
    return circuit::StageSchedule{survivor_targets, pool_side};
}

circuit::StageSchedule RunConfig::variance_schedule_for(std::size_t n) const {
    if (variance_schedule == "standard") {
        return circuit::StageSchedule::standard(n);
    }
    if (variance_schedule == "two-stage") {
        // Fixed depth: one pooled pair in each of two stages at every n.
        return circuit::StageSchedule{{n - 1, n - 2}, pool_side};
    }
    throw ConfigError("unknown variance_schedule '" + variance_schedule + "'");
}

void RunConfig::validate() const {
    if (qubits < 2 || qubits > sim::kMaxQubits) {
        throw ConfigError("qubits must lie in [2, " + std::to_string(sim::kMaxQubits) + "]");
    }
    if (digit_a == digit_b) {
        throw ConfigError("digits must differ");
    }
    if (train_size == 0 || val_size == 0 || test_size == 0) {
        throw ConfigError("split sizes must be positive");
    }
    if (threads == 0) {
        throw ConfigError("threads must be at least 1");
    }
    train.validate();
    tni.validate();
    for (double p : noise_levels) {
        sim::NoiseConfig{p, true}.validate();
    }
}

std::map<std::string, std::string> RunConfig::to_map() const {
    std::map<std::string, std::string> out;
    for (const auto &[key, field] : fields()) {
        out[key] = field.write(*this);
    }
    return out;
}

std::string RunConfig::to_text() const {
    std::string out;
    for (const auto &[key, value] : to_map()) {
        out += key + " = " + value + "\n";
    }
    return out;
}

RunConfig RunConfig::from_file(const ConfigFile &file) {
    RunConfig cfg;
    const auto &table = fields();
    auto apply = [&](bool second_pass) {
        for (const auto &[key, value] : file.values()) {
            if (deferred(key) != second_pass) {
                continue;
            }
            const auto it = table.find(key);
            if (it == table.end()) {
                throw ConfigError(file.where(key) + ": unknown key '" + key + "'");
            }
            try {
                it->second.read(cfg, value);
            } catch (const ConfigError &e) {
                throw ConfigError(file.where(key) + ": '" + key + "': " + e.what());
            }
        }
    };
    apply(false);
    apply(true);
    return cfg;
}

RunConfig RunConfig::from_map(const std::map<std::string, std::string> &values) {
    ConfigFile file;
    for (const auto &[k, v] : values) {
        file.set(k, v, 0);
    }
    return from_file(file);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    // splitmix64 finalizer over the pair.
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

} // namespace qcnn::experiments
