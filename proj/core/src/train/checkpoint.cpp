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
#include "qcnn/train/checkpoint.hpp"

#include <json.hpp>

#include <charconv>
#include <fstream>
#include <sstream>

namespace qcnn::train {

namespace {

using nlohmann::json;

json keyed(std::span<const double> values) {
    json obj = json::object();
    for (std::size_t i = 0; i < values.size(); ++i) {
        obj[std::to_string(i)] = values[i];
    }
    return obj;
}

std::vector<double> unkeyed(const json &obj, std::size_t count, const char *what) {
    if (!obj.is_object() || obj.size() != count) {
        throw FormatError(std::string("checkpoint: '") + what + "' must hold " + std::to_string(count) +
                          " indexed entries");
    }
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i) {
        const auto it = obj.find(std::to_string(i));
        if (it == obj.end() || !it->is_number()) {
            throw FormatError(std::string("checkpoint: '") + what + "' is missing index " + std::to_string(i));
        }
        out[i] = it->get<double>();
    }
    return out;
}

} // namespace

std::string checkpoint_to_json(const Checkpoint &ckpt) {
    json doc;
    doc["format"] = "qcnn-checkpoint";
    doc["version"] = 1;
    doc["num_parameters"] = ckpt.theta.size();
    doc["theta"] = keyed(ckpt.theta.values());
    if (ckpt.optimizer) {
        doc["optimizer"] = {{"t", ckpt.optimizer->t},
                            {"m", keyed(ckpt.optimizer->m)},
                            {"v", keyed(ckpt.optimizer->v)}};
    }
    doc["tags"] = ckpt.tags;
    return doc.dump(2) + "\n";
}

Checkpoint checkpoint_from_json(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error &e) {
        throw FormatError(std::string("checkpoint: ") + e.what());
    }
    if (doc.value("format", "") != "qcnn-checkpoint" || doc.value("version", 0) != 1) {
        throw FormatError("checkpoint: not a version-1 qcnn checkpoint");
    }
    try {
        const auto count = doc.at("num_parameters").get<std::size_t>();
        Checkpoint ckpt;
        ckpt.theta = circuit::ParameterVector(unkeyed(doc.at("theta"), count, "theta"));
        if (doc.contains("optimizer")) {
            const auto &o = doc["optimizer"];
            ckpt.optimizer = OptimizerState{unkeyed(o.at("m"), count, "m"), unkeyed(o.at("v"), count, "v"),
                                            o.at("t").get<std::size_t>()};
        }
        if (doc.contains("tags")) {
            ckpt.tags = doc["tags"].get<std::map<std::string, std::string>>();
        }
        return ckpt;
    } catch (const json::exception &e) {
        throw FormatError(std::string("checkpoint: ") + e.what());
    }
}

void save_checkpoint(const std::filesystem::path &path, const Checkpoint &ckpt) {
    write_text_file(path, checkpoint_to_json(ckpt));
}

Checkpoint load_checkpoint(const std::filesystem::path &path) {
    return checkpoint_from_json(read_text_file(path));
}

std::string format_double(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

std::string metrics_csv(std::span<const EpochMetrics> metrics) {
    std::string out = "# schema_version=" + std::to_string(kCsvSchemaVersion) + "\n";
    out += "epoch,train_loss,val_loss,train_acc,val_acc,grad_norm\n";
    for (const auto &m : metrics) {
        out += std::to_string(m.epoch) + ',' + format_double(m.train_loss) + ',' + format_double(m.val_loss) +
               ',' + format_double(m.train_acc) + ',' + format_double(m.val_acc) + ',' +
               format_double(m.grad_norm) + '\n';
    }
    return out;
}

std::string read_text_file(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("cannot open " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::filesystem::path &path, std::string_view text) {
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error("cannot write " + path.string());
    }
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) {
        throw Error("write failed for " + path.string());
    }
}

} // namespace qcnn::train
