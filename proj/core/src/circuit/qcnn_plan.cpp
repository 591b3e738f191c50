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
#include "qcnn/circuit/qcnn_plan.hpp"

#include <json.hpp>

#include <algorithm>
#include <string>

#include "qcnn/sim/state_vector.hpp"

namespace qcnn::circuit {

using nlohmann::json;

std::string_view to_string(PoolSide side) {
    return side == PoolSide::kLeading ? "leading" : "trailing";
}

PoolSide pool_side_from_string(std::string_view name) {
    if (name == "leading") {
        return PoolSide::kLeading;
    }
    if (name == "trailing") {
        return PoolSide::kTrailing;
    }
    throw ConfigError("unknown pool side '" + std::string(name) + "'");
}

StageSchedule StageSchedule::halving(std::size_t num_qubits, std::size_t terminal, PoolSide side) {
    StageSchedule s{{}, side};
    std::size_t active = num_qubits;
    while (active > terminal) {
        active = std::max((active + 1) / 2, terminal);
        s.survivor_targets.push_back(active);
    }
    return s;
}

StageSchedule StageSchedule::one_pair_per_stage(std::size_t num_qubits, std::size_t terminal,
                                                PoolSide side) {
    StageSchedule s{{}, side};
    for (std::size_t active = num_qubits; active > terminal;) {
        s.survivor_targets.push_back(--active);
    }
    return s;
}

StageSchedule StageSchedule::standard(std::size_t num_qubits) {
    return one_pair_per_stage(num_qubits, (num_qubits + 1) / 2, PoolSide::kTrailing);
}

std::size_t QcnnPlan::block_count() const {
    std::size_t count = 0;
    for (const auto &st : stages_) {
        count += st.even.pairs.size() + st.pools.size();
        if (st.offset) {
            count += st.offset->pairs.size();
        }
    }
    return count;
}

QcnnPlan::QcnnPlan(std::size_t num_qubits, StageSchedule schedule, std::vector<Stage> stages)
    : num_qubits_(num_qubits), schedule_(std::move(schedule)), stages_(std::move(stages)) {
    if (stages_.empty()) {
        throw ConfigError("plan has no stages");
    }
    std::size_t symbols = 0;
    for (const auto &st : stages_) {
        symbols += 4 + (st.offset ? 4 : 0) + 1;
    }
    total_parameters_ = symbols;
}

std::vector<std::string> QcnnPlan::sharing_map() const {
    std::vector<std::string> roles(total_parameters_);
    static constexpr const char *kConvRoles[4] = {"rx_a", "rx_b", "ry_a", "ry_b"};
    for (std::size_t s = 0; s < stages_.size(); ++s) {
        const auto &st = stages_[s];
        const std::string prefix = "stage" + std::to_string(s) + "/";
        for (std::size_t k = 0; k < 4; ++k) {
            roles[st.even.symbols[k]] = prefix + "even/" + kConvRoles[k];
            if (st.offset) {
                roles[st.offset->symbols[k]] = prefix + "offset/" + kConvRoles[k];
            }
        }
        roles[st.pool_symbol] = prefix + "pool/ry";
    }
    return roles;
}

Circuit QcnnPlan::compile() const {
    Circuit c(num_qubits_, total_parameters_);
    for (std::size_t s = 0; s < stages_.size(); ++s) {
        const auto &st = stages_[s];
        for (const auto &[a, b] : st.even.pairs) {
            c.append_block(BlockKind::kConv, a, b, conv_block(a, b, st.even.symbols), s);
        }
        if (st.offset) {
            for (const auto &[a, b] : st.offset->pairs) {
                c.append_block(BlockKind::kConv, a, b, conv_block(a, b, st.offset->symbols), s);
            }
        }
        for (const auto &pp : st.pools) {
            const auto pb = pool_block(pp.control, pp.target, st.pool_symbol);
            c.append_block(BlockKind::kPool, pp.control, pp.target, pb.ops, s);
        }
        for (const auto &pp : st.pools) {
            c.discard(pp.control);
        }
    }
    return c;
}

Qcnn build_qcnn(std::size_t num_qubits, const StageSchedule &schedule) {
    if (num_qubits < 2 || num_qubits > sim::kMaxQubits) {
        throw ConfigError("build_qcnn: qubit count " + std::to_string(num_qubits) +
                          " outside [2, " + std::to_string(sim::kMaxQubits) + "]");
    }
    if (schedule.survivor_targets.empty()) {
        throw ConfigError("build_qcnn: schedule has no pooling stages");
    }
    std::vector<std::size_t> active(num_qubits);
    for (std::size_t q = 0; q < num_qubits; ++q) {
        active[q] = q;
    }
    std::vector<Stage> stages;
    std::size_t next_symbol = 0;
    for (std::size_t target : schedule.survivor_targets) {
        const std::size_t a = active.size();
        const std::size_t even_pairs = a / 2;
        if (target >= a) {
            throw ConfigError("build_qcnn: survivor target " + std::to_string(target) +
                              " does not shrink " + std::to_string(a) + " active qubits");
        }
        if (target < 1 || a - target > even_pairs) {
            throw ConfigError("build_qcnn: cannot pool " + std::to_string(a) + " active qubits down to " +
                              std::to_string(target));
        }
        Stage st;
        st.active = active;
        for (std::size_t i = 0; i + 1 < a; i += 2) {
            st.even.pairs.push_back({active[i], active[i + 1]});
        }
        st.even.symbols = {next_symbol, next_symbol + 1, next_symbol + 2, next_symbol + 3};
        next_symbol += 4;
        if (a >= 3) {
            ConvSubLayer off;
            for (std::size_t i = 1; i + 1 < a; i += 2) {
                off.pairs.push_back({active[i], active[i + 1]});
            }
            off.symbols = {next_symbol, next_symbol + 1, next_symbol + 2, next_symbol + 3};
            next_symbol += 4;
            st.offset = std::move(off);
        }
        const std::size_t pooled = a - target;
        const std::size_t first_pair = schedule.side == PoolSide::kLeading ? 0 : even_pairs - pooled;
        for (std::size_t k = first_pair; k < first_pair + pooled; ++k) {
            st.pools.push_back({active[2 * k], active[2 * k + 1]});
        }
        st.pool_symbol = next_symbol++;
        std::vector<std::size_t> next;
        for (auto q : active) {
            const bool gone = std::any_of(st.pools.begin(), st.pools.end(),
                                          [q](const PoolPair &p) { return p.control == q; });
            if (!gone) {
                next.push_back(q);
            }
        }
        st.survivors = next;
        active = std::move(next);
        stages.push_back(std::move(st));
    }
    QcnnPlan plan(num_qubits, schedule, std::move(stages));
    Circuit circuit = plan.compile();
    return {std::move(plan), std::move(circuit)};
}

namespace {

json sub_layer_json(const ConvSubLayer &l) {
    json pairs = json::array();
    for (const auto &[a, b] : l.pairs) {
        pairs.push_back({a, b});
    }
    return {{"pairs", pairs}, {"symbols", l.symbols}};
}

} // namespace

std::string QcnnPlan::to_json() const {
    json stages = json::array();
    for (const auto &st : stages_) {
        json pools = json::array();
        for (const auto &p : st.pools) {
            pools.push_back({{"control", p.control}, {"target", p.target}});
        }
        stages.push_back({{"active", st.active},
                          {"conv_even", sub_layer_json(st.even)},
                          {"conv_offset", st.offset ? sub_layer_json(*st.offset) : json(nullptr)},
                          {"pool", {{"pairs", pools}, {"symbol", st.pool_symbol}}},
                          {"survivors", st.survivors}});
    }
    json doc = {{"format", "qcnn-plan"},
                {"version", 1},
                {"num_qubits", num_qubits_},
                {"schedule",
                 {{"survivor_targets", schedule_.survivor_targets},
                  {"pool_side", std::string(to_string(schedule_.side))}}},
                {"stages", stages},
                {"sharing_map", sharing_map()},
                {"total_parameters", total_parameters_}};
    return doc.dump(2);
}

QcnnPlan QcnnPlan::from_json(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error &e) {
        throw FormatError(std::string("plan JSON: ") + e.what());
    }
    try {
        if (doc.at("format") != "qcnn-plan" || doc.at("version") != 1) {
            throw FormatError("plan JSON: unsupported format/version");
        }
        StageSchedule sched{doc.at("schedule").at("survivor_targets").get<std::vector<std::size_t>>(),
                            pool_side_from_string(
                                doc.at("schedule").at("pool_side").get<std::string>())};
        auto built = build_qcnn(doc.at("num_qubits").get<std::size_t>(), sched);
        if (json::parse(built.plan.to_json()) != doc) {
            throw FormatError("plan JSON: stored layout disagrees with its schedule");
        }
        return std::move(built.plan);
    } catch (const json::exception &e) {
        throw FormatError(std::string("plan JSON: ") + e.what());
    }
}

} // namespace qcnn::circuit
