// Copyright 2026 the solmig authors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "solmig/analysis.hpp"
#include "solmig/errors.hpp"
#include "solmig/json.hpp"
#include "solmig/state.hpp"
#include "solmig/u256.hpp"

namespace solmig {

// Per-transaction gas accounting. Defaults are the canonical EVM figures:
// 21000 intrinsic, 22100 for a cold zero->nonzero store, 16 per calldata
// byte (a slot write ships 64 bytes of calldata).
struct GasModel {
    uint64_t tx_base = 21000;
    uint64_t per_slot_write = 22100;
    uint64_t per_calldata_byte = 16;

    uint64_t write_cost() const { return per_slot_write + 64 * per_calldata_byte; }
    uint64_t batch_cost(uint64_t n_writes) const { return tx_base + n_writes * write_cost(); }
};

// A data element with its migration rank: min priority rank over dependent
// functions, no rank when nothing depends on it.
struct RankedElement {
    std::string label;
    std::optional<uint32_t> rank;
    uint32_t decl_index = 0;
};

struct Batch {
    uint32_t index = 0; // 1-based
    std::vector<std::pair<Bytes32, Bytes32>> writes;
    std::vector<std::string> completes; // variables fully migrated by this batch
    uint64_t gas_cost = 0;
};

struct MigrationPlan {
    uint64_t gas_limit = 0;
    uint64_t total_gas = 0;
    std::vector<RankedElement> element_order;
    std::vector<Batch> batches;
    std::string source_address; // 0x + 40 hex, zero address when unset
    std::string target_address;

    std::vector<std::pair<Bytes32, Bytes32>> all_writes() const {
        std::vector<std::pair<Bytes32, Bytes32>> out;
        for (const Batch& b : batches)
            out.insert(out.end(), b.writes.begin(), b.writes.end());
        return out;
    }

    // Batch index completing each variable; 0 for variables with no slots.
    std::map<std::string, uint32_t> completion_batches() const {
        std::map<std::string, uint32_t> out;
        for (const RankedElement& e : element_order)
            out[e.label] = 0;
        for (const Batch& b : batches)
            for (const std::string& label : b.completes)
                out[label] = b.index;
        return out;
    }
};

// rank(d) = min{ rank(f) : matrix[f][d] = 1 }, unset if no function depends
// on d. Elements come back sorted by ascending rank, declaration order on
// ties and for rankless elements.
inline std::vector<RankedElement> order_data_elements(const DependencyMatrix& matrix,
                                                      const PriorityVector& priority) {
    if (matrix.functions.size() != priority.entries.size())
        throw PlanError("matrix and priority vector cover different function sets");
    for (size_t f = 0; f < matrix.functions.size(); ++f)
        if (matrix.functions[f] != priority.entries[f].function)
            throw PlanError("matrix and priority vector cover different function sets");

    std::vector<RankedElement> elements;
    for (size_t d = 0; d < matrix.data_elements.size(); ++d) {
        RankedElement e;
        e.label = matrix.data_elements[d];
        e.decl_index = (uint32_t)d;
        uint32_t best = std::numeric_limits<uint32_t>::max();
        for (size_t f = 0; f < matrix.functions.size(); ++f)
            if (matrix.cells[f][d])
                best = std::min(best, priority.entries[f].rank);
        if (best != std::numeric_limits<uint32_t>::max())
            e.rank = best;
        elements.push_back(std::move(e));
    }
    std::stable_sort(elements.begin(), elements.end(),
                     [](const RankedElement& a, const RankedElement& b) {
                         uint64_t ra = a.rank ? *a.rank : std::numeric_limits<uint64_t>::max();
                         uint64_t rb = b.rank ? *b.rank : std::numeric_limits<uint64_t>::max();
                         if (ra != rb)
                             return ra < rb;
                         return a.decl_index < b.decl_index;
                     });
    return elements;
}

// Orders shards by their members' best element rank; composite shards take
// the minimum over members. Ties resolve to declaration order.
inline std::vector<Shard> order_shards(std::vector<Shard> shards,
                                       const std::vector<RankedElement>& ranked) {
    std::map<std::string, uint64_t> rank_of;
    for (const RankedElement& e : ranked)
        rank_of[e.label] = e.rank ? *e.rank : std::numeric_limits<uint64_t>::max();

    auto shard_rank = [&](const Shard& s) {
        uint64_t best = std::numeric_limits<uint64_t>::max();
        for (const std::string& m : s.members) {
            auto it = rank_of.find(m);
            if (it == rank_of.end())
                throw PlanError("shard member '" + m + "' missing from element order");
            best = std::min(best, it->second);
        }
        return best;
    };

    std::stable_sort(shards.begin(), shards.end(), [&](const Shard& a, const Shard& b) {
        uint64_t ra = shard_rank(a), rb = shard_rank(b);
        if (ra != rb)
            return ra < rb;
        return a.decl_index < b.decl_index;
    });
    return shards;
}

// Order-preserving first-fit packing of shard slot writes into gas-limited
// batches. Oversized shards split across batches; small consecutive shards
// share one. Element order is never permuted.
inline MigrationPlan pack_batches(const std::vector<Shard>& ordered_shards,
                                  const std::vector<RankedElement>& element_order,
                                  const GasModel& gas, uint64_t gas_limit,
                                  std::optional<uint32_t> max_slots_per_batch = {}) {
    uint64_t min_feasible = gas.tx_base + gas.write_cost();
    if (gas_limit < min_feasible)
        throw PlanError("gas limit " + std::to_string(gas_limit) +
                        " cannot fit a single slot write; minimum feasible limit is " +
                        std::to_string(min_feasible));
    if (max_slots_per_batch && *max_slots_per_batch == 0)
        throw ConfigError("max slots per batch must be positive");

    MigrationPlan plan;
    plan.gas_limit = gas_limit;
    plan.element_order = element_order;
    plan.source_address = "0x0000000000000000000000000000000000000000";
    plan.target_address = "0x0000000000000000000000000000000000000000";

    Batch current;
    current.index = 1;
    current.gas_cost = gas.tx_base;

    auto flush = [&]() {
        if (current.writes.empty())
            return;
        plan.total_gas += current.gas_cost;
        uint32_t next = current.index + 1;
        plan.batches.push_back(std::move(current));
        current = Batch{};
        current.index = next;
        current.gas_cost = gas.tx_base;
    };

    for (const Shard& shard : ordered_shards) {
        for (size_t i = 0; i < shard.slots.size(); ++i) {
            bool over_gas = current.gas_cost + gas.write_cost() > gas_limit;
            bool over_count =
                max_slots_per_batch && current.writes.size() >= *max_slots_per_batch;
            if (!current.writes.empty() && (over_gas || over_count))
                flush();
            current.writes.push_back(shard.slots[i]);
            current.gas_cost += gas.write_cost();
            if (i + 1 == shard.slots.size())
                for (const std::string& m : shard.members)
                    current.completes.push_back(m);
        }
        // empty shards (all-zero variables) are complete before any batch
    }
    flush();
    return plan;
}

// First batch index after which all of a function's data dependencies are
// complete; 0 for dependency-free functions.
inline std::map<std::string, uint32_t> activation_map(const MigrationPlan& plan,
                                                      const DependencyMatrix& matrix) {
    std::map<std::string, uint32_t> completion = plan.completion_batches();
    std::map<std::string, uint32_t> out;
    for (size_t f = 0; f < matrix.functions.size(); ++f) {
        uint32_t batch = 0;
        for (size_t d = 0; d < matrix.data_elements.size(); ++d) {
            if (!matrix.cells[f][d])
                continue;
            auto it = completion.find(matrix.data_elements[d]);
            if (it == completion.end())
                throw PlanError("element '" + matrix.data_elements[d] +
                                "' required by '" + matrix.functions[f] +
                                "' is absent from the plan");
            batch = std::max(batch, it->second);
        }
        out[matrix.functions[f]] = batch;
    }
    return out;
}

// ---- plan JSON ----

inline Json plan_to_json(const MigrationPlan& plan) {
    Json j;
    j["gas_limit"] = plan.gas_limit;
    j["total_gas"] = plan.total_gas;
    Json order = Json::array();
    for (const RankedElement& e : plan.element_order) {
        Json entry;
        entry["label"] = e.label;
        if (e.rank)
            entry["rank"] = *e.rank;
        else
            entry["rank"] = nullptr;
        order.push_back(std::move(entry));
    }
    j["element_order"] = std::move(order);
    Json batches = Json::array();
    for (const Batch& b : plan.batches) {
        Json jb;
        jb["index"] = b.index;
        jb["gas_cost"] = b.gas_cost;
        Json writes = Json::array();
        for (const auto& [slot, value] : b.writes) {
            Json w;
            w["slot"] = hex::to_hex(slot);
            w["value"] = hex::to_hex(value);
            writes.push_back(std::move(w));
        }
        jb["writes"] = std::move(writes);
        jb["completes"] = b.completes;
        batches.push_back(std::move(jb));
    }
    j["batches"] = std::move(batches);
    j["source_address"] = plan.source_address;
    j["target_address"] = plan.target_address;
    return j;
}

inline MigrationPlan plan_from_json(const Json& j) {
    if (!j.is_object())
        throw ConfigError("plan file must be a JSON object");
    for (const char* field : {"gas_limit", "total_gas", "element_order", "batches"})
        if (!j.contains(field))
            throw ConfigError(std::string("plan file missing '") + field + "'");
    MigrationPlan plan;
    plan.gas_limit = j["gas_limit"].get<uint64_t>();
    plan.total_gas = j["total_gas"].get<uint64_t>();
    uint32_t decl = 0;
    for (const Json& e : j["element_order"]) {
        RankedElement re;
        re.label = e.at("label").get<std::string>();
        if (e.contains("rank") && !e["rank"].is_null())
            re.rank = e["rank"].get<uint32_t>();
        re.decl_index = decl++;
        plan.element_order.push_back(std::move(re));
    }
    for (const Json& jb : j["batches"]) {
        Batch b;
        b.index = jb.at("index").get<uint32_t>();
        b.gas_cost = jb.at("gas_cost").get<uint64_t>();
        for (const Json& w : jb.at("writes"))
            b.writes.emplace_back(hex::parse_bytes32(w.at("slot").get<std::string>()),
                                  hex::parse_bytes32(w.at("value").get<std::string>()));
        if (jb.contains("completes"))
            b.completes = jb["completes"].get<std::vector<std::string>>();
        plan.batches.push_back(std::move(b));
    }
    plan.source_address = j.value("source_address", "");
    plan.target_address = j.value("target_address", "");
    return plan;
}

} // namespace solmig
