// Copyright 2026 the solmig authors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "solmig/errors.hpp"
#include "solmig/json.hpp"
#include "solmig/plan.hpp"
#include "solmig/state.hpp"

namespace solmig {

// Target-side chain under migration. Storage mutates only through
// apply_batch, strictly in order.
struct SimChain {
    Snapshot storage;
    uint32_t applied_batches = 0;
    uint64_t cumulative_gas = 0;

    void apply_batch(const Batch& batch, uint64_t gas_limit) {
        if (batch.gas_cost > gas_limit)
            throw SimError("batch " + std::to_string(batch.index) + " costs " +
                           std::to_string(batch.gas_cost) + " gas, over the limit " +
                           std::to_string(gas_limit));
        for (const auto& [slot, value] : batch.writes)
            storage.set(slot, value);
        ++applied_batches;
        cumulative_gas += batch.gas_cost;
    }
};

struct BatchTrace {
    uint32_t index = 0;
    uint64_t gas_cost = 0;
    uint64_t cumulative_gas = 0;
    uint32_t slots_written = 0;
    std::vector<std::string> completed; // variables finished in this batch
    std::vector<std::string> activated; // functions newly activated
};

struct FunctionDowntime {
    uint32_t batch = 0;          // activation batch; 0 = before migration starts
    uint64_t cumulative_gas = 0; // gas spent when the function activated
};

struct MigrationTrace {
    std::vector<BatchTrace> batches;
    std::vector<std::string> pre_activated; // dependency-free functions
    bool final_equal = false;
    std::map<std::string, FunctionDowntime> downtime;
};

struct EqualityReport {
    bool equal = false;
    std::vector<Bytes32> missing; // in source, absent from target
    std::vector<Bytes32> extra;   // in target, absent from source
    std::vector<std::pair<Bytes32, std::pair<Bytes32, Bytes32>>> mismatched; // slot -> (want, got)
};

// Slot-for-slot comparison of the migrated store against the source.
// Inequality is a report, not an error.
inline EqualityReport verify_state_equality(const Snapshot& source, const SimChain& target) {
    EqualityReport report;
    for (const auto& [slot, want] : source.entries) {
        auto it = target.storage.entries.find(slot);
        if (it == target.storage.entries.end())
            report.missing.push_back(slot);
        else if (it->second != want)
            report.mismatched.push_back({slot, {want, it->second}});
    }
    for (const auto& [slot, _] : target.storage.entries)
        if (!source.has(slot))
            report.extra.push_back(slot);
    report.equal =
        report.missing.empty() && report.extra.empty() && report.mismatched.empty();
    return report;
}

// Applies the plan batch by batch against a fresh target chain. Before
// anything executes, every planned write is checked against the source
// snapshot; a disagreement aborts with the offending slot. The optional
// activation map (from activation_map) enriches the trace with per-function
// activation and downtime.
inline std::pair<SimChain, MigrationTrace> execute_plan(
    const MigrationPlan& plan, const Snapshot& source,
    const std::optional<std::map<std::string, uint32_t>>& activation = {}) {
    for (const Batch& batch : plan.batches) {
        for (const auto& [slot, value] : batch.writes) {
            Bytes32 expected = source.get(slot);
            if (expected != value)
                throw DivergenceError("planned write to slot " + hex::to_hex(slot) +
                                      " disagrees with the source snapshot (batch " +
                                      std::to_string(batch.index) + ")");
        }
    }

    // activation batch -> functions, for per-batch "newly activated" lists
    std::map<uint32_t, std::vector<std::string>> activation_by_batch;
    if (activation)
        for (const auto& [fn, batch] : *activation)
            activation_by_batch[batch].push_back(fn);

    SimChain target;
    MigrationTrace trace;
    if (activation) {
        for (const std::string& fn : activation_by_batch[0]) {
            trace.pre_activated.push_back(fn);
            trace.downtime[fn] = {0, 0};
        }
    }

    for (const Batch& batch : plan.batches) {
        target.apply_batch(batch, plan.gas_limit);
        BatchTrace bt;
        bt.index = batch.index;
        bt.gas_cost = batch.gas_cost;
        bt.cumulative_gas = target.cumulative_gas;
        bt.slots_written = (uint32_t)batch.writes.size();
        bt.completed = batch.completes;
        if (activation) {
            auto it = activation_by_batch.find(batch.index);
            if (it != activation_by_batch.end()) {
                bt.activated = it->second;
                for (const std::string& fn : it->second)
                    trace.downtime[fn] = {batch.index, target.cumulative_gas};
            }
        }
        trace.batches.push_back(std::move(bt));
    }

    trace.final_equal = verify_state_equality(source, target).equal;
    return {std::move(target), std::move(trace)};
}

// ---- trace JSON ----

inline Json trace_to_json(const MigrationTrace& trace) {
    Json j;
    j["final_equal"] = trace.final_equal;
    j["pre_activated"] = trace.pre_activated;
    Json batches = Json::array();
    for (const BatchTrace& b : trace.batches) {
        Json jb;
        jb["index"] = b.index;
        jb["gas_cost"] = b.gas_cost;
        jb["cumulative_gas"] = b.cumulative_gas;
        jb["slots_written"] = b.slots_written;
        jb["completed"] = b.completed;
        jb["activated"] = b.activated;
        batches.push_back(std::move(jb));
    }
    j["batches"] = std::move(batches);
    Json downtime = Json::object();
    for (const auto& [fn, d] : trace.downtime) {
        Json jd;
        jd["batch"] = d.batch;
        jd["cumulative_gas"] = d.cumulative_gas;
        downtime[fn] = std::move(jd);
    }
    j["downtime"] = std::move(downtime);
    return j;
}

inline MigrationTrace trace_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("final_equal") || !j.contains("batches"))
        throw ConfigError("trace file must be an object with final_equal and batches");
    MigrationTrace trace;
    trace.final_equal = j["final_equal"].get<bool>();
    if (j.contains("pre_activated"))
        trace.pre_activated = j["pre_activated"].get<std::vector<std::string>>();
    for (const Json& jb : j["batches"]) {
        BatchTrace b;
        b.index = jb.at("index").get<uint32_t>();
        b.gas_cost = jb.at("gas_cost").get<uint64_t>();
        b.cumulative_gas = jb.at("cumulative_gas").get<uint64_t>();
        b.slots_written = jb.at("slots_written").get<uint32_t>();
        if (jb.contains("completed"))
            b.completed = jb["completed"].get<std::vector<std::string>>();
        if (jb.contains("activated"))
            b.activated = jb["activated"].get<std::vector<std::string>>();
        trace.batches.push_back(std::move(b));
    }
    if (j.contains("downtime")) {
        for (const auto& [fn, jd] : j["downtime"].items()) {
            FunctionDowntime d;
            d.batch = jd.at("batch").get<uint32_t>();
            d.cumulative_gas = jd.at("cumulative_gas").get<uint64_t>();
            trace.downtime[fn] = d;
        }
    }
    return trace;
}

} // namespace solmig
