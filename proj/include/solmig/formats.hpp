// Copyright 2026 the solmig authors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "solmig/analysis.hpp"
#include "solmig/json.hpp"
#include "solmig/layout.hpp"

namespace solmig {

// Storage layout document mirroring the compiler's report schema:
// {storage: [{label, offset, slot, type}], types: {id: {...}}}.
// Slots and numberOfBytes are decimal strings, matching that schema.
inline Json layout_to_json(const StorageLayout& layout) {
    auto element_json = [](const DataElement& e) {
        Json j;
        j["label"] = e.label;
        j["offset"] = e.offset;
        j["slot"] = e.slot.to_decimal();
        j["type"] = e.type_id;
        return j;
    };

    Json storage = Json::array();
    for (const DataElement& e : layout.elements)
        storage.push_back(element_json(e));

    Json types = Json::object();
    for (const auto& [id, info] : layout.types) {
        Json t;
        t["encoding"] = encoding_name(info.encoding);
        t["numberOfBytes"] = std::to_string(info.number_of_bytes);
        if (info.encoding == Encoding::Mapping) {
            t["key"] = *info.key;
            t["value"] = *info.base;
        } else if (info.base) {
            t["base"] = *info.base;
        }
        if (!info.members.empty()) {
            Json members = Json::array();
            for (const DataElement& m : info.members)
                members.push_back(element_json(m));
            t["members"] = std::move(members);
        }
        types[id] = std::move(t);
    }

    Json j;
    j["storage"] = std::move(storage);
    j["types"] = std::move(types);
    return j;
}

// Usage profile file: {function: {"calls": n, "criticality": x}}.
// Criticality is clamped to [0, 1]; negative call counts are rejected.
inline UsageProfile profile_from_json(const Json& j) {
    if (!j.is_object())
        throw ConfigError("usage profile must be a JSON object");
    UsageProfile profile;
    for (const auto& [fn, entry] : j.items()) {
        if (!entry.is_object())
            throw ConfigError("profile entry for '" + fn + "' must be an object");
        FunctionUsage usage;
        if (entry.contains("calls")) {
            const Json& calls = entry["calls"];
            if (calls.is_number_integer() && calls.get<int64_t>() < 0)
                throw ConfigError("negative call count for '" + fn + "'");
            if (!calls.is_number_unsigned() && !calls.is_number_integer())
                throw ConfigError("call count for '" + fn + "' must be an integer");
            usage.calls = calls.get<uint64_t>();
        }
        if (entry.contains("criticality")) {
            if (!entry["criticality"].is_number())
                throw ConfigError("criticality for '" + fn + "' must be a number");
            usage.criticality = std::clamp(entry["criticality"].get<double>(), 0.0, 1.0);
        }
        profile.by_function[fn] = usage;
    }
    return profile;
}

// Matrix CSV: first row data-element labels, first column function names,
// cells 0/1.
inline std::string matrix_to_csv(const DependencyMatrix& m) {
    std::string out = "function";
    for (const std::string& d : m.data_elements)
        out += "," + d;
    out += "\n";
    for (size_t f = 0; f < m.functions.size(); ++f) {
        out += m.functions[f];
        for (size_t d = 0; d < m.data_elements.size(); ++d)
            out += m.cells[f][d] ? ",1" : ",0";
        out += "\n";
    }
    return out;
}

// Priority vector, ordered by rank.
inline Json priority_to_json(const PriorityVector& pv) {
    std::vector<const PriorityVector::Entry*> by_rank;
    for (const auto& e : pv.entries)
        by_rank.push_back(&e);
    std::sort(by_rank.begin(), by_rank.end(),
              [](const auto* a, const auto* b) { return a->rank < b->rank; });
    Json j = Json::array();
    for (const auto* e : by_rank) {
        Json entry;
        entry["function"] = e->function;
        entry["score"] = e->score;
        entry["rank"] = e->rank;
        j.push_back(std::move(entry));
    }
    return j;
}

} // namespace solmig
