// Copyright 2026 the solmig authors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include "solmig/analysis.hpp"
#include "solmig/formats.hpp"
#include "solmig/metrics.hpp"
#include "solmig/parser.hpp"
#include "solmig/plan.hpp"
#include "solmig/sim.hpp"
#include "solmig/state.hpp"

namespace solmig {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ConfigError("cannot open file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw ConfigError("cannot write file '" + path + "'");
    out << content;
}

// Everything the planner derives from one contract.
struct PipelineResult {
    ContractUnit contract;
    StorageLayout layout;
    DependencyMatrix matrix;
    PriorityVector priority;
    std::vector<RankedElement> element_order;
    std::vector<Shard> shards; // ordered for packing
    MigrationPlan plan;
};

struct PlanOptions {
    GasModel gas;
    uint64_t gas_limit = 1000000;
    double w_freq = 0.5;
    double w_crit = 0.5;
    std::optional<uint32_t> max_slots_per_batch;
    std::string source_address;
    std::string target_address;
};

// parse -> layout -> matrix -> priority -> shards -> ordered plan.
inline PipelineResult build_plan(const std::string& source, const UsageProfile& profile,
                                 const Snapshot& snapshot, const KeyEnumeration& keys,
                                 const PlanOptions& opts) {
    PipelineResult r;
    r.contract = parse_source(source);
    r.layout = compute_layout(r.contract);
    r.matrix = build_dependency_matrix(r.contract, r.layout);
    r.priority =
        compute_priority_vector(r.matrix.functions, profile, opts.w_freq, opts.w_crit);
    r.element_order = order_data_elements(r.matrix, r.priority);
    r.shards = order_shards(generate_shards(r.layout, snapshot, keys), r.element_order);
    r.plan = pack_batches(r.shards, r.element_order, opts.gas, opts.gas_limit,
                          opts.max_slots_per_batch);
    if (!opts.source_address.empty())
        r.plan.source_address = opts.source_address;
    if (!opts.target_address.empty())
        r.plan.target_address = opts.target_address;
    return r;
}

} // namespace solmig
