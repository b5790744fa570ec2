// Copyright 2026 the solmig authors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "solmig/analysis.hpp"
#include "solmig/errors.hpp"
#include "solmig/json.hpp"
#include "solmig/sim.hpp"

namespace solmig {

// Function Activation Threshold report: how many data elements a function
// must wait on before it can operate in the migrated contract, versus the
// monolithic baseline where every function waits for the whole state.
struct FatReport {
    std::string contract;
    std::vector<std::pair<std::string, uint32_t>> per_function_deps; // declaration order
    double fat_incremental = 0.0; // mean dependency count per function
    double fat_monolithic = 0.0; // |D|: every function waits for everything
    double reduction_percent = 0.0;

    struct DowntimeRow {
        std::string function;
        uint32_t batch = 0;
        uint64_t cumulative_gas = 0;
        bool flagged = false; // downtime exceeds t_acceptable
    };
    std::vector<DowntimeRow> downtime; // present when a trace was supplied
    std::optional<uint64_t> t_acceptable;
};

// Mean dependency count per function. Composite packed shards migrate
// together, but FAT counts data elements, so each member counts once.
inline double compute_fat(const DependencyMatrix& matrix) {
    if (matrix.functions.empty())
        throw AnalysisError("FAT is undefined for a contract with no functions");
    uint64_t total = 0;
    for (size_t f = 0; f < matrix.functions.size(); ++f)
        for (size_t d = 0; d < matrix.data_elements.size(); ++d)
            total += matrix.cells[f][d] ? 1 : 0;
    return (double)total / (double)matrix.functions.size();
}

// Monolithic (constructor-based) migration: one atomic state load, so every
// function waits for all |D| elements.
inline double compute_fat_monolithic(const DependencyMatrix& matrix) {
    return (double)matrix.data_elements.size();
}

inline FatReport make_fat_report(const std::string& contract, const DependencyMatrix& matrix,
                                 const std::optional<MigrationTrace>& trace = {},
                                 std::optional<uint64_t> t_acceptable = {}) {
    FatReport report;
    report.contract = contract;
    for (size_t f = 0; f < matrix.functions.size(); ++f) {
        uint32_t deps = 0;
        for (size_t d = 0; d < matrix.data_elements.size(); ++d)
            deps += matrix.cells[f][d] ? 1 : 0;
        report.per_function_deps.emplace_back(matrix.functions[f], deps);
    }
    report.fat_incremental = compute_fat(matrix);
    report.fat_monolithic = compute_fat_monolithic(matrix);
    report.reduction_percent =
        report.fat_monolithic == 0.0
            ? 0.0
            : 100.0 * (report.fat_monolithic - report.fat_incremental) / report.fat_monolithic;
    report.t_acceptable = t_acceptable;

    if (trace) {
        std::map<std::string, FunctionDowntime> downtime = trace->downtime;
        for (const auto& [fn, _] : report.per_function_deps) {
            auto it = downtime.find(fn);
            if (it == downtime.end())
                continue;
            FatReport::DowntimeRow row;
            row.function = fn;
            row.batch = it->second.batch;
            row.cumulative_gas = it->second.cumulative_gas;
            row.flagged = t_acceptable && it->second.cumulative_gas > *t_acceptable;
            report.downtime.push_back(std::move(row));
        }
    }
    return report;
}

inline Json fat_report_to_json(const FatReport& r) {
    Json j;
    j["contract"] = r.contract;
    Json deps = Json::array();
    for (const auto& [fn, count] : r.per_function_deps) {
        Json row;
        row["function"] = fn;
        row["dependencies"] = count;
        deps.push_back(std::move(row));
    }
    j["per_function_dependencies"] = std::move(deps);
    j["fat_incremental"] = r.fat_incremental;
    j["fat_monolithic"] = r.fat_monolithic;
    j["reduction_percent"] = r.reduction_percent;
    if (r.t_acceptable)
        j["t_acceptable"] = *r.t_acceptable;
    if (!r.downtime.empty()) {
        Json rows = Json::array();
        for (const auto& row : r.downtime) {
            Json jr;
            jr["function"] = row.function;
            jr["batch"] = row.batch;
            jr["cumulative_gas"] = row.cumulative_gas;
            jr["flagged"] = row.flagged;
            rows.push_back(std::move(jr));
        }
        j["downtime"] = std::move(rows);
    }
    return j;
}

inline FatReport fat_report_from_json(const Json& j) {
    FatReport r;
    r.contract = j.at("contract").get<std::string>();
    for (const Json& row : j.at("per_function_dependencies"))
        r.per_function_deps.emplace_back(row.at("function").get<std::string>(),
                                         row.at("dependencies").get<uint32_t>());
    r.fat_incremental = j.at("fat_incremental").get<double>();
    r.fat_monolithic = j.at("fat_monolithic").get<double>();
    r.reduction_percent = j.at("reduction_percent").get<double>();
    if (j.contains("t_acceptable"))
        r.t_acceptable = j["t_acceptable"].get<uint64_t>();
    if (j.contains("downtime")) {
        for (const Json& jr : j["downtime"]) {
            FatReport::DowntimeRow row;
            row.function = jr.at("function").get<std::string>();
            row.batch = jr.at("batch").get<uint32_t>();
            row.cumulative_gas = jr.at("cumulative_gas").get<uint64_t>();
            row.flagged = jr.at("flagged").get<bool>();
            r.downtime.push_back(std::move(row));
        }
    }
    return r;
}

inline std::string fat_report_markdown(const FatReport& r) {
    std::string out;
    out += "# Function activation report: " + r.contract + "\n\n";
    out += "| function | data dependencies |\n|---|---|\n";
    for (const auto& [fn, count] : r.per_function_deps)
        out += "| " + fn + " | " + std::to_string(count) + " |\n";
    out += "\n";
    auto fmt = [](double v) {
        std::string s = std::to_string(v);
        while (s.size() > 1 && s.back() == '0')
            s.pop_back();
        if (!s.empty() && s.back() == '.')
            s.pop_back();
        return s;
    };
    out += "- FAT (incremental migration): " + fmt(r.fat_incremental) + "\n";
    out += "- FAT (monolithic migration): " + fmt(r.fat_monolithic) + "\n";
    out += "- reduction: " + fmt(r.reduction_percent) + "%\n";
    if (!r.downtime.empty()) {
        out += "\n| function | activation batch | cumulative gas |";
        out += r.t_acceptable ? " over threshold |\n|---|---|---|---|\n"
                              : "\n|---|---|---|\n";
        for (const auto& row : r.downtime) {
            out += "| " + row.function + " | " + std::to_string(row.batch) + " | " +
                   std::to_string(row.cumulative_gas) + " |";
            if (r.t_acceptable)
                out += std::string(" ") + (row.flagged ? "yes" : "no") + " |";
            out += "\n";
        }
    }
    return out;
}

// CSV row suitable for bar-chart plotting across token standards.
inline std::string fat_plot_csv(const std::vector<FatReport>& reports) {
    std::string out = "standard,fat_incremental,fat_monolithic\n";
    for (const FatReport& r : reports) {
        auto fmt = [](double v) {
            std::string s = std::to_string(v);
            while (s.size() > 1 && s.back() == '0')
                s.pop_back();
            if (!s.empty() && s.back() == '.')
                s.pop_back();
            return s;
        };
        out += r.contract + "," + fmt(r.fat_incremental) + "," + fmt(r.fat_monolithic) + "\n";
    }
    return out;
}

} // namespace solmig
