// Copyright 2026 the solmig authors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "solmig/formats.hpp"
#include "solmig/metrics.hpp"
#include "solmig/pipeline.hpp"

namespace {

using namespace solmig;

std::string g_current_source; // for file:line:col diagnostics

ContractUnit parse_file(const std::string& path) {
    g_current_source = path;
    return parse_source(read_file(path));
}

void emit(const std::string& text, const std::string& output_path) {
    if (output_path.empty())
        std::cout << text;
    else
        write_file(output_path, text);
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

struct GasFlags {
    uint64_t gas_limit = 1000000;
    uint64_t tx_base = 21000;
    uint64_t per_slot_write = 22100;
    uint64_t per_calldata_byte = 16;
    uint32_t max_slots_per_batch = 0; // 0 = unlimited

    GasModel model() const { return {tx_base, per_slot_write, per_calldata_byte}; }
    std::optional<uint32_t> max_slots() const {
        return max_slots_per_batch == 0 ? std::nullopt
                                        : std::optional<uint32_t>(max_slots_per_batch);
    }
};

void add_gas_flags(CLI::App* cmd, GasFlags& gas) {
    cmd->add_option("--gas-limit", gas.gas_limit, "per-transaction gas limit")
        ->capture_default_str();
    cmd->add_option("--tx-base-gas", gas.tx_base, "intrinsic transaction cost")
        ->capture_default_str();
    cmd->add_option("--slot-write-gas", gas.per_slot_write, "cost of one slot write")
        ->capture_default_str();
    cmd->add_option("--calldata-byte-gas", gas.per_calldata_byte, "cost per calldata byte")
        ->capture_default_str();
    cmd->add_option("--max-slots-per-batch", gas.max_slots_per_batch,
                    "cap slot writes per batch (0 = gas-bound only)");
}

struct WeightFlags {
    double w_freq = 0.5;
    double w_crit = 0.5;
};

void add_weight_flags(CLI::App* cmd, WeightFlags& w) {
    cmd->add_option("--w-freq", w.w_freq, "weight of normalized call frequency")
        ->capture_default_str();
    cmd->add_option("--w-crit", w.w_crit, "weight of criticality")->capture_default_str();
}

int run(int argc, char** argv) {
    CLI::App app{"contract state migration planner and simulator"};
    app.require_subcommand(1);
    app.set_config("--config", "", "TOML config file; command-line flags win");

    // layout
    auto* layout_cmd = app.add_subcommand("layout", "print the storage layout as JSON");
    std::string layout_src, layout_out;
    layout_cmd->add_option("src", layout_src, "contract source file")->required();
    layout_cmd->add_option("-o,--output", layout_out, "write to file instead of stdout");

    // matrix
    auto* matrix_cmd =
        app.add_subcommand("matrix", "print the function x data dependency matrix as CSV");
    std::string matrix_src, matrix_out;
    matrix_cmd->add_option("src", matrix_src, "contract source file")->required();
    matrix_cmd->add_option("-o,--output", matrix_out, "write to file instead of stdout");

    // priority
    auto* priority_cmd =
        app.add_subcommand("priority", "rank functions by usage and criticality");
    std::string priority_src, priority_profile, priority_out;
    WeightFlags priority_weights;
    priority_cmd->add_option("src", priority_src, "contract source file")->required();
    priority_cmd->add_option("--profile", priority_profile, "usage profile JSON")
        ->required();
    add_weight_flags(priority_cmd, priority_weights);
    priority_cmd->add_option("-o,--output", priority_out, "write to file instead of stdout");

    // plan
    auto* plan_cmd = app.add_subcommand("plan", "produce a gas-limited migration plan");
    std::string plan_src, plan_snapshot, plan_keys, plan_profile, plan_out;
    std::string plan_source_addr, plan_target_addr;
    GasFlags plan_gas;
    WeightFlags plan_weights;
    plan_cmd->add_option("src", plan_src, "contract source file")->required();
    plan_cmd->add_option("--snapshot", plan_snapshot, "source chain snapshot JSON")
        ->required();
    plan_cmd->add_option("--keys", plan_keys, "mapping key enumeration JSON")->required();
    plan_cmd->add_option("--profile", plan_profile, "usage profile JSON")->required();
    add_gas_flags(plan_cmd, plan_gas);
    add_weight_flags(plan_cmd, plan_weights);
    plan_cmd->add_option("--source-address", plan_source_addr, "source contract address");
    plan_cmd->add_option("--target-address", plan_target_addr, "target contract address");
    plan_cmd->add_option("-o,--output", plan_out, "write to file instead of stdout");

    // simulate
    auto* sim_cmd =
        app.add_subcommand("simulate", "execute a plan against a simulated chain");
    std::string sim_plan, sim_snapshot, sim_src, sim_profile, sim_out;
    sim_cmd->add_option("plan", sim_plan, "migration plan JSON")->required();
    sim_cmd->add_option("--snapshot", sim_snapshot, "source chain snapshot JSON")
        ->required();
    sim_cmd->add_option("--source", sim_src,
                        "contract source; enables per-function activation in the trace");
    sim_cmd->add_option("--profile", sim_profile,
                        "usage profile JSON (with --source, for activation ranks)");
    sim_cmd->add_option("-o,--output", sim_out, "write trace to file instead of stdout");

    // fat
    auto* fat_cmd = app.add_subcommand("fat", "function activation threshold report");
    std::string fat_src, fat_trace, fat_out;
    bool fat_json = false, fat_plot = false;
    uint64_t fat_t_acceptable = 0;
    bool fat_t_set = false;
    fat_cmd->add_option("src", fat_src, "contract source file")->required();
    fat_cmd->add_option("--trace", fat_trace, "migration trace JSON for downtime rows");
    fat_cmd->add_flag("--json", fat_json, "emit machine-readable JSON");
    fat_cmd->add_flag("--plot-data", fat_plot, "emit CSV plot data");
    fat_cmd->add_option("--t-acceptable", fat_t_acceptable,
                        "flag functions whose downtime gas exceeds this")
        ->check(CLI::NonNegativeNumber)
        ->each([&](const std::string&) { fat_t_set = true; });
    fat_cmd->add_option("-o,--output", fat_out, "write to file instead of stdout");

    // genesis
    auto* genesis_cmd =
        app.add_subcommand("genesis", "encode a high-level value map into a snapshot");
    std::string genesis_src, genesis_values, genesis_keys, genesis_out;
    genesis_cmd->add_option("src", genesis_src, "contract source file")->required();
    genesis_cmd->add_option("--values", genesis_values, "high-level value map JSON")
        ->required();
    genesis_cmd->add_option("--keys", genesis_keys, "mapping key enumeration JSON")
        ->required();
    genesis_cmd->add_option("-o,--output", genesis_out, "write to file instead of stdout");

    CLI11_PARSE(app, argc, argv);

    if (layout_cmd->parsed()) {
        ContractUnit contract = parse_file(layout_src);
        emit(dump(layout_to_json(compute_layout(contract))), layout_out);
        return 0;
    }

    if (matrix_cmd->parsed()) {
        ContractUnit contract = parse_file(matrix_src);
        StorageLayout layout = compute_layout(contract);
        emit(matrix_to_csv(build_dependency_matrix(contract, layout)), matrix_out);
        return 0;
    }

    if (priority_cmd->parsed()) {
        ContractUnit contract = parse_file(priority_src);
        UsageProfile profile =
            profile_from_json(parse_json(read_file(priority_profile), "usage profile"));
        std::vector<std::string> names;
        for (const auto& f : contract.functions)
            names.push_back(f.name);
        PriorityVector pv = compute_priority_vector(names, profile, priority_weights.w_freq,
                                                    priority_weights.w_crit);
        emit(dump(priority_to_json(pv)), priority_out);
        return 0;
    }

    if (plan_cmd->parsed()) {
        std::string source = read_file(plan_src);
        g_current_source = plan_src;
        UsageProfile profile =
            profile_from_json(parse_json(read_file(plan_profile), "usage profile"));
        Snapshot snapshot =
            snapshot_from_json(parse_json(read_file(plan_snapshot), "snapshot"));
        KeyEnumeration keys =
            keys_from_json(parse_json(read_file(plan_keys), "key enumeration"));
        PlanOptions opts;
        opts.gas = plan_gas.model();
        opts.gas_limit = plan_gas.gas_limit;
        opts.max_slots_per_batch = plan_gas.max_slots();
        opts.w_freq = plan_weights.w_freq;
        opts.w_crit = plan_weights.w_crit;
        opts.source_address = plan_source_addr;
        opts.target_address = plan_target_addr;
        PipelineResult r = build_plan(source, profile, snapshot, keys, opts);
        emit(dump(plan_to_json(r.plan)), plan_out);
        return 0;
    }

    if (sim_cmd->parsed()) {
        MigrationPlan plan = plan_from_json(parse_json(read_file(sim_plan), "plan"));
        Snapshot snapshot =
            snapshot_from_json(parse_json(read_file(sim_snapshot), "snapshot"));
        std::optional<std::map<std::string, uint32_t>> activation;
        if (!sim_src.empty()) {
            ContractUnit contract = parse_file(sim_src);
            StorageLayout layout = compute_layout(contract);
            DependencyMatrix matrix = build_dependency_matrix(contract, layout);
            activation = activation_map(plan, matrix);
            (void)sim_profile; // ranks affect plan order, not activation lookup
        }
        auto [chain, trace] = execute_plan(plan, snapshot, activation);
        emit(dump(trace_to_json(trace)), sim_out);
        if (!trace.final_equal) {
            std::cerr << "simulation finished but the migrated state does not equal the "
                         "source snapshot\n";
            return 5;
        }
        return 0;
    }

    if (fat_cmd->parsed()) {
        ContractUnit contract = parse_file(fat_src);
        StorageLayout layout = compute_layout(contract);
        DependencyMatrix matrix = build_dependency_matrix(contract, layout);
        std::optional<MigrationTrace> trace;
        if (!fat_trace.empty())
            trace = trace_from_json(parse_json(read_file(fat_trace), "trace"));
        std::optional<uint64_t> t_acceptable;
        if (fat_t_set)
            t_acceptable = fat_t_acceptable;
        FatReport report = make_fat_report(contract.name, matrix, trace, t_acceptable);
        if (fat_plot)
            emit(fat_plot_csv({report}), fat_out);
        else if (fat_json)
            emit(dump(fat_report_to_json(report)), fat_out);
        else
            emit(fat_report_markdown(report), fat_out);
        return 0;
    }

    if (genesis_cmd->parsed()) {
        ContractUnit contract = parse_file(genesis_src);
        StorageLayout layout = compute_layout(contract);
        Json values = parse_json(read_file(genesis_values), "value map");
        KeyEnumeration keys =
            keys_from_json(parse_json(read_file(genesis_keys), "key enumeration"));
        Snapshot snapshot = encode_state(layout, values, keys);
        emit(dump(snapshot_to_json(snapshot)), genesis_out);
        return 0;
    }

    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const solmig::FrontendError& e) {
        std::cerr << (g_current_source.empty() ? "<input>" : g_current_source) << ":"
                  << e.what() << "\n";
        return e.exit_code();
    } catch (const solmig::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
