// Copyright 2026 the solmig authors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "solmig/ast.hpp"
#include "solmig/errors.hpp"
#include "solmig/layout.hpp"

namespace solmig {

// Function call graph restricted to calls of functions declared in the same
// contract. Builtins (require is a statement; assert/revert/keccak256) are
// not edges.
struct CallGraph {
    std::vector<std::string> functions; // declaration order
    std::vector<std::vector<uint32_t>> callees;

    // All functions reachable from f, including f itself.
    std::vector<uint32_t> reachable_from(uint32_t f) const {
        std::vector<bool> seen(functions.size(), false);
        std::vector<uint32_t> stack{f}, out;
        seen[f] = true;
        while (!stack.empty()) {
            uint32_t cur = stack.back();
            stack.pop_back();
            out.push_back(cur);
            for (uint32_t g : callees[cur]) {
                if (!seen[g]) {
                    seen[g] = true;
                    stack.push_back(g);
                }
            }
        }
        std::sort(out.begin(), out.end());
        return out;
    }
};

struct DependencyMatrix {
    std::vector<std::string> functions;     // rows, declaration order
    std::vector<std::string> data_elements; // columns, layout order
    std::vector<std::vector<uint8_t>> cells;

    bool depends(size_t f, size_t d) const { return cells[f][d] != 0; }
    size_t function_index(const std::string& name) const {
        for (size_t i = 0; i < functions.size(); ++i)
            if (functions[i] == name)
                return i;
        throw AnalysisError("unknown function '" + name + "'");
    }
    size_t element_index(const std::string& label) const {
        for (size_t i = 0; i < data_elements.size(); ++i)
            if (data_elements[i] == label)
                return i;
        throw AnalysisError("unknown data element '" + label + "'");
    }
    std::vector<std::string> row_labels(size_t f) const {
        std::vector<std::string> out;
        for (size_t d = 0; d < data_elements.size(); ++d)
            if (cells[f][d])
                out.push_back(data_elements[d]);
        return out;
    }
};

struct FunctionUsage {
    uint64_t calls = 0;
    double criticality = 0.0; // clamped to [0, 1]
};

struct UsageProfile {
    std::map<std::string, FunctionUsage> by_function;

    FunctionUsage get(const std::string& fn) const {
        auto it = by_function.find(fn);
        return it == by_function.end() ? FunctionUsage{} : it->second;
    }
};

struct PriorityVector {
    struct Entry {
        std::string function;
        double score = 0.0;
        uint32_t rank = 0; // 1 = highest priority
    };
    std::vector<Entry> entries; // declaration order

    uint32_t rank_of(const std::string& fn) const {
        for (const auto& e : entries)
            if (e.function == fn)
                return e.rank;
        throw AnalysisError("function '" + fn + "' missing from priority vector");
    }
};

namespace analysis_detail {

inline const std::unordered_set<std::string>& builtin_callables() {
    static const std::unordered_set<std::string> b = {"assert", "revert", "keccak256"};
    return b;
}

inline const std::unordered_set<std::string>& builtin_globals() {
    static const std::unordered_set<std::string> b = {"msg", "block", "tx", "this", "abi"};
    return b;
}

// Scope-aware walker collecting state-variable references and internal
// calls from one function body.
class BodyWalker {
public:
    BodyWalker(const ContractUnit& contract,
               const std::unordered_map<std::string, uint32_t>& fn_index)
        : contract_(contract), fn_index_(fn_index) {
        for (const auto& v : contract.state_variables)
            state_vars_.insert(v.name);
    }

    void walk_function(const FunctionDecl& fn) {
        scopes_.clear();
        scopes_.emplace_back();
        for (const Param& p : fn.params)
            if (!p.name.empty())
                declare(p.name);
        for (const Param& r : fn.returns)
            if (!r.name.empty())
                declare(r.name);
        walk_stmts(fn.body);
    }

    std::unordered_set<std::string> touched_state; // state variables read or written
    std::vector<uint32_t> called;                  // internal callees

private:
    void declare(const std::string& name) { scopes_.back().insert(name); }

    bool is_local(const std::string& name) const {
        for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it)
            if (it->count(name))
                return true;
        return false;
    }

    void walk_stmts(const std::vector<Stmt>& stmts) {
        for (const Stmt& s : stmts)
            walk_stmt(s);
    }

    void walk_stmt(const Stmt& s) {
        switch (s.kind) {
        case Stmt::Kind::Expr:
        case Stmt::Kind::Return:
        case Stmt::Kind::Require:
            for (const Expr& e : s.exprs)
                walk_expr(e);
            break;
        case Stmt::Kind::VarDecl:
            for (const Expr& e : s.exprs)
                walk_expr(e);
            declare(s.name);
            break;
        case Stmt::Kind::Emit:
            break; // events touch no storage
        case Stmt::Kind::If:
            walk_expr(s.exprs[0]);
            push_scope();
            walk_stmts(s.body);
            pop_scope();
            push_scope();
            walk_stmts(s.else_body);
            pop_scope();
            break;
        case Stmt::Kind::For:
            push_scope();
            walk_stmts(s.init_stmts);
            for (const Expr& e : s.exprs)
                walk_expr(e);
            walk_stmts(s.body);
            pop_scope();
            break;
        case Stmt::Kind::Block:
            push_scope();
            walk_stmts(s.body);
            pop_scope();
            break;
        }
    }

    void push_scope() { scopes_.emplace_back(); }
    void pop_scope() { scopes_.pop_back(); }

    void walk_expr(const Expr& e) {
        switch (e.kind) {
        case Expr::Kind::Ident:
            reference(e.text);
            break;
        case Expr::Kind::Call: {
            const Expr& callee = e.children[0];
            if (callee.kind == Expr::Kind::Ident) {
                call(callee);
            } else {
                // method call on a value (e.g. array.push): the base is a
                // data reference, the member name is not
                walk_expr(callee);
            }
            for (size_t i = 1; i < e.children.size(); ++i)
                walk_expr(e.children[i]);
            break;
        }
        case Expr::Kind::Member:
            walk_expr(e.children[0]);
            break;
        default:
            for (const Expr& c : e.children)
                walk_expr(c);
            break;
        }
    }

    void reference(const std::string& name) {
        if (is_local(name))
            return;
        if (state_vars_.count(name))
            touched_state.insert(name);
        // anything else: builtin global, event name, or unknown; not a
        // storage dependency
    }

    void call(const Expr& callee) {
        const std::string& name = callee.text;
        auto it = fn_index_.find(name);
        if (it != fn_index_.end()) {
            called.push_back(it->second);
            return;
        }
        if (builtin_callables().count(name))
            return;
        if (is_local(name) || state_vars_.count(name))
            return; // calling a non-function value; reference already counted
        throw AnalysisError("call to undeclared function '" + name + "' at " +
                            std::to_string(callee.span.line) + ":" +
                            std::to_string(callee.span.column));
    }

    const ContractUnit& contract_;
    const std::unordered_map<std::string, uint32_t>& fn_index_;
    std::unordered_set<std::string> state_vars_;
    std::vector<std::unordered_set<std::string>> scopes_;
};

inline std::unordered_map<std::string, uint32_t> function_index(const ContractUnit& c) {
    std::unordered_map<std::string, uint32_t> idx;
    for (uint32_t i = 0; i < c.functions.size(); ++i)
        idx.emplace(c.functions[i].name, i);
    return idx;
}

} // namespace analysis_detail

inline CallGraph build_call_graph(const ContractUnit& contract) {
    CallGraph graph;
    auto fn_index = analysis_detail::function_index(contract);
    for (const FunctionDecl& f : contract.functions)
        graph.functions.push_back(f.name);
    graph.callees.resize(contract.functions.size());
    for (size_t i = 0; i < contract.functions.size(); ++i) {
        analysis_detail::BodyWalker walker(contract, fn_index);
        walker.walk_function(contract.functions[i]);
        std::vector<uint32_t> callees = walker.called;
        std::sort(callees.begin(), callees.end());
        callees.erase(std::unique(callees.begin(), callees.end()), callees.end());
        graph.callees[i] = std::move(callees);
    }
    return graph;
}

// Builds the function x data-element dependency matrix. A cell is set when
// the function reads or writes the variable directly or through any chain
// of internal calls.
inline DependencyMatrix build_dependency_matrix(const ContractUnit& contract,
                                                const StorageLayout& layout) {
    DependencyMatrix m;
    for (const FunctionDecl& f : contract.functions)
        m.functions.push_back(f.name);
    for (const DataElement& e : layout.elements)
        m.data_elements.push_back(e.label);

    std::unordered_map<std::string, size_t> col;
    for (size_t d = 0; d < m.data_elements.size(); ++d)
        col.emplace(m.data_elements[d], d);

    auto fn_index = analysis_detail::function_index(contract);
    CallGraph graph = build_call_graph(contract);

    // direct references per function
    std::vector<std::vector<uint8_t>> direct(m.functions.size(),
                                             std::vector<uint8_t>(m.data_elements.size(), 0));
    for (size_t i = 0; i < contract.functions.size(); ++i) {
        analysis_detail::BodyWalker walker(contract, fn_index);
        walker.walk_function(contract.functions[i]);
        for (const std::string& var : walker.touched_state) {
            auto it = col.find(var);
            if (it != col.end())
                direct[i][it->second] = 1;
        }
    }

    // transitive closure over the call graph
    m.cells.assign(m.functions.size(), std::vector<uint8_t>(m.data_elements.size(), 0));
    for (uint32_t f = 0; f < m.functions.size(); ++f) {
        for (uint32_t g : graph.reachable_from(f))
            for (size_t d = 0; d < m.data_elements.size(); ++d)
                m.cells[f][d] |= direct[g][d];
    }
    return m;
}

// score(f) = w_freq * calls(f)/max_calls + w_crit * criticality(f).
// Rank 1 is the highest score; ties go to the earlier declaration.
inline PriorityVector compute_priority_vector(const std::vector<std::string>& functions,
                                              const UsageProfile& profile,
                                              double w_freq = 0.5, double w_crit = 0.5) {
    if (w_freq < 0 || w_crit < 0)
        throw ConfigError("priority weights must be non-negative");
    if (w_freq + w_crit <= 0)
        throw ConfigError("priority weights must not both be zero");

    uint64_t max_calls = 0;
    for (const auto& fn : functions)
        max_calls = std::max(max_calls, profile.get(fn).calls);

    PriorityVector pv;
    for (const auto& fn : functions) {
        FunctionUsage u = profile.get(fn);
        double freq = max_calls == 0 ? 0.0 : (double)u.calls / (double)max_calls;
        pv.entries.push_back({fn, w_freq * freq + w_crit * u.criticality, 0});
    }

    std::vector<size_t> order(functions.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        return pv.entries[a].score > pv.entries[b].score;
    });
    for (uint32_t r = 0; r < order.size(); ++r)
        pv.entries[order[r]].rank = r + 1;
    return pv;
}

} // namespace solmig
