// Copyright 2026 the solmig authors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "solmig/errors.hpp"

namespace solmig {

// Type annotation as written in source. Elementary names are canonical:
// uint -> uint256, int -> int256, byte -> bytes1.
struct TypeName {
    enum class Kind { Elementary, Mapping, Array, StructRef };

    Kind kind = Kind::Elementary;
    std::string name;                       // elementary keyword or struct name
    std::vector<TypeName> params;           // mapping: [key, value]; array: [element]
    std::optional<uint64_t> array_length;   // nullopt for dynamic arrays
    Span span;

    bool is_elementary() const { return kind == Kind::Elementary; }
    bool is_mapping() const { return kind == Kind::Mapping; }
    bool is_array() const { return kind == Kind::Array; }
    bool is_struct_ref() const { return kind == Kind::StructRef; }
    bool is_dynamic_array() const { return is_array() && !array_length.has_value(); }
};

struct Expr {
    enum class Kind {
        Number,     // text = literal (decimal or 0x hex)
        StringLit,  // text = decoded string value
        BoolLit,    // text = "true" | "false"
        Ident,      // text = name
        Member,     // children[0].text -> base, text = member name
        Index,      // children = [base, index]
        Call,       // children = [callee, args...]
        Cast,       // text = elementary type name, children = [operand]
        Binary,     // text = operator, children = [lhs, rhs]
        Unary,      // text = operator (prefix), children = [operand]
        Postfix,    // text = operator (++/--), children = [operand]
        Assign,     // text = "=", "+=", ..., children = [target, value]
    };

    Kind kind;
    std::string text;
    std::vector<Expr> children;
    Span span;
};

struct Stmt {
    enum class Kind { Expr, VarDecl, If, For, Return, Require, Emit, Block };

    Kind kind;
    Span span;

    std::string name;                    // VarDecl: variable; Emit: event name
    std::optional<TypeName> var_type;    // VarDecl only
    std::vector<Expr> exprs;             // see per-kind layout below
    std::vector<Stmt> body;              // If: then; For/Block: body
    std::vector<Stmt> else_body;         // If only
    std::vector<Stmt> init_stmts;        // For only, 0 or 1 statements
    bool has_cond = false;               // For: exprs[0] is the condition
    bool has_post = false;               // For: exprs[has_cond ? 1 : 0] is the step

    // Expr:    exprs = [e]
    // VarDecl: exprs = [] | [initializer]
    // If:      exprs = [condition]
    // Return:  exprs = [] | [value]
    // Require: exprs = [condition] | [condition, message]
    // Emit:    exprs = arguments
};

enum class Visibility { Public, Internal, Private, External };
enum class Mutability { Default, View, Pure };

struct Param {
    TypeName type;
    std::string name; // may be empty in returns clauses
    Span span;
};

struct StateVariableDecl {
    std::string name;
    TypeName type;
    Visibility visibility = Visibility::Internal;
    bool is_constant_or_immutable = false;
    std::optional<Expr> initializer;
    Span span;
};

struct StructDecl {
    std::string name;
    std::vector<Param> members;
    Span span;
};

struct FunctionDecl {
    std::string name;
    std::vector<Param> params;
    std::vector<Param> returns;
    Visibility visibility = Visibility::Public;
    Mutability mutability = Mutability::Default;
    bool is_constructor = false;
    std::vector<Stmt> body;
    Span span;
};

// One parsed contract. After inheritance resolution, state_variables and
// functions hold the flattened view, base-contract declarations first.
struct ContractUnit {
    std::string name;
    std::optional<std::string> base;
    std::vector<StructDecl> structs;
    std::vector<StateVariableDecl> state_variables;
    std::vector<FunctionDecl> functions;
    std::optional<std::string> source_address; // 0x + 40 hex, carried as metadata
    Span span;

    const StructDecl* find_struct(const std::string& n) const {
        for (const auto& s : structs)
            if (s.name == n)
                return &s;
        return nullptr;
    }
    const FunctionDecl* find_function(const std::string& n) const {
        for (const auto& f : functions)
            if (f.name == n)
                return &f;
        return nullptr;
    }
};

// ---- structural equality (ignores spans and metadata) ----

inline bool structurally_equal(const TypeName& a, const TypeName& b) {
    if (a.kind != b.kind || a.name != b.name || a.array_length != b.array_length ||
        a.params.size() != b.params.size())
        return false;
    for (size_t i = 0; i < a.params.size(); ++i)
        if (!structurally_equal(a.params[i], b.params[i]))
            return false;
    return true;
}

inline bool structurally_equal(const Expr& a, const Expr& b) {
    if (a.kind != b.kind || a.text != b.text || a.children.size() != b.children.size())
        return false;
    for (size_t i = 0; i < a.children.size(); ++i)
        if (!structurally_equal(a.children[i], b.children[i]))
            return false;
    return true;
}

inline bool structurally_equal(const Stmt& a, const Stmt& b) {
    auto all_equal = [](const auto& x, const auto& y) {
        if (x.size() != y.size())
            return false;
        for (size_t i = 0; i < x.size(); ++i)
            if (!structurally_equal(x[i], y[i]))
                return false;
        return true;
    };
    if (a.kind != b.kind || a.name != b.name || a.has_cond != b.has_cond ||
        a.has_post != b.has_post)
        return false;
    if (a.var_type.has_value() != b.var_type.has_value())
        return false;
    if (a.var_type && !structurally_equal(*a.var_type, *b.var_type))
        return false;
    return all_equal(a.exprs, b.exprs) && all_equal(a.body, b.body) &&
           all_equal(a.else_body, b.else_body) && all_equal(a.init_stmts, b.init_stmts);
}

inline bool structurally_equal(const Param& a, const Param& b) {
    return a.name == b.name && structurally_equal(a.type, b.type);
}

inline bool structurally_equal(const StateVariableDecl& a, const StateVariableDecl& b) {
    if (a.name != b.name || a.visibility != b.visibility ||
        a.is_constant_or_immutable != b.is_constant_or_immutable ||
        a.initializer.has_value() != b.initializer.has_value())
        return false;
    if (a.initializer && !structurally_equal(*a.initializer, *b.initializer))
        return false;
    return structurally_equal(a.type, b.type);
}

inline bool structurally_equal(const StructDecl& a, const StructDecl& b) {
    if (a.name != b.name || a.members.size() != b.members.size())
        return false;
    for (size_t i = 0; i < a.members.size(); ++i)
        if (!structurally_equal(a.members[i], b.members[i]))
            return false;
    return true;
}

inline bool structurally_equal(const FunctionDecl& a, const FunctionDecl& b) {
    auto all_equal = [](const auto& x, const auto& y) {
        if (x.size() != y.size())
            return false;
        for (size_t i = 0; i < x.size(); ++i)
            if (!structurally_equal(x[i], y[i]))
                return false;
        return true;
    };
    return a.name == b.name && a.visibility == b.visibility &&
           a.mutability == b.mutability && a.is_constructor == b.is_constructor &&
           all_equal(a.params, b.params) && all_equal(a.returns, b.returns) &&
           all_equal(a.body, b.body);
}

// Compares the substantive structure: name, structs, variables, functions.
// The base annotation is ignored so a flattened reprint compares equal.
inline bool structurally_equal(const ContractUnit& a, const ContractUnit& b) {
    auto all_equal = [](const auto& x, const auto& y) {
        if (x.size() != y.size())
            return false;
        for (size_t i = 0; i < x.size(); ++i)
            if (!structurally_equal(x[i], y[i]))
                return false;
        return true;
    };
    return a.name == b.name && all_equal(a.structs, b.structs) &&
           all_equal(a.state_variables, b.state_variables) &&
           all_equal(a.functions, b.functions);
}

} // namespace solmig
