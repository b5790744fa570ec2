// Copyright 2026 the solmig authors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <string>

#include "solmig/ast.hpp"

namespace solmig {

// Prints an AST back to subset source. parse(print(ast)) is structurally
// equal to ast; formatting is canonical, not the original text.
namespace print_detail {

inline void print_type(const TypeName& t, std::string& out) {
    switch (t.kind) {
    case TypeName::Kind::Elementary:
    case TypeName::Kind::StructRef:
        out += t.name;
        break;
    case TypeName::Kind::Mapping:
        out += "mapping(";
        print_type(t.params[0], out);
        out += " => ";
        print_type(t.params[1], out);
        out += ")";
        break;
    case TypeName::Kind::Array:
        print_type(t.params[0], out);
        out += "[";
        if (t.array_length)
            out += std::to_string(*t.array_length);
        out += "]";
        break;
    }
}

inline std::string escape_string(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        case '\r': out += "\\r"; break;
        default: out.push_back(c); break;
        }
    }
    out += "\"";
    return out;
}

inline void print_expr(const Expr& e, std::string& out) {
    switch (e.kind) {
    case Expr::Kind::Number:
    case Expr::Kind::Ident:
    case Expr::Kind::BoolLit:
        out += e.text;
        break;
    case Expr::Kind::StringLit:
        out += escape_string(e.text);
        break;
    case Expr::Kind::Member:
        print_expr(e.children[0], out);
        out += "." + e.text;
        break;
    case Expr::Kind::Index:
        print_expr(e.children[0], out);
        out += "[";
        print_expr(e.children[1], out);
        out += "]";
        break;
    case Expr::Kind::Call:
        print_expr(e.children[0], out);
        out += "(";
        for (size_t i = 1; i < e.children.size(); ++i) {
            if (i > 1)
                out += ", ";
            print_expr(e.children[i], out);
        }
        out += ")";
        break;
    case Expr::Kind::Cast:
        out += e.text + "(";
        print_expr(e.children[0], out);
        out += ")";
        break;
    case Expr::Kind::Binary:
        out += "(";
        print_expr(e.children[0], out);
        out += " " + e.text + " ";
        print_expr(e.children[1], out);
        out += ")";
        break;
    case Expr::Kind::Unary:
        out += e.text;
        out += "(";
        print_expr(e.children[0], out);
        out += ")";
        break;
    case Expr::Kind::Postfix:
        out += "(";
        print_expr(e.children[0], out);
        out += ")";
        out += e.text;
        break;
    case Expr::Kind::Assign:
        print_expr(e.children[0], out);
        out += " " + e.text + " ";
        print_expr(e.children[1], out);
        break;
    }
}

inline void print_stmt(const Stmt& s, std::string& out, int indent);

inline void print_body(const std::vector<Stmt>& body, std::string& out, int indent) {
    out += "{\n";
    for (const Stmt& s : body)
        print_stmt(s, out, indent + 1);
    out.append((size_t)indent * 4, ' ');
    out += "}";
}

inline void print_stmt(const Stmt& s, std::string& out, int indent) {
    out.append((size_t)indent * 4, ' ');
    switch (s.kind) {
    case Stmt::Kind::Expr:
        print_expr(s.exprs[0], out);
        out += ";\n";
        break;
    case Stmt::Kind::VarDecl:
        print_type(*s.var_type, out);
        out += " " + s.name;
        if (!s.exprs.empty()) {
            out += " = ";
            print_expr(s.exprs[0], out);
        }
        out += ";\n";
        break;
    case Stmt::Kind::If:
        out += "if (";
        print_expr(s.exprs[0], out);
        out += ") ";
        print_body(s.body, out, indent);
        if (!s.else_body.empty()) {
            out += " else ";
            print_body(s.else_body, out, indent);
        }
        out += "\n";
        break;
    case Stmt::Kind::For: {
        out += "for (";
        if (!s.init_stmts.empty()) {
            const Stmt& init = s.init_stmts[0];
            if (init.kind == Stmt::Kind::VarDecl) {
                print_type(*init.var_type, out);
                out += " " + init.name;
                if (!init.exprs.empty()) {
                    out += " = ";
                    print_expr(init.exprs[0], out);
                }
            } else {
                print_expr(init.exprs[0], out);
            }
        }
        out += "; ";
        size_t idx = 0;
        if (s.has_cond)
            print_expr(s.exprs[idx++], out);
        out += "; ";
        if (s.has_post)
            print_expr(s.exprs[idx], out);
        out += ") ";
        print_body(s.body, out, indent);
        out += "\n";
        break;
    }
    case Stmt::Kind::Return:
        out += "return";
        if (!s.exprs.empty()) {
            out += " ";
            print_expr(s.exprs[0], out);
        }
        out += ";\n";
        break;
    case Stmt::Kind::Require:
        out += "require(";
        print_expr(s.exprs[0], out);
        if (s.exprs.size() > 1) {
            out += ", ";
            print_expr(s.exprs[1], out);
        }
        out += ");\n";
        break;
    case Stmt::Kind::Emit:
        out += "emit " + s.name + "(";
        for (size_t i = 0; i < s.exprs.size(); ++i) {
            if (i > 0)
                out += ", ";
            print_expr(s.exprs[i], out);
        }
        out += ");\n";
        break;
    case Stmt::Kind::Block:
        print_body(s.body, out, indent);
        out += "\n";
        break;
    }
}

inline const char* visibility_keyword(Visibility v) {
    switch (v) {
    case Visibility::Public: return "public";
    case Visibility::Internal: return "internal";
    case Visibility::Private: return "private";
    case Visibility::External: return "external";
    }
    return "internal";
}

} // namespace print_detail

inline std::string print_contract(const ContractUnit& c) {
    using namespace print_detail;
    std::string out = "contract " + c.name + " {\n";
    for (const StructDecl& s : c.structs) {
        out += "    struct " + s.name + " {\n";
        for (const Param& m : s.members) {
            out += "        ";
            print_type(m.type, out);
            out += " " + m.name + ";\n";
        }
        out += "    }\n";
    }
    for (const StateVariableDecl& v : c.state_variables) {
        out += "    ";
        print_type(v.type, out);
        out += " ";
        out += visibility_keyword(v.visibility);
        if (v.is_constant_or_immutable)
            out += " constant";
        out += " " + v.name;
        if (v.initializer) {
            out += " = ";
            print_expr(*v.initializer, out);
        }
        out += ";\n";
    }
    for (const FunctionDecl& f : c.functions) {
        out += "    ";
        if (f.is_constructor) {
            out += "constructor(";
        } else {
            out += "function " + f.name + "(";
        }
        for (size_t i = 0; i < f.params.size(); ++i) {
            if (i > 0)
                out += ", ";
            print_type(f.params[i].type, out);
            if (!f.params[i].name.empty())
                out += " " + f.params[i].name;
        }
        out += ") ";
        out += visibility_keyword(f.visibility);
        if (f.mutability == Mutability::View)
            out += " view";
        else if (f.mutability == Mutability::Pure)
            out += " pure";
        if (!f.returns.empty()) {
            out += " returns (";
            for (size_t i = 0; i < f.returns.size(); ++i) {
                if (i > 0)
                    out += ", ";
                print_type(f.returns[i].type, out);
                if (!f.returns[i].name.empty())
                    out += " " + f.returns[i].name;
            }
            out += ")";
        }
        out += " ";
        print_body(f.body, out, 1);
        out += "\n";
    }
    out += "}\n";
    return out;
}

} // namespace solmig
