// Copyright 2026 the solmig authors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "solmig/ast.hpp"
#include "solmig/errors.hpp"
#include "solmig/token.hpp"

namespace solmig {

// Recursive-descent parser for the contract subset: state variables,
// functions, structs, events, single inheritance. Everything else is
// rejected with a diagnostic naming the construct.
class Parser {
public:
    explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

    // Parses a whole compilation unit (pragmas + contract definitions).
    // Contracts are returned in source order, unflattened.
    std::vector<ContractUnit> parse_unit() {
        std::vector<ContractUnit> contracts;
        while (!at_end()) {
            if (at_keyword("pragma")) {
                skip_pragma();
            } else if (at_keyword("contract")) {
                contracts.push_back(parse_contract_def());
            } else if (at_keyword("library") || at_keyword("interface") ||
                       at_keyword("import") || at_keyword("using") ||
                       at_keyword("abstract")) {
                fail_unsupported(peek().text);
            } else {
                fail("expected 'contract'");
            }
        }
        return contracts;
    }

private:
    std::vector<Token> tokens_;
    size_t pos_ = 0;

    // ---- token plumbing ----

    bool at_end() const { return pos_ >= tokens_.size(); }

    const Token& peek(size_t ahead = 0) const {
        static const Token eof{TokenKind::Punctuation, "<end of input>", 0, 0, 0};
        return pos_ + ahead < tokens_.size() ? tokens_[pos_ + ahead] : eof;
    }

    const Token& advance() {
        if (at_end())
            fail("unexpected end of input");
        return tokens_[pos_++];
    }

    bool at(TokenKind kind, std::string_view text) const {
        return !at_end() && peek().kind == kind && peek().text == text;
    }
    bool at_keyword(std::string_view kw) const { return at(TokenKind::Keyword, kw); }
    bool at_punct(std::string_view p) const { return at(TokenKind::Punctuation, p); }
    bool at_op(std::string_view op) const { return at(TokenKind::Operator, op); }

    bool accept(TokenKind kind, std::string_view text) {
        if (!at(kind, text))
            return false;
        ++pos_;
        return true;
    }
    bool accept_keyword(std::string_view kw) { return accept(TokenKind::Keyword, kw); }
    bool accept_punct(std::string_view p) { return accept(TokenKind::Punctuation, p); }
    bool accept_op(std::string_view op) { return accept(TokenKind::Operator, op); }

    const Token& expect(TokenKind kind, std::string_view text, std::string_view what) {
        if (!at(kind, text))
            fail("expected " + std::string(what) + ", found '" + peek().text + "'");
        return tokens_[pos_++];
    }
    const Token& expect_punct(std::string_view p) {
        return expect(TokenKind::Punctuation, p, "'" + std::string(p) + "'");
    }

    std::string expect_identifier(std::string_view what) {
        if (at_end() || peek().kind != TokenKind::Identifier)
            fail("expected " + std::string(what) + ", found '" + peek().text + "'");
        return tokens_[pos_++].text;
    }

    [[noreturn]] void fail(const std::string& msg) const {
        if (pos_ < tokens_.size())
            throw ParseError(msg, tokens_[pos_].line, tokens_[pos_].column);
        uint32_t line = tokens_.empty() ? 1 : tokens_.back().line;
        uint32_t col = tokens_.empty() ? 1 : tokens_.back().column;
        throw ParseError(msg + " at end of input", line, col);
    }

    [[noreturn]] void fail_unsupported(const std::string& construct) const {
        uint32_t line = pos_ < tokens_.size() ? tokens_[pos_].line : 1;
        uint32_t col = pos_ < tokens_.size() ? tokens_[pos_].column : 1;
        throw UnsupportedError("unsupported construct: " + construct, line, col);
    }

    Span span_from(size_t start_tok) const {
        const Token& first = tokens_[start_tok];
        size_t last_idx = pos_ > start_tok ? pos_ - 1 : start_tok;
        const Token& last = tokens_[std::min(last_idx, tokens_.size() - 1)];
        Span s;
        s.offset = first.offset;
        s.length = last.offset + (uint32_t)last.text.size() - first.offset;
        s.line = first.line;
        s.column = first.column;
        return s;
    }

    void skip_pragma() {
        expect(TokenKind::Keyword, "pragma", "'pragma'");
        while (!at_end() && !at_punct(";"))
            ++pos_;
        expect_punct(";");
    }

    // ---- declarations ----

    ContractUnit parse_contract_def() {
        size_t start = pos_;
        expect(TokenKind::Keyword, "contract", "'contract'");
        ContractUnit unit;
        unit.name = expect_identifier("contract name");
        if (accept_keyword("is")) {
            unit.base = expect_identifier("base contract name");
            if (at_punct(","))
                fail_unsupported("multiple inheritance");
        }
        expect_punct("{");
        while (!at_punct("}")) {
            if (at_end())
                fail("expected '}' to close contract body");
            if (at_keyword("struct")) {
                unit.structs.push_back(parse_struct_def());
            } else if (at_keyword("event")) {
                skip_event_def();
            } else if (at_keyword("function") || at_keyword("constructor")) {
                unit.functions.push_back(parse_function_def());
            } else if (at_keyword("modifier")) {
                fail_unsupported("modifier definition");
            } else if (at_keyword("enum")) {
                fail_unsupported("enum definition");
            } else if (at_keyword("using")) {
                fail_unsupported("using directive");
            } else {
                unit.state_variables.push_back(parse_state_variable());
            }
        }
        expect_punct("}");
        unit.span = span_from(start);
        return unit;
    }

    StructDecl parse_struct_def() {
        size_t start = pos_;
        expect(TokenKind::Keyword, "struct", "'struct'");
        StructDecl s;
        s.name = expect_identifier("struct name");
        expect_punct("{");
        while (!accept_punct("}")) {
            if (at_end())
                fail("expected '}' to close struct");
            Param m;
            size_t member_start = pos_;
            m.type = parse_type_name();
            m.name = expect_identifier("struct member name");
            expect_punct(";");
            m.span = span_from(member_start);
            s.members.push_back(std::move(m));
        }
        s.span = span_from(start);
        return s;
    }

    // Events are parsed for syntax and dropped: they touch no storage.
    void skip_event_def() {
        expect(TokenKind::Keyword, "event", "'event'");
        expect_identifier("event name");
        expect_punct("(");
        if (!at_punct(")")) {
            do {
                parse_type_name();
                accept_keyword("indexed");
                if (!at_end() && peek().kind == TokenKind::Identifier)
                    ++pos_; // parameter name is optional
            } while (accept_punct(","));
        }
        expect_punct(")");
        expect_punct(";");
    }

    StateVariableDecl parse_state_variable() {
        size_t start = pos_;
        StateVariableDecl v;
        v.type = parse_type_name();
        while (true) {
            if (accept_keyword("public")) v.visibility = Visibility::Public;
            else if (accept_keyword("internal")) v.visibility = Visibility::Internal;
            else if (accept_keyword("private")) v.visibility = Visibility::Private;
            else if (accept_keyword("constant") || accept_keyword("immutable"))
                v.is_constant_or_immutable = true;
            else break;
        }
        v.name = expect_identifier("state variable name");
        if (accept_op("="))
            v.initializer = parse_expression();
        expect_punct(";");
        v.span = span_from(start);
        return v;
    }

    FunctionDecl parse_function_def() {
        size_t start = pos_;
        FunctionDecl f;
        if (accept_keyword("constructor")) {
            f.name = "constructor";
            f.is_constructor = true;
        } else {
            expect(TokenKind::Keyword, "function", "'function'");
            f.name = expect_identifier("function name");
        }
        expect_punct("(");
        f.params = parse_param_list();
        expect_punct(")");
        while (true) {
            if (accept_keyword("public")) f.visibility = Visibility::Public;
            else if (accept_keyword("internal")) f.visibility = Visibility::Internal;
            else if (accept_keyword("private")) f.visibility = Visibility::Private;
            else if (accept_keyword("external")) f.visibility = Visibility::External;
            else if (accept_keyword("view")) f.mutability = Mutability::View;
            else if (accept_keyword("pure")) f.mutability = Mutability::Pure;
            else if (at_keyword("payable")) fail_unsupported("payable function");
            else if (at_keyword("virtual")) fail_unsupported("virtual function");
            else if (at_keyword("override")) fail_unsupported("function override");
            else break;
        }
        if (accept_keyword("returns")) {
            expect_punct("(");
            f.returns = parse_param_list();
            expect_punct(")");
        }
        if (accept_punct(";"))
            fail_unsupported("function without body");
        f.body = parse_block();
        f.span = span_from(start);
        return f;
    }

    std::vector<Param> parse_param_list() {
        std::vector<Param> params;
        if (at_punct(")"))
            return params;
        do {
            Param p;
            size_t start = pos_;
            p.type = parse_type_name();
            if (!at_end() && peek().kind == TokenKind::Identifier)
                p.name = advance().text;
            p.span = span_from(start);
            params.push_back(std::move(p));
        } while (accept_punct(","));
        return params;
    }

    // ---- types ----

    static bool is_elementary_keyword(const Token& t) {
        if (t.kind != TokenKind::Keyword)
            return false;
        const std::string& s = t.text;
        return s == "address" || s == "bool" || s == "string" || s == "bytes" ||
               s == "byte" || s == "uint" || s == "int" ||
               lex_detail::is_sized_type_keyword(s);
    }

    // Canonicalizes and validates an elementary type keyword.
    std::string canonical_elementary(const std::string& s) {
        auto check_bits = [&](std::string_view prefix) {
            unsigned long bits = std::stoul(s.substr(prefix.size()));
            if (bits % 8 != 0 || bits < 8 || bits > 256)
                fail("invalid integer width in type '" + s + "'");
        };
        if (s == "uint") return "uint256";
        if (s == "int") return "int256";
        if (s == "byte") return "bytes1";
        if (s.starts_with("uint") && s.size() > 4) { check_bits("uint"); return s; }
        if (s.starts_with("int") && s.size() > 3 && std::isdigit((unsigned char)s[3])) {
            check_bits("int");
            return s;
        }
        if (s.starts_with("bytes") && s.size() > 5) {
            unsigned long n = std::stoul(s.substr(5));
            if (n < 1 || n > 32)
                fail("invalid byte count in type '" + s + "'");
            return s;
        }
        return s; // address, bool, string, bytes
    }

    TypeName parse_type_name() {
        size_t start = pos_;
        TypeName t;
        if (at_keyword("mapping")) {
            ++pos_;
            expect_punct("(");
            TypeName key;
            size_t key_start = pos_;
            if (!is_elementary_keyword(peek()))
                fail("mapping key must be an elementary type, found '" + peek().text + "'");
            key.kind = TypeName::Kind::Elementary;
            key.name = canonical_elementary(advance().text);
            key.span = span_from(key_start);
            expect(TokenKind::Punctuation, "=>", "'=>'");
            TypeName value = parse_type_name();
            expect_punct(")");
            t.kind = TypeName::Kind::Mapping;
            t.name = "mapping";
            t.params.push_back(std::move(key));
            t.params.push_back(std::move(value));
        } else if (is_elementary_keyword(peek())) {
            t.kind = TypeName::Kind::Elementary;
            t.name = canonical_elementary(advance().text);
        } else if (!at_end() && peek().kind == TokenKind::Identifier) {
            t.kind = TypeName::Kind::StructRef;
            t.name = advance().text;
        } else {
            fail("expected type name, found '" + peek().text + "'");
        }

        while (at_punct("[")) {
            ++pos_;
            TypeName arr;
            arr.kind = TypeName::Kind::Array;
            arr.name = "array";
            if (!at_punct("]")) {
                if (peek().kind != TokenKind::NumberLiteral)
                    fail("expected array length, found '" + peek().text + "'");
                arr.array_length = std::stoull(advance().text);
                if (*arr.array_length == 0)
                    fail("fixed array length must be positive");
            }
            expect_punct("]");
            arr.params.push_back(std::move(t));
            t = std::move(arr);
        }
        t.span = span_from(start);
        return t;
    }

    // Skips an optional data-location keyword after a type.
    void skip_data_location() {
        if (at_keyword("memory") || at_keyword("storage") || at_keyword("calldata"))
            ++pos_;
    }

    // ---- statements ----

    std::vector<Stmt> parse_block() {
        expect_punct("{");
        std::vector<Stmt> stmts;
        while (!accept_punct("}")) {
            if (at_end())
                fail("expected '}' to close block");
            stmts.push_back(parse_statement());
        }
        return stmts;
    }

    Stmt parse_statement() {
        size_t start = pos_;
        if (at_keyword("assembly"))
            fail_unsupported("inline assembly");
        if (at_keyword("while"))
            fail_unsupported("while loop");
        if (at_keyword("new"))
            fail_unsupported("new expression");
        if (at_keyword("delete"))
            fail_unsupported("delete expression");

        if (at_punct("{")) {
            Stmt s;
            s.kind = Stmt::Kind::Block;
            s.body = parse_block();
            s.span = span_from(start);
            return s;
        }
        if (at_keyword("if"))
            return parse_if();
        if (at_keyword("for"))
            return parse_for();
        if (at_keyword("return")) {
            ++pos_;
            Stmt s;
            s.kind = Stmt::Kind::Return;
            if (!at_punct(";"))
                s.exprs.push_back(parse_expression());
            expect_punct(";");
            s.span = span_from(start);
            return s;
        }
        if (at_keyword("require")) {
            ++pos_;
            Stmt s;
            s.kind = Stmt::Kind::Require;
            expect_punct("(");
            s.exprs.push_back(parse_expression());
            if (accept_punct(","))
                s.exprs.push_back(parse_expression());
            expect_punct(")");
            expect_punct(";");
            s.span = span_from(start);
            return s;
        }
        if (at_keyword("emit")) {
            ++pos_;
            Stmt s;
            s.kind = Stmt::Kind::Emit;
            s.name = expect_identifier("event name");
            expect_punct("(");
            if (!at_punct(")")) {
                do {
                    s.exprs.push_back(parse_expression());
                } while (accept_punct(","));
            }
            expect_punct(")");
            expect_punct(";");
            s.span = span_from(start);
            return s;
        }
        if (starts_local_declaration()) {
            Stmt s = parse_local_declaration();
            expect_punct(";");
            s.span = span_from(start);
            return s;
        }
        Stmt s;
        s.kind = Stmt::Kind::Expr;
        s.exprs.push_back(parse_expression());
        expect_punct(";");
        s.span = span_from(start);
        return s;
    }

    // A statement starting with a type keyword, or `Ident Ident`, is a
    // local declaration; a bare identifier is an expression.
    bool starts_local_declaration() const {
        if (at_end())
            return false;
        if (is_elementary_keyword(peek()) || at_keyword("mapping"))
            return true;
        if (peek().kind == TokenKind::Identifier) {
            // struct-typed local: `Pair memory p` or `Pair p`
            if (peek(1).kind == TokenKind::Identifier)
                return true;
            if (peek(1).kind == TokenKind::Keyword &&
                (peek(1).text == "memory" || peek(1).text == "storage"))
                return true;
        }
        return false;
    }

    Stmt parse_local_declaration() {
        Stmt s;
        s.kind = Stmt::Kind::VarDecl;
        s.var_type = parse_type_name();
        skip_data_location();
        s.name = expect_identifier("variable name");
        if (accept_op("="))
            s.exprs.push_back(parse_expression());
        return s;
    }

    Stmt parse_if() {
        size_t start = pos_;
        expect(TokenKind::Keyword, "if", "'if'");
        Stmt s;
        s.kind = Stmt::Kind::If;
        expect_punct("(");
        s.exprs.push_back(parse_expression());
        expect_punct(")");
        s.body = parse_branch_body();
        if (accept_keyword("else"))
            s.else_body = parse_branch_body();
        s.span = span_from(start);
        return s;
    }

    std::vector<Stmt> parse_branch_body() {
        if (at_punct("{"))
            return parse_block();
        std::vector<Stmt> body;
        body.push_back(parse_statement());
        return body;
    }

    Stmt parse_for() {
        size_t start = pos_;
        expect(TokenKind::Keyword, "for", "'for'");
        Stmt s;
        s.kind = Stmt::Kind::For;
        expect_punct("(");
        if (!accept_punct(";")) {
            if (starts_local_declaration()) {
                s.init_stmts.push_back(parse_local_declaration());
            } else {
                Stmt init;
                init.kind = Stmt::Kind::Expr;
                init.exprs.push_back(parse_expression());
                s.init_stmts.push_back(std::move(init));
            }
            expect_punct(";");
        }
        if (!at_punct(";")) {
            s.exprs.push_back(parse_expression());
            s.has_cond = true;
        }
        expect_punct(";");
        if (!at_punct(")")) {
            s.exprs.push_back(parse_expression());
            s.has_post = true;
        }
        expect_punct(")");
        s.body = parse_branch_body();
        s.span = span_from(start);
        return s;
    }

    // ---- expressions ----

    Expr parse_expression() { return parse_assignment(); }

    Expr make_node(Expr::Kind kind, std::string text, std::vector<Expr> children,
                   size_t start_tok) {
        Expr e;
        e.kind = kind;
        e.text = std::move(text);
        e.children = std::move(children);
        e.span = span_from(start_tok);
        return e;
    }

    Expr parse_assignment() {
        size_t start = pos_;
        Expr lhs = parse_binary(0);
        static const std::string_view assign_ops[] = {"=", "+=", "-=", "*=", "/=", "%="};
        for (std::string_view op : assign_ops) {
            if (at_op(op)) {
                ++pos_;
                Expr rhs = parse_assignment();
                std::vector<Expr> kids;
                kids.push_back(std::move(lhs));
                kids.push_back(std::move(rhs));
                return make_node(Expr::Kind::Assign, std::string(op), std::move(kids), start);
            }
        }
        return lhs;
    }

    struct BinaryLevel {
        std::vector<std::string_view> ops;
    };

    const std::vector<BinaryLevel>& binary_levels() const {
        static const std::vector<BinaryLevel> levels = {
            {{"||"}},
            {{"&&"}},
            {{"|"}},
            {{"^"}},
            {{"&"}},
            {{"==", "!="}},
            {{"<", ">", "<=", ">="}},
            {{"+", "-"}},
            {{"*", "/", "%"}},
        };
        return levels;
    }

    Expr parse_binary(size_t level) {
        if (level >= binary_levels().size())
            return parse_unary();
        size_t start = pos_;
        Expr lhs = parse_binary(level + 1);
        while (true) {
            bool matched = false;
            for (std::string_view op : binary_levels()[level].ops) {
                if (at_op(op)) {
                    ++pos_;
                    Expr rhs = parse_binary(level + 1);
                    std::vector<Expr> kids;
                    kids.push_back(std::move(lhs));
                    kids.push_back(std::move(rhs));
                    lhs = make_node(Expr::Kind::Binary, std::string(op), std::move(kids), start);
                    matched = true;
                    break;
                }
            }
            if (!matched)
                return lhs;
        }
    }

    Expr parse_unary() {
        size_t start = pos_;
        static const std::string_view unary_ops[] = {"!", "-", "~", "++", "--"};
        for (std::string_view op : unary_ops) {
            if (at_op(op)) {
                ++pos_;
                Expr operand = parse_unary();
                std::vector<Expr> kids;
                kids.push_back(std::move(operand));
                return make_node(Expr::Kind::Unary, std::string(op), std::move(kids), start);
            }
        }
        return parse_postfix();
    }

    Expr parse_postfix() {
        size_t start = pos_;
        Expr e = parse_primary();
        while (true) {
            if (at_punct("(")) {
                ++pos_;
                std::vector<Expr> kids;
                kids.push_back(std::move(e));
                if (!at_punct(")")) {
                    do {
                        kids.push_back(parse_expression());
                    } while (accept_punct(","));
                }
                expect_punct(")");
                e = make_node(Expr::Kind::Call, "", std::move(kids), start);
            } else if (at_punct("[")) {
                ++pos_;
                Expr index = parse_expression();
                expect_punct("]");
                std::vector<Expr> kids;
                kids.push_back(std::move(e));
                kids.push_back(std::move(index));
                e = make_node(Expr::Kind::Index, "", std::move(kids), start);
            } else if (at_punct(".")) {
                ++pos_;
                std::string member;
                // member names may collide with keywords (e.g. x.length is fine,
                // but `length` is an identifier anyway); accept identifiers only
                if (!at_end() && peek().kind == TokenKind::Identifier)
                    member = advance().text;
                else
                    fail("expected member name after '.'");
                std::vector<Expr> kids;
                kids.push_back(std::move(e));
                e = make_node(Expr::Kind::Member, std::move(member), std::move(kids), start);
            } else if (at_op("++") || at_op("--")) {
                std::string op = advance().text;
                std::vector<Expr> kids;
                kids.push_back(std::move(e));
                e = make_node(Expr::Kind::Postfix, std::move(op), std::move(kids), start);
            } else {
                return e;
            }
        }
    }

    static std::string decode_string_literal(const std::string& raw) {
        std::string out;
        for (size_t i = 1; i + 1 < raw.size(); ++i) {
            if (raw[i] == '\\') {
                ++i;
                switch (raw[i]) {
                case 'n': out.push_back('\n'); break;
                case 't': out.push_back('\t'); break;
                case 'r': out.push_back('\r'); break;
                case '0': out.push_back('\0'); break;
                default: out.push_back(raw[i]); break;
                }
            } else {
                out.push_back(raw[i]);
            }
        }
        return out;
    }

    Expr parse_primary() {
        size_t start = pos_;
        if (at_end())
            fail("expected expression");
        const Token& t = peek();
        if (t.kind == TokenKind::NumberLiteral) {
            ++pos_;
            return make_node(Expr::Kind::Number, t.text, {}, start);
        }
        if (t.kind == TokenKind::StringLiteral) {
            ++pos_;
            return make_node(Expr::Kind::StringLit, decode_string_literal(t.text), {}, start);
        }
        if (at_keyword("true") || at_keyword("false")) {
            std::string text = advance().text;
            return make_node(Expr::Kind::BoolLit, std::move(text), {}, start);
        }
        if (at_keyword("new"))
            fail_unsupported("new expression");
        if (at_keyword("delete"))
            fail_unsupported("delete expression");
        if (is_elementary_keyword(t)) {
            // cast: address(0), uint256(x)
            std::string type_name = canonical_elementary(advance().text);
            expect_punct("(");
            Expr operand = parse_expression();
            expect_punct(")");
            std::vector<Expr> kids;
            kids.push_back(std::move(operand));
            return make_node(Expr::Kind::Cast, std::move(type_name), std::move(kids), start);
        }
        if (t.kind == TokenKind::Identifier) {
            ++pos_;
            return make_node(Expr::Kind::Ident, t.text, {}, start);
        }
        if (accept_punct("(")) {
            Expr inner = parse_expression();
            expect_punct(")");
            return inner;
        }
        fail("expected expression, found '" + t.text + "'");
    }
};

// ---- inheritance resolution ----

namespace parse_detail {

inline const ContractUnit* find_contract(const std::vector<ContractUnit>& units,
                                         const std::string& name) {
    for (const auto& u : units)
        if (u.name == name)
            return &u;
    return nullptr;
}

inline void check_unique_names(const ContractUnit& c) {
    std::unordered_set<std::string> vars, fns;
    for (const auto& v : c.state_variables)
        if (!vars.insert(v.name).second)
            throw ParseError("duplicate state variable '" + v.name + "' in contract '" +
                             c.name + "'");
    for (const auto& f : c.functions)
        if (!fns.insert(f.name).second)
            throw ParseError("duplicate function '" + f.name + "' in contract '" + c.name +
                             "'");
}

} // namespace parse_detail

// Flattens a linear inheritance chain: base declarations first. The chain
// must be acyclic and each parent defined in the same unit (an unresolved
// parent name is kept as annotation and the contract used as-is).
inline ContractUnit resolve_inheritance(const ContractUnit& derived,
                                        const std::vector<ContractUnit>& units) {
    std::vector<const ContractUnit*> chain; // derived ... root
    std::unordered_set<std::string> seen;
    const ContractUnit* cur = &derived;
    chain.push_back(cur);
    seen.insert(cur->name);
    while (cur->base) {
        const ContractUnit* parent = parse_detail::find_contract(units, *cur->base);
        if (!parent)
            break; // external parent: keep annotation, nothing to flatten
        if (!seen.insert(parent->name).second)
            throw ParseError("inheritance cycle through contract '" + parent->name + "'");
        chain.push_back(parent);
        cur = parent;
    }

    ContractUnit flat;
    flat.name = derived.name;
    flat.base = derived.base;
    flat.span = derived.span;
    flat.source_address = derived.source_address;
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
        const ContractUnit& c = **it;
        flat.structs.insert(flat.structs.end(), c.structs.begin(), c.structs.end());
        flat.state_variables.insert(flat.state_variables.end(), c.state_variables.begin(),
                                    c.state_variables.end());
        flat.functions.insert(flat.functions.end(), c.functions.begin(), c.functions.end());
    }
    parse_detail::check_unique_names(flat);
    return flat;
}

// Parses token stream into the main (last-defined) contract, inheritance
// flattened.
inline ContractUnit parse(std::vector<Token> tokens) {
    Parser parser(std::move(tokens));
    std::vector<ContractUnit> units = parser.parse_unit();
    if (units.empty())
        throw ParseError("input contains no contract definition");
    return resolve_inheritance(units.back(), units);
}

// Convenience: lex + parse in one step.
inline ContractUnit parse_source(std::string_view source) {
    return parse(tokenize(source));
}

} // namespace solmig
