// Copyright 2026 the solmig authors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "solmig/errors.hpp"

namespace solmig {

enum class TokenKind {
    Identifier,
    Keyword,
    NumberLiteral,
    StringLiteral,
    Punctuation,
    Operator,
};

struct Token {
    TokenKind kind;
    std::string text;
    uint32_t line = 1;
    uint32_t column = 1;
    uint32_t offset = 0;
};

namespace lex_detail {

// Keywords of the subset grammar. uintN/intN/bytesN are matched by pattern.
inline const std::unordered_set<std::string_view>& keyword_set() {
    static const std::unordered_set<std::string_view> kw = {
        "contract",  "is",        "struct",    "function", "returns",
        "return",    "if",        "else",      "for",      "while",
        "require",   "emit",      "event",     "mapping",  "public",
        "private",   "internal",  "external",  "view",     "pure",
        "payable",   "constant",  "immutable", "memory",   "storage",
        "calldata",  "true",      "false",     "constructor", "pragma",
        "new",       "delete",    "assembly",  "modifier", "library",
        "interface", "import",    "using",     "abstract", "virtual",
        "override",  "address",   "bool",      "string",   "bytes",
        "byte",      "uint",      "int",       "solidity", "enum",
    };
    return kw;
}

inline bool is_sized_type_keyword(std::string_view word) {
    auto sized = [&](std::string_view prefix) {
        if (word.size() <= prefix.size() || word.substr(0, prefix.size()) != prefix)
            return false;
        for (char c : word.substr(prefix.size()))
            if (!std::isdigit((unsigned char)c))
                return false;
        return true;
    };
    return sized("uint") || sized("int") || sized("bytes");
}

inline bool is_keyword(std::string_view word) {
    return keyword_set().count(word) > 0 || is_sized_type_keyword(word);
}

inline bool is_ident_start(char c) {
    return std::isalpha((unsigned char)c) || c == '_' || c == '$';
}

inline bool is_ident_char(char c) {
    return is_ident_start(c) || std::isdigit((unsigned char)c);
}

} // namespace lex_detail

// Lexes source into tokens. Whitespace and comments are consumed; every
// token records the line/column/offset of its first character.
inline std::vector<Token> tokenize(std::string_view source) {
    std::vector<Token> tokens;
    uint32_t line = 1;
    uint32_t col = 1;
    size_t i = 0;
    const size_t n = source.size();

    auto advance = [&](size_t count) {
        for (size_t k = 0; k < count; ++k) {
            if (source[i + k] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        i += count;
    };

    auto push = [&](TokenKind kind, size_t len) {
        tokens.push_back({kind, std::string(source.substr(i, len)), line, col, (uint32_t)i});
        advance(len);
    };

    while (i < n) {
        char c = source[i];
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
            advance(1);
            continue;
        }
        if (c == '/' && i + 1 < n && source[i + 1] == '/') {
            size_t end = source.find('\n', i);
            advance((end == std::string_view::npos ? n : end) - i);
            continue;
        }
        if (c == '/' && i + 1 < n && source[i + 1] == '*') {
            size_t end = source.find("*/", i + 2);
            if (end == std::string_view::npos)
                throw LexError("unterminated block comment", line, col);
            advance(end + 2 - i);
            continue;
        }
        if (lex_detail::is_ident_start(c)) {
            size_t len = 1;
            while (i + len < n && lex_detail::is_ident_char(source[i + len]))
                ++len;
            std::string_view word = source.substr(i, len);
            push(lex_detail::is_keyword(word) ? TokenKind::Keyword : TokenKind::Identifier, len);
            continue;
        }
        if (std::isdigit((unsigned char)c)) {
            size_t len = 1;
            if (c == '0' && i + 1 < n && (source[i + 1] == 'x' || source[i + 1] == 'X')) {
                len = 2;
                while (i + len < n && std::isxdigit((unsigned char)source[i + len]))
                    ++len;
                if (len == 2)
                    throw LexError("hex literal needs at least one digit", line, col);
            } else {
                while (i + len < n && std::isdigit((unsigned char)source[i + len]))
                    ++len;
            }
            push(TokenKind::NumberLiteral, len);
            continue;
        }
        if (c == '"') {
            size_t len = 1;
            while (true) {
                if (i + len >= n || source[i + len] == '\n')
                    throw LexError("unterminated string literal", line, col);
                if (source[i + len] == '\\') {
                    if (i + len + 1 >= n)
                        throw LexError("unterminated string literal", line, col);
                    len += 2;
                    continue;
                }
                if (source[i + len] == '"') {
                    ++len;
                    break;
                }
                ++len;
            }
            push(TokenKind::StringLiteral, len);
            continue;
        }

        // multi-char operators, longest match first
        std::string_view rest = source.substr(i);
        static const std::string_view two_char_ops[] = {
            "==", "!=", "<=", ">=", "&&", "||", "+=", "-=", "*=", "/=",
            "%=", "++", "--", "=>",
        };
        bool matched = false;
        for (std::string_view op : two_char_ops) {
            if (rest.substr(0, 2) == op) {
                push(op == "=>" ? TokenKind::Punctuation : TokenKind::Operator, 2);
                matched = true;
                break;
            }
        }
        if (matched)
            continue;

        switch (c) {
        case '{': case '}': case '(': case ')': case '[': case ']':
        case ';': case ',': case '.':
            push(TokenKind::Punctuation, 1);
            continue;
        case '=': case '+': case '-': case '*': case '/': case '%':
        case '<': case '>': case '!': case '&': case '|': case '^': case '~':
            push(TokenKind::Operator, 1);
            continue;
        default:
            throw LexError(std::string("illegal character '") + c + "'", line, col);
        }
    }
    return tokens;
}

} // namespace solmig
