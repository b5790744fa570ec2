// Copyright 2026 the solmig authors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0

#include <fstream>
#include <sstream>

#include "catch_amalgamated.hpp"

#include "solmig/token.hpp"

using namespace solmig;

namespace {
std::string fixture(const std::string& name) {
    std::ifstream in(std::string(SOLMIG_FIXTURES_DIR) + "/" + name);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}
} // namespace

TEST_CASE("empty input yields no tokens") {
    CHECK(tokenize("").empty());
    CHECK(tokenize("  \n\t // comment only\n/* block */").empty());
}

TEST_CASE("smallest contract") {
    auto tokens = tokenize("contract A {}");
    REQUIRE(tokens.size() == 4);
    CHECK(tokens[0].kind == TokenKind::Keyword);
    CHECK(tokens[0].text == "contract");
    CHECK(tokens[1].kind == TokenKind::Identifier);
    CHECK(tokens[1].text == "A");
    CHECK(tokens[2].text == "{");
    CHECK(tokens[3].text == "}");
}

TEST_CASE("token positions point into the source") {
    std::string src = "contract A {\n    uint256 x;\n}";
    auto tokens = tokenize(src);
    for (const Token& t : tokens) {
        REQUIRE(t.offset + t.text.size() <= src.size());
        CHECK(src.substr(t.offset, t.text.size()) == t.text);
    }
    // tokens are non-overlapping and in source order, so splicing them at
    // their offsets reproduces the source up to whitespace/comments
    for (size_t i = 1; i < tokens.size(); ++i)
        CHECK(tokens[i - 1].offset + tokens[i - 1].text.size() <= tokens[i].offset);
    // line/column of the uint256 on line 2
    CHECK(tokens[4].text == "uint256");
    CHECK(tokens[4].line == 2);
    CHECK(tokens[4].column == 5);
}

TEST_CASE("token kinds") {
    auto tokens = tokenize("x = m[k] + 0x1f >= \"s\" && true ++");
    CHECK(tokens[0].kind == TokenKind::Identifier);
    CHECK(tokens[1].kind == TokenKind::Operator);
    CHECK(tokens[3].kind == TokenKind::Punctuation); // [
    CHECK(tokens[7].kind == TokenKind::NumberLiteral);
    CHECK(tokens[7].text == "0x1f");
    CHECK(tokens[8].kind == TokenKind::Operator);
    CHECK(tokens[8].text == ">=");
    CHECK(tokens[9].kind == TokenKind::StringLiteral);
    CHECK(tokens[10].text == "&&");
    CHECK(tokens[11].kind == TokenKind::Keyword); // true
    CHECK(tokens[12].text == "++");
}

TEST_CASE("lex errors carry positions") {
    CHECK_THROWS_AS(tokenize("contract A { # }"), LexError);
    CHECK_THROWS_AS(tokenize("\"unterminated"), LexError);
    CHECK_THROWS_AS(tokenize("/* unterminated"), LexError);
    try {
        tokenize("contract A {\n  # \n}");
        FAIL("expected LexError");
    } catch (const LexError& e) {
        CHECK(e.line == 2);
        CHECK(e.column == 3);
    }
}

TEST_CASE("fixture token count golden") {
    // frozen after a manual spot-check of the first and last tokens
    auto tokens = tokenize(fixture("erc20.sol"));
    CHECK(tokens.size() == 740);
    CHECK(tokens.front().text == "pragma");
    CHECK(tokens.back().text == "}");
}
