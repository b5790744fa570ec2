// Copyright 2026 the solmig authors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0

#include <fstream>
#include <sstream>

#include "catch_amalgamated.hpp"

#include "solmig/parser.hpp"
#include "solmig/printer.hpp"

using namespace solmig;

namespace {

std::string fixture(const std::string& name) {
    std::ifstream in(std::string(SOLMIG_FIXTURES_DIR) + "/" + name);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

size_t count_visibility(const ContractUnit& c, Visibility v) {
    size_t n = 0;
    for (const auto& f : c.functions)
        n += f.visibility == v ? 1 : 0;
    return n;
}

void check_sibling_spans(const std::vector<Stmt>& stmts, uint32_t source_size);

void check_expr_siblings(const Expr& e, uint32_t source_size) {
    CHECK(e.span.end() <= source_size);
    for (const Expr& c : e.children) {
        CHECK(c.span.offset >= e.span.offset);
        CHECK(c.span.end() <= e.span.end());
        check_expr_siblings(c, source_size);
    }
    for (size_t i = 1; i < e.children.size(); ++i)
        CHECK(e.children[i - 1].span.end() <= e.children[i].span.offset);
}

void check_sibling_spans(const std::vector<Stmt>& stmts, uint32_t source_size) {
    for (size_t i = 1; i < stmts.size(); ++i)
        CHECK(stmts[i - 1].span.end() <= stmts[i].span.offset);
    for (const Stmt& s : stmts) {
        CHECK(s.span.end() <= source_size);
        for (const Expr& e : s.exprs)
            check_expr_siblings(e, source_size);
        check_sibling_spans(s.body, source_size);
        check_sibling_spans(s.else_body, source_size);
        check_sibling_spans(s.init_stmts, source_size);
    }
}

} // namespace

TEST_CASE("single variable contract") {
    ContractUnit c = parse_source("contract A { uint256 x; }");
    CHECK(c.name == "A");
    REQUIRE(c.state_variables.size() == 1);
    CHECK(c.state_variables[0].name == "x");
    CHECK(c.state_variables[0].type.name == "uint256");
    CHECK(c.functions.empty());
}

TEST_CASE("erc20 fixture parse golden") {
    ContractUnit c = parse_source(fixture("erc20.sol"));
    CHECK(c.name == "ERC20");
    CHECK(c.state_variables.size() == 5);
    CHECK(c.functions.size() == 11);
    CHECK(count_visibility(c, Visibility::Public) == 9);
    CHECK(count_visibility(c, Visibility::Internal) == 2);
    CHECK(c.state_variables[0].name == "_balances");
    CHECK(c.state_variables[4].name == "_symbol");
    // declaration order equals textual order
    std::vector<std::string> names;
    for (const auto& f : c.functions)
        names.push_back(f.name);
    CHECK(names == std::vector<std::string>{"name", "symbol", "decimals", "totalSupply",
                                            "balanceOf", "transfer", "allowance", "approve",
                                            "transferFrom", "_transfer", "_approve"});
    const FunctionDecl* decimals = c.find_function("decimals");
    REQUIRE(decimals);
    CHECK(decimals->mutability == Mutability::Pure);
}

TEST_CASE("unsupported constructs are named") {
    auto expect_unsupported = [](const std::string& src, const std::string& what) {
        try {
            parse_source(src);
            FAIL("expected UnsupportedError for " + what);
        } catch (const UnsupportedError& e) {
            CHECK(std::string(e.what()).find(what) != std::string::npos);
        }
    };
    expect_unsupported("contract A { function f() public { assembly {} } }", "assembly");
    expect_unsupported("contract A { modifier onlyOwner() { _; } }", "modifier");
    expect_unsupported("library L {}", "library");
    expect_unsupported("contract A is B, C {}", "multiple inheritance");
    expect_unsupported("contract A { function f() public { while (true) {} } }", "while");
    expect_unsupported("contract A { function f() public payable {} }", "payable");
}

TEST_CASE("syntax errors carry expected/found and position") {
    try {
        parse_source("contract A { uint256 }");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        std::string msg = e.what();
        CHECK(msg.find("expected") != std::string::npos);
        CHECK(msg.find("}") != std::string::npos);
        CHECK(e.line == 1);
    }
    CHECK_THROWS_AS(parse_source("contract A { mapping(mapping(uint256 => bool) => bool) m; }"),
                    ParseError);
    CHECK_THROWS_AS(parse_source(""), ParseError);
}

TEST_CASE("single inheritance flattens base first") {
    std::string src = R"(
        contract Base {
            uint256 baseValue;
            function readBase() public view returns (uint256) { return baseValue; }
        }
        contract Derived is Base {
            uint128 d1;
            uint128 d2;
        }
    )";
    ContractUnit c = parse_source(src);
    CHECK(c.name == "Derived");
    REQUIRE(c.base.has_value());
    CHECK(*c.base == "Base");
    REQUIRE(c.state_variables.size() == 3);
    CHECK(c.state_variables[0].name == "baseValue");
    CHECK(c.state_variables[1].name == "d1");
    CHECK(c.functions.size() == 1);
}

TEST_CASE("inheritance cycle is rejected") {
    std::string src = "contract A is B { } contract B is A { }";
    CHECK_THROWS_AS(parse_source(src), ParseError);
}

TEST_CASE("duplicate names are rejected") {
    CHECK_THROWS_AS(parse_source("contract A { uint256 x; uint256 x; }"), ParseError);
    CHECK_THROWS_AS(
        parse_source("contract A { function f() public {} function f() public {} }"),
        ParseError);
}

TEST_CASE("constants are parsed and flagged") {
    ContractUnit c = parse_source("contract A { uint256 public constant MAX = 100; bool b; }");
    REQUIRE(c.state_variables.size() == 2);
    CHECK(c.state_variables[0].is_constant_or_immutable);
    CHECK_FALSE(c.state_variables[1].is_constant_or_immutable);
}

TEST_CASE("ast spans: siblings do not overlap, spans lie in the input") {
    std::string src = fixture("erc20.sol");
    ContractUnit c = parse_source(src);
    for (const auto& f : c.functions)
        check_sibling_spans(f.body, (uint32_t)src.size());
    for (size_t i = 1; i < c.functions.size(); ++i)
        CHECK(c.functions[i - 1].span.end() <= c.functions[i].span.offset);
    for (size_t i = 1; i < c.state_variables.size(); ++i)
        CHECK(c.state_variables[i - 1].span.end() <= c.state_variables[i].span.offset);
}

TEST_CASE("print/parse round trip on the fixtures") {
    for (const char* name : {"erc20.sol", "erc721.sol", "erc1155.sol"}) {
        ContractUnit original = parse_source(fixture(name));
        std::string printed = print_contract(original);
        ContractUnit reparsed = parse_source(printed);
        INFO("fixture: " << name << "\nprinted:\n" << printed);
        CHECK(structurally_equal(original, reparsed));
    }
}

TEST_CASE("print/parse round trip on targeted constructs") {
    const char* src = R"(
        contract T {
            struct Pair { uint128 a; uint128 b; }
            uint256[] items;
            uint8[4] small;
            Pair p;
            mapping(address => mapping(uint256 => bool)) flags;
            function f(uint256 n) public returns (uint256 total) {
                uint256 acc = 0;
                for (uint256 i = 0; i < n; ++i) {
                    if (i % 2 == 0) {
                        acc += i * 3;
                    } else {
                        acc -= 1;
                    }
                }
                require(acc >= 0, "negative");
                items[0] = acc;
                flags[msg.sender][acc] = true;
                small[1] = uint8(acc);
                p.a = uint128(acc);
                return acc;
            }
        }
    )";
    ContractUnit original = parse_source(src);
    ContractUnit reparsed = parse_source(print_contract(original));
    CHECK(structurally_equal(original, reparsed));
}

TEST_CASE("events are parsed and ignored") {
    ContractUnit c = parse_source(
        "contract A { event E(address indexed who, uint256 amount); uint256 x; "
        "function f() public { emit E(msg.sender, x); } }");
    CHECK(c.state_variables.size() == 1);
    CHECK(c.functions.size() == 1);
}

TEST_CASE("constructors parse as functions") {
    ContractUnit c =
        parse_source("contract A { uint256 x; constructor(uint256 v) { x = v; } }");
    REQUIRE(c.functions.size() == 1);
    CHECK(c.functions[0].is_constructor);
    CHECK(c.functions[0].name == "constructor");
}
