// Copyright 2026 the solmig authors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0

#include "catch_amalgamated.hpp"

#include "solmig/u256.hpp"

using namespace solmig;

TEST_CASE("u256 decimal round trip") {
    CHECK(U256(0).to_decimal() == "0");
    CHECK(U256(1).to_decimal() == "1");
    CHECK(U256(1234567890123456789ULL).to_decimal() == "1234567890123456789");
    CHECK(U256::from_decimal("340282366920938463463374607431768211456").to_decimal() ==
          "340282366920938463463374607431768211456"); // 2^128
}

TEST_CASE("u256 bytes round trip and ordering") {
    U256 v = U256::from_decimal("115792089237316195423570985008687907853"
                                "269984665640564039457584007913129639935"); // 2^256-1
    Bytes32 b = v.to_bytes();
    for (uint8_t byte : b)
        CHECK(byte == 0xff);
    CHECK(U256::from_bytes(b) == v);
    CHECK(U256(5) < U256(6));
    CHECK(U256(5) + U256(1) == U256(6));
    CHECK(v + U256(1) == U256(0)); // wraps
}

TEST_CASE("u256 hex parsing") {
    Bytes32 b = hex::parse_bytes32("0xff");
    CHECK(b[31] == 0xff);
    CHECK(b[30] == 0x00);
    CHECK(hex::to_hex(b) ==
          "0x00000000000000000000000000000000000000000000000000000000000000ff");
    CHECK_THROWS_AS(hex::parse_bytes32("ff"), ConfigError);
    CHECK_THROWS_AS(hex::parse_bytes32("0x"), ConfigError);
    CHECK_THROWS_AS(hex::parse_bytes32("0xgg"), ConfigError);
}

TEST_CASE("u256 multiplication and division by small factors") {
    U256 v = U256::from_decimal("99999999999999999999999999999999");
    uint64_t rem = 0;
    CHECK(v.mul_u64(10).divmod_u64(10, rem) == v);
    CHECK(rem == 0);
    U256 q = U256(100).divmod_u64(7, rem);
    CHECK(q == U256(14));
    CHECK(rem == 2);
}

TEST_CASE("u256 literal parser accepts both bases") {
    CHECK(parse_u256_literal("255") == parse_u256_literal("0xff"));
    CHECK_THROWS_AS(parse_u256_literal("12a"), ConfigError);
}
