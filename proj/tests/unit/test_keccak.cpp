// Copyright 2026 the solmig authors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0

#include <string>
#include <vector>

#include "catch_amalgamated.hpp"

#include "solmig/keccak.hpp"
#include "solmig/layout.hpp"

using namespace solmig;

namespace {
std::string digest_hex(const Bytes32& d) {
    return hex::to_hex(d).substr(2);
}
} // namespace

// Published Keccak-256 vectors (pre-FIPS padding, as used on-chain).
TEST_CASE("keccak256 published vectors") {
    CHECK(digest_hex(keccak256("")) ==
          "c5d2460186f7233c927e7db2dcc703c0e500b653ca82273b7bfad8045d85a470");
    CHECK(digest_hex(keccak256("abc")) ==
          "4e03657aea45a94fc7d47ba826c8d667c0d1e6e33a64a036ec44f58fa12d6c45");
    CHECK(digest_hex(keccak256("The quick brown fox jumps over the lazy dog")) ==
          "4d741b6f1eb29cb2a9b9911c82f56fa8d73b04959d3d9d222895df6c0b28aa15");
}

TEST_CASE("keccak256 multi-block inputs") {
    // 200 bytes of 0xa3 spans two 136-byte rate blocks
    std::vector<uint8_t> a3(200, 0xa3);
    CHECK(digest_hex(keccak256(std::span<const uint8_t>(a3.data(), a3.size()))) ==
          "3a57666b048777f2c953dc4456f45a2588e1cb6f2da760122d530ac2ce607d4a");

    std::string million(1000000, 'a');
    CHECK(digest_hex(keccak256(million)) ==
          "fadae6b49f129bbb812be8407b7b2894f34aecf6dbd1f9b0f0c7e9853098fc96");
}

TEST_CASE("keccak256 zero-word inputs used by slot derivation") {
    std::vector<uint8_t> zeros32(32, 0);
    CHECK(digest_hex(keccak256(std::span<const uint8_t>(zeros32.data(), 32))) ==
          "290decd9548b62a8d60345a988386fc84ba6bc95484008f6362f93160ef3e563");
    std::vector<uint8_t> zeros64(64, 0);
    CHECK(digest_hex(keccak256(std::span<const uint8_t>(zeros64.data(), 64))) ==
          "ad3228b676f7d3cd4284a5443f17f1962b36e491b30a40b2405849e597ba5fb5");
}

TEST_CASE("mapping slot derivation") {
    // m[key] at head p lives at keccak256(pad32(key) ++ pad32(p))
    SECTION("zero head, zero address key reduces to the 64-zero-byte digest") {
        Bytes32 key{};
        U256 slot = mapping_slot(U256(0), key);
        CHECK(hex::to_hex(slot.to_bytes()).substr(2) ==
              "ad3228b676f7d3cd4284a5443f17f1962b36e491b30a40b2405849e597ba5fb5");
    }
    SECTION("head 5, uint256 key 1") {
        Bytes32 key = U256(1).to_bytes();
        U256 slot = mapping_slot(U256(5), key);
        CHECK(hex::to_hex(slot.to_bytes()).substr(2) ==
              "1471eb6eb2c5e789fc3de43f8ce62938c7d1836ec861730447e2ada8fd81017b");
    }
    SECTION("address key is left-padded") {
        Bytes32 key{};
        key[31] = 0x01; // address 0x...0001 left-padded
        U256 slot = mapping_slot(U256(0), key);
        CHECK(hex::to_hex(slot.to_bytes()).substr(2) ==
              "ada5013122d395ba3c54772283fb069b10426056ef8ca54750cb9bb552a59e7d");
    }
    SECTION("nested mapping composes") {
        Bytes32 k1{}, k2{};
        for (int i = 12; i < 32; ++i) {
            k1[i] = 0xaa;
            k2[i] = 0xbb;
        }
        U256 inner = mapping_slot(U256(1), k1);
        CHECK(hex::to_hex(inner.to_bytes()).substr(2) ==
              "f043793b38eda5c51d465f1125f49da5bc0aa0c6d8a90f40e1d84f43afd33c7f");
        U256 final_slot = mapping_slot(inner, k2);
        CHECK(hex::to_hex(final_slot.to_bytes()).substr(2) ==
              "c065bd67b9daab520af386be8b42f2153a1b04c0b9b83bc96784d0a31efc1a28");
    }
}

TEST_CASE("dynamic data slot derivation") {
    CHECK(hex::to_hex(dynamic_data_slot(U256(0)).to_bytes()).substr(2) ==
          "290decd9548b62a8d60345a988386fc84ba6bc95484008f6362f93160ef3e563");
    CHECK(hex::to_hex(dynamic_data_slot(U256(2)).to_bytes()).substr(2) ==
          "405787fa12a823e0f2b7631cc41b3ba8828b3321ca811111fa75cd3aa3bb5ace");
    U256 head7 = dynamic_data_slot(U256(7));
    CHECK(hex::to_hex(head7.to_bytes()).substr(2) ==
          "a66cc928b5edb82af9bd49922954155ab7b0942694bea4ce44661d9a8736c688");
    CHECK(hex::to_hex((head7 + U256(1)).to_bytes()).substr(2) ==
          "a66cc928b5edb82af9bd49922954155ab7b0942694bea4ce44661d9a8736c689");
}
