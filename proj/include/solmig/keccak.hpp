// Copyright 2026 the solmig authors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstdint>
#include <cstring>
#include <span>
#include <string_view>

#include "solmig/u256.hpp"

namespace solmig {

// Keccak-256 with the original 0x01 domain padding (what the EVM uses),
// not the FIPS-202 SHA3 variant. Rate 1088 bits, capacity 512.
namespace keccak_detail {

inline constexpr uint64_t kRoundConstants[24] = {
    0x0000000000000001ULL, 0x0000000000008082ULL, 0x800000000000808aULL,
    0x8000000080008000ULL, 0x000000000000808bULL, 0x0000000080000001ULL,
    0x8000000080008081ULL, 0x8000000000008009ULL, 0x000000000000008aULL,
    0x0000000000000088ULL, 0x0000000080008009ULL, 0x000000008000000aULL,
    0x000000008000808bULL, 0x800000000000008bULL, 0x8000000000008089ULL,
    0x8000000000008003ULL, 0x8000000000008002ULL, 0x8000000000000080ULL,
    0x000000000000800aULL, 0x800000008000000aULL, 0x8000000080008081ULL,
    0x8000000000008080ULL, 0x0000000080000001ULL, 0x8000000080008008ULL,
};

inline constexpr unsigned kRotations[25] = {
    0,  1,  62, 28, 27, //
    36, 44, 6,  55, 20, //
    3,  10, 43, 25, 39, //
    41, 45, 15, 21, 8,  //
    18, 2,  61, 56, 14, //
};

inline uint64_t rotl(uint64_t x, unsigned n) {
    return n == 0 ? x : (x << n) | (x >> (64 - n));
}

// state[x + 5*y]
inline void permute(uint64_t* s) {
    for (int round = 0; round < 24; ++round) {
        uint64_t c[5], d[5];
        for (int x = 0; x < 5; ++x)
            c[x] = s[x] ^ s[x + 5] ^ s[x + 10] ^ s[x + 15] ^ s[x + 20];
        for (int x = 0; x < 5; ++x)
            d[x] = c[(x + 4) % 5] ^ rotl(c[(x + 1) % 5], 1);
        for (int x = 0; x < 5; ++x)
            for (int y = 0; y < 5; ++y)
                s[x + 5 * y] ^= d[x];

        uint64_t b[25];
        for (int x = 0; x < 5; ++x)
            for (int y = 0; y < 5; ++y)
                b[y + 5 * ((2 * x + 3 * y) % 5)] = rotl(s[x + 5 * y], kRotations[x + 5 * y]);

        for (int x = 0; x < 5; ++x)
            for (int y = 0; y < 5; ++y)
                s[x + 5 * y] = b[x + 5 * y] ^ (~b[(x + 1) % 5 + 5 * y] & b[(x + 2) % 5 + 5 * y]);

        s[0] ^= kRoundConstants[round];
    }
}

} // namespace keccak_detail

inline Bytes32 keccak256(std::span<const uint8_t> data) {
    constexpr size_t kRate = 136;
    uint64_t state[25] = {};

    size_t off = 0;
    uint8_t block[kRate];
    while (data.size() - off >= kRate) {
        std::memcpy(block, data.data() + off, kRate);
        for (size_t i = 0; i < kRate / 8; ++i) {
            uint64_t lane;
            std::memcpy(&lane, block + 8 * i, 8); // little-endian host
            state[i] ^= lane;
        }
        keccak_detail::permute(state);
        off += kRate;
    }

    // final block: pad10*1 with 0x01 domain bit
    std::memset(block, 0, kRate);
    if (data.size() > off)
        std::memcpy(block, data.data() + off, data.size() - off);
    block[data.size() - off] ^= 0x01;
    block[kRate - 1] ^= 0x80;
    for (size_t i = 0; i < kRate / 8; ++i) {
        uint64_t lane;
        std::memcpy(&lane, block + 8 * i, 8);
        state[i] ^= lane;
    }
    keccak_detail::permute(state);

    Bytes32 digest;
    std::memcpy(digest.data(), state, 32);
    return digest;
}

inline Bytes32 keccak256(std::string_view s) {
    return keccak256(std::span<const uint8_t>(
        reinterpret_cast<const uint8_t*>(s.data()), s.size()));
}

} // namespace solmig
