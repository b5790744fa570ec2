// Copyright 2026 the solmig authors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include "solmig/errors.hpp"

namespace solmig {

// A 32-byte EVM word in big-endian byte order (slot keys, slot values).
using Bytes32 = std::array<uint8_t, 32>;

// Unsigned 256-bit integer, little-endian 64-bit limbs. Wrapping arithmetic,
// same as the EVM. Only the operations slot derivation needs.
struct U256 {
    std::array<uint64_t, 4> limbs{0, 0, 0, 0};

    constexpr U256() = default;
    constexpr U256(uint64_t v) : limbs{v, 0, 0, 0} {}

    auto operator<=>(const U256& o) const {
        for (int i = 3; i >= 0; --i) {
            if (limbs[i] != o.limbs[i])
                return limbs[i] <=> o.limbs[i];
        }
        return std::strong_ordering::equal;
    }
    bool operator==(const U256&) const = default;

    bool is_zero() const {
        return limbs[0] == 0 && limbs[1] == 0 && limbs[2] == 0 && limbs[3] == 0;
    }

    U256& operator+=(const U256& o) {
        unsigned __int128 carry = 0;
        for (int i = 0; i < 4; ++i) {
            unsigned __int128 s = (unsigned __int128)limbs[i] + o.limbs[i] + carry;
            limbs[i] = (uint64_t)s;
            carry = s >> 64;
        }
        return *this;
    }
    friend U256 operator+(U256 a, const U256& b) { return a += b; }

    U256& operator-=(const U256& o) {
        unsigned __int128 borrow = 0;
        for (int i = 0; i < 4; ++i) {
            unsigned __int128 d = (unsigned __int128)limbs[i] - o.limbs[i] - borrow;
            limbs[i] = (uint64_t)d;
            borrow = (d >> 64) ? 1 : 0;
        }
        return *this;
    }
    friend U256 operator-(U256 a, const U256& b) { return a -= b; }

    // Multiply by a 64-bit factor, wrapping.
    U256 mul_u64(uint64_t f) const {
        U256 r;
        unsigned __int128 carry = 0;
        for (int i = 0; i < 4; ++i) {
            unsigned __int128 p = (unsigned __int128)limbs[i] * f + carry;
            r.limbs[i] = (uint64_t)p;
            carry = p >> 64;
        }
        return r;
    }

    // Divide by a small divisor; returns quotient, sets rem.
    U256 divmod_u64(uint64_t div, uint64_t& rem) const {
        U256 q;
        unsigned __int128 r = 0;
        for (int i = 3; i >= 0; --i) {
            unsigned __int128 cur = (r << 64) | limbs[i];
            q.limbs[i] = (uint64_t)(cur / div);
            r = cur % div;
        }
        rem = (uint64_t)r;
        return q;
    }

    Bytes32 to_bytes() const {
        Bytes32 b{};
        for (int i = 0; i < 32; ++i)
            b[31 - i] = (uint8_t)(limbs[i / 8] >> (8 * (i % 8)));
        return b;
    }

    static U256 from_bytes(const Bytes32& b) {
        U256 v;
        for (int i = 0; i < 32; ++i)
            v.limbs[i / 8] |= (uint64_t)b[31 - i] << (8 * (i % 8));
        return v;
    }

    static U256 from_decimal(std::string_view s) {
        if (s.empty())
            throw ConfigError("empty decimal literal");
        U256 v;
        for (char c : s) {
            if (c < '0' || c > '9')
                throw ConfigError("invalid decimal digit in '" + std::string(s) + "'");
            v = v.mul_u64(10) + U256((uint64_t)(c - '0'));
        }
        return v;
    }

    std::string to_decimal() const {
        if (is_zero())
            return "0";
        std::string out;
        U256 v = *this;
        while (!v.is_zero()) {
            uint64_t rem = 0;
            v = v.divmod_u64(10, rem);
            out.push_back((char)('0' + rem));
        }
        return std::string(out.rbegin(), out.rend());
    }
};

namespace hex {

inline int nibble(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

inline bool is_hex_digit(char c) { return nibble(c) >= 0; }

// "0x"-prefixed, at most 64 digits, right-aligned into 32 bytes.
inline Bytes32 parse_bytes32(std::string_view s) {
    if (s.size() < 2 || s[0] != '0' || (s[1] != 'x' && s[1] != 'X'))
        throw ConfigError("hex literal must start with 0x: '" + std::string(s) + "'");
    std::string_view digits = s.substr(2);
    if (digits.empty() || digits.size() > 64)
        throw ConfigError("hex literal has invalid length: '" + std::string(s) + "'");
    Bytes32 out{};
    size_t bi = 31;
    size_t i = digits.size();
    while (i > 0) {
        int lo = nibble(digits[--i]);
        int hi = 0;
        if (i > 0)
            hi = nibble(digits[--i]);
        if (lo < 0 || hi < 0)
            throw ConfigError("invalid hex digit in '" + std::string(s) + "'");
        out[bi--] = (uint8_t)((hi << 4) | lo);
    }
    return out;
}

inline std::string to_hex(const Bytes32& b) {
    static const char* digits = "0123456789abcdef";
    std::string s = "0x";
    s.reserve(66);
    for (uint8_t byte : b) {
        s.push_back(digits[byte >> 4]);
        s.push_back(digits[byte & 0xf]);
    }
    return s;
}

inline std::string to_hex(const uint8_t* data, size_t n) {
    static const char* digits = "0123456789abcdef";
    std::string s = "0x";
    s.reserve(2 + 2 * n);
    for (size_t i = 0; i < n; ++i) {
        s.push_back(digits[data[i] >> 4]);
        s.push_back(digits[data[i] & 0xf]);
    }
    return s;
}

// Arbitrary-length "0x..." payload (bytes / string values).
inline std::string parse_bytes(std::string_view s) {
    if (s.size() < 2 || s[0] != '0' || (s[1] != 'x' && s[1] != 'X'))
        throw ConfigError("hex literal must start with 0x: '" + std::string(s) + "'");
    std::string_view digits = s.substr(2);
    if (digits.size() % 2 != 0)
        throw ConfigError("hex payload needs an even digit count: '" + std::string(s) + "'");
    std::string out;
    out.reserve(digits.size() / 2);
    for (size_t i = 0; i < digits.size(); i += 2) {
        int hi = nibble(digits[i]);
        int lo = nibble(digits[i + 1]);
        if (hi < 0 || lo < 0)
            throw ConfigError("invalid hex digit in '" + std::string(s) + "'");
        out.push_back((char)((hi << 4) | lo));
    }
    return out;
}

} // namespace hex

// Parses "123" or "0x1f" into a word.
inline U256 parse_u256_literal(std::string_view s) {
    if (s.size() > 1 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X'))
        return U256::from_bytes(hex::parse_bytes32(s));
    return U256::from_decimal(s);
}

} // namespace solmig
