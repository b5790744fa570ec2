// Copyright 2026 the solmig authors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "solmig/errors.hpp"
#include "solmig/json.hpp"
#include "solmig/layout.hpp"
#include "solmig/u256.hpp"

namespace solmig {

// Sparse slot-level contract state. Absent key == zero value.
struct Snapshot {
    std::map<Bytes32, Bytes32> entries;

    Bytes32 get(const Bytes32& slot) const {
        auto it = entries.find(slot);
        return it == entries.end() ? Bytes32{} : it->second;
    }
    bool has(const Bytes32& slot) const { return entries.count(slot) > 0; }
    void set(const Bytes32& slot, const Bytes32& value) {
        if (value == Bytes32{})
            entries.erase(slot);
        else
            entries[slot] = value;
    }
    size_t size() const { return entries.size(); }
    bool operator==(const Snapshot&) const = default;
};

inline Json snapshot_to_json(const Snapshot& snap) {
    Json slots = Json::object();
    for (const auto& [k, v] : snap.entries)
        slots[hex::to_hex(k)] = hex::to_hex(v);
    Json j;
    j["slots"] = std::move(slots);
    return j;
}

inline Snapshot snapshot_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("slots") || !j["slots"].is_object())
        throw ConfigError("snapshot file must be an object with a 'slots' map");
    Snapshot snap;
    for (const auto& [k, v] : j["slots"].items()) {
        if (!v.is_string())
            throw ConfigError("snapshot values must be hex strings");
        Bytes32 slot = hex::parse_bytes32(k);
        Bytes32 value = hex::parse_bytes32(v.get<std::string>());
        if (value == Bytes32{})
            continue;
        if (snap.entries.count(slot))
            throw ConfigError("duplicate snapshot slot " + k);
        snap.entries.emplace(slot, value);
    }
    return snap;
}

// Concrete mapping keys present in the state, per variable. Tuples carry
// one literal per nesting level. The chain cannot enumerate mapping keys,
// so migrations must be told which keys exist.
struct KeyEnumeration {
    std::map<std::string, std::vector<std::vector<std::string>>> keys;

    const std::vector<std::vector<std::string>>* find(const std::string& label) const {
        auto it = keys.find(label);
        return it == keys.end() ? nullptr : &it->second;
    }
};

// File format: {label: [key, ...], "nested": {label: [[k1, k2], ...]}}
inline KeyEnumeration keys_from_json(const Json& j) {
    if (!j.is_object())
        throw ConfigError("key enumeration file must be a JSON object");
    KeyEnumeration out;
    auto literal = [](const Json& k) -> std::string {
        if (k.is_string())
            return k.get<std::string>();
        if (k.is_number_unsigned())
            return std::to_string(k.get<uint64_t>());
        if (k.is_number_integer())
            return std::to_string(k.get<int64_t>());
        if (k.is_boolean())
            return k.get<bool>() ? "true" : "false";
        throw ConfigError("mapping key literals must be strings, integers or booleans");
    };
    for (const auto& [label, v] : j.items()) {
        if (label == "nested")
            continue;
        if (!v.is_array())
            throw ConfigError("key list for '" + label + "' must be an array");
        auto& tuples = out.keys[label];
        for (const auto& k : v)
            tuples.push_back({literal(k)});
    }
    if (j.contains("nested")) {
        const Json& nested = j["nested"];
        if (!nested.is_object())
            throw ConfigError("'nested' must be an object");
        for (const auto& [label, v] : nested.items()) {
            if (!v.is_array())
                throw ConfigError("nested key list for '" + label + "' must be an array");
            auto& tuples = out.keys[label];
            for (const auto& tuple : v) {
                if (!tuple.is_array() || tuple.empty())
                    throw ConfigError("nested keys for '" + label +
                                      "' must be non-empty arrays");
                std::vector<std::string> t;
                for (const auto& k : tuple)
                    t.push_back(literal(k));
                tuples.push_back(std::move(t));
            }
        }
    }
    return out;
}

// All storage slots belonging to one state variable (or one packed-slot
// group), restricted to slots that actually hold data.
struct Shard {
    std::string variable;              // label of the first member
    std::vector<std::string> members;  // >1 only for packed-slot composites
    std::vector<std::pair<Bytes32, Bytes32>> slots;
    uint32_t decl_index = 0;           // layout index of the first member
};

namespace state_detail {

enum class Elementary { Uint, Int, Bool, Address, FixedBytes, String, DynBytes };

struct ElementaryInfo {
    Elementary kind;
    uint32_t bytes; // field width; 32 for string/bytes heads
};

inline ElementaryInfo classify(const TypeInfo& t) {
    const std::string& id = t.id;
    if (id == "t_bool") return {Elementary::Bool, 1};
    if (id == "t_address") return {Elementary::Address, 20};
    if (id == "t_string_storage") return {Elementary::String, 32};
    if (id == "t_bytes_storage") return {Elementary::DynBytes, 32};
    if (id.starts_with("t_uint")) return {Elementary::Uint, (uint32_t)t.number_of_bytes};
    if (id.starts_with("t_int")) return {Elementary::Int, (uint32_t)t.number_of_bytes};
    if (id.starts_with("t_bytes")) return {Elementary::FixedBytes, (uint32_t)t.number_of_bytes};
    throw StateError("not an elementary type: '" + id + "'");
}

inline std::string json_scalar_text(const Json& v, const std::string& label) {
    if (v.is_string())
        return v.get<std::string>();
    if (v.is_number_unsigned())
        return std::to_string(v.get<uint64_t>());
    if (v.is_number_integer())
        return std::to_string(v.get<int64_t>());
    if (v.is_boolean())
        return v.get<bool>() ? "true" : "false";
    throw StateError("value for '" + label + "' must be a scalar literal");
}

// Signed literal -> (magnitude, negative flag).
inline std::pair<U256, bool> parse_int_literal(const std::string& s, const std::string& label) {
    if (s.empty())
        throw StateError("empty integer literal for '" + label + "'");
    bool neg = s[0] == '-';
    std::string_view digits = neg ? std::string_view(s).substr(1) : std::string_view(s);
    try {
        return {parse_u256_literal(digits), neg};
    } catch (const Error&) {
        throw StateError("invalid integer literal '" + s + "' for '" + label + "'");
    }
}

// Encodes one elementary value into its field bytes (big-endian order,
// `bytes` wide). Throws when the value exceeds the type width.
inline std::vector<uint8_t> field_bytes(const ElementaryInfo& e, const Json& v,
                                        const std::string& label) {
    std::vector<uint8_t> out(e.bytes, 0);
    switch (e.kind) {
    case Elementary::Uint: {
        auto [mag, neg] = parse_int_literal(json_scalar_text(v, label), label);
        if (neg)
            throw StateError("negative value for unsigned '" + label + "'");
        Bytes32 be = mag.to_bytes();
        for (uint32_t i = 0; i < 32 - e.bytes; ++i)
            if (be[i] != 0)
                throw StateError("value exceeds type width for '" + label + "'");
        std::copy(be.begin() + (32 - e.bytes), be.end(), out.begin());
        return out;
    }
    case Elementary::Int: {
        auto [mag, neg] = parse_int_literal(json_scalar_text(v, label), label);
        // magnitude limits: [0, 2^(bits-1) - 1] positive, [0, 2^(bits-1)] negative
        U256 limit(0);
        {
            Bytes32 b{};
            uint32_t bits = e.bytes * 8;
            b[32 - bits / 8] = 0x80; // 2^(bits-1)
            limit = U256::from_bytes(b);
        }
        if ((neg && mag > limit) || (!neg && mag >= limit))
            throw StateError("value exceeds type width for '" + label + "'");
        U256 word = mag;
        if (neg && !mag.is_zero()) {
            U256 zero(0);
            word = zero - mag; // two's complement over 256 bits
        }
        Bytes32 be = word.to_bytes();
        std::copy(be.begin() + (32 - e.bytes), be.end(), out.begin());
        return out;
    }
    case Elementary::Bool: {
        bool b;
        if (v.is_boolean())
            b = v.get<bool>();
        else {
            std::string s = json_scalar_text(v, label);
            if (s == "true" || s == "1") b = true;
            else if (s == "false" || s == "0") b = false;
            else throw StateError("invalid boolean literal '" + s + "' for '" + label + "'");
        }
        out[0] = b ? 1 : 0;
        return out;
    }
    case Elementary::Address: {
        std::string s = json_scalar_text(v, label);
        std::string raw = hex::parse_bytes(s);
        if (raw.size() != 20)
            throw StateError("address for '" + label + "' must be 20 bytes");
        std::copy(raw.begin(), raw.end(), out.begin());
        return out;
    }
    case Elementary::FixedBytes: {
        std::string s = json_scalar_text(v, label);
        std::string raw = hex::parse_bytes(s);
        if (raw.size() > e.bytes)
            throw StateError("value exceeds type width for '" + label + "'");
        // left-aligned within the field, zero-padded on the right
        std::copy(raw.begin(), raw.end(), out.begin());
        return out;
    }
    default:
        throw StateError("internal: field_bytes on dynamic type for '" + label + "'");
    }
}

inline Json canonical_leaf(const ElementaryInfo& e, const std::vector<uint8_t>& field) {
    switch (e.kind) {
    case Elementary::Uint: {
        Bytes32 be{};
        std::copy(field.begin(), field.end(), be.begin() + (32 - field.size()));
        return U256::from_bytes(be).to_decimal();
    }
    case Elementary::Int: {
        bool negative = field[0] & 0x80;
        Bytes32 be{};
        // sign-extend into the full word
        if (negative)
            be.fill(0xff);
        std::copy(field.begin(), field.end(), be.begin() + (32 - field.size()));
        U256 word = U256::from_bytes(be);
        if (!negative)
            return word.to_decimal();
        U256 mag = U256(0) - word;
        return "-" + mag.to_decimal();
    }
    case Elementary::Bool:
        return field[0] != 0;
    case Elementary::Address:
        return hex::to_hex(field.data(), field.size());
    case Elementary::FixedBytes:
        return hex::to_hex(field.data(), field.size());
    default:
        throw StateError("internal: canonical_leaf on dynamic type");
    }
}

// Canonical mapping-key handling: parsed per the key type, re-rendered in
// canonical text, padded for slot derivation.
struct MappingKey {
    std::string canonical;
    bool raw = false;      // string/bytes keys hash unpadded
    Bytes32 padded{};      // value-type keys
    std::string raw_bytes; // raw keys
};

inline MappingKey make_key(const TypeInfo& key_type, const std::string& literal) {
    ElementaryInfo e = classify(key_type);
    MappingKey k;
    switch (e.kind) {
    case Elementary::String:
        k.raw = true;
        k.raw_bytes = literal;
        k.canonical = literal;
        return k;
    case Elementary::DynBytes:
        k.raw = true;
        k.raw_bytes = hex::parse_bytes(literal);
        k.canonical = hex::to_hex((const uint8_t*)k.raw_bytes.data(), k.raw_bytes.size());
        return k;
    default: {
        std::vector<uint8_t> field = field_bytes(e, Json(literal), "<mapping key>");
        Bytes32 padded{};
        if (e.kind == Elementary::FixedBytes) {
            // bytesN keys are right-padded (left-aligned), like the ABI
            std::copy(field.begin(), field.end(), padded.begin());
        } else if (e.kind == Elementary::Int && (field[0] & 0x80)) {
            padded.fill(0xff);
            std::copy(field.begin(), field.end(), padded.begin() + (32 - field.size()));
        } else {
            std::copy(field.begin(), field.end(), padded.begin() + (32 - field.size()));
        }
        k.padded = padded;
        k.canonical = canonical_leaf(e, field).is_boolean()
                          ? std::string(canonical_leaf(e, field).get<bool>() ? "true" : "false")
                          : [&] {
                                Json c = canonical_leaf(e, field);
                                return c.is_string() ? c.get<std::string>() : c.dump();
                            }();
        return k;
    }
    }
}

inline U256 derive_mapping_slot(const U256& head, const MappingKey& key) {
    return key.raw ? mapping_slot_raw(head, key.raw_bytes) : mapping_slot(head, key.padded);
}

// Writes `field` into `slot` at byte offset `offset` (from the low-order
// end) of a slot accumulator.
class SlotWriter {
public:
    explicit SlotWriter(std::map<Bytes32, Bytes32>& acc) : acc_(acc) {}

    void write_field(const U256& slot, uint32_t offset, const std::vector<uint8_t>& field) {
        if (offset + field.size() > 32)
            throw StateError("internal: field crosses slot boundary");
        Bytes32 key = slot.to_bytes();
        Bytes32& word = acc_[key];
        size_t start = 32 - offset - field.size();
        std::copy(field.begin(), field.end(), word.begin() + start);
    }

    void write_word(const U256& slot, const Bytes32& word) {
        acc_[slot.to_bytes()] = word;
    }

private:
    std::map<Bytes32, Bytes32>& acc_;
};

} // namespace state_detail

// ---- canonical value forms ----
//
// decode_state emits values in canonical form; canonicalize_values applies
// the same normalization to an input value map by pure literal rewriting
// (no slot math), so `decode(encode(v)) == canonicalize(v)` is a meaningful
// round-trip check of the slot encoding itself.

namespace state_detail {

class ValueCanonicalizer {
public:
    ValueCanonicalizer(const StorageLayout& layout, const KeyEnumeration& keys)
        : layout_(layout), keys_(keys) {}

    Json canonicalize(const std::string& label, const TypeInfo& t, const Json& v,
                      const std::vector<std::vector<std::string>>* tuples,
                      size_t depth) const {
        switch (t.encoding) {
        case Encoding::Mapping: {
            if (!v.is_object())
                throw StateError("value for mapping '" + label + "' must be an object");
            const TypeInfo& key_t = layout_.type(*t.key);
            const TypeInfo& val_t = layout_.type(*t.base);
            // canonical key -> original value, preserving enumeration order
            std::map<std::string, const Json*> by_key;
            for (const auto& [k, inner] : v.items()) {
                MappingKey mk = make_key(key_t, k);
                by_key[mk.canonical] = &inner;
            }
            Json out = Json::object();
            if (!tuples)
                return out;
            std::set<std::string> emitted;
            for (const auto& tuple : *tuples) {
                if (tuple.size() <= depth)
                    throw StateError("key tuple for '" + label + "' is too short");
                MappingKey mk = make_key(key_t, tuple[depth]);
                if (emitted.count(mk.canonical))
                    continue;
                auto it = by_key.find(mk.canonical);
                if (it == by_key.end())
                    continue;
                Json inner = canonicalize(label + "[" + mk.canonical + "]", val_t,
                                          *it->second, tuples, depth + 1);
                // zero/empty entries are dropped: absent == zero
                if (!is_zero_value(val_t, inner)) {
                    out[mk.canonical] = std::move(inner);
                    emitted.insert(mk.canonical);
                }
            }
            return out;
        }
        case Encoding::DynamicArray: {
            if (!v.is_array())
                throw StateError("value for array '" + label + "' must be an array");
            const TypeInfo& elem_t = layout_.type(*t.base);
            Json out = Json::array();
            for (size_t i = 0; i < v.size(); ++i)
                out.push_back(canonicalize(label + "[" + std::to_string(i) + "]", elem_t,
                                           v[i], tuples, depth));
            return out;
        }
        case Encoding::Bytes: {
            ElementaryInfo e = classify(t);
            std::string s = json_scalar_text(v, label);
            if (e.kind == Elementary::DynBytes) {
                std::string raw = hex::parse_bytes(s);
                return hex::to_hex((const uint8_t*)raw.data(), raw.size());
            }
            return s;
        }
        case Encoding::Inplace:
            if (!t.members.empty()) {
                if (!v.is_object())
                    throw StateError("value for struct '" + label + "' must be an object");
                for (const auto& [k, _] : v.items()) {
                    bool known = false;
                    for (const auto& m : t.members)
                        known |= (m.label == k);
                    if (!known)
                        throw StateError("unknown struct member '" + k + "' for '" + label +
                                         "'");
                }
                Json out = Json::object();
                for (const auto& m : t.members) {
                    const TypeInfo& mt = layout_.type(m.type_id);
                    Json mv = v.contains(m.label) ? v[m.label] : zero_value(mt);
                    out[m.label] =
                        canonicalize(label + "." + m.label, mt, mv, tuples, depth);
                }
                return out;
            }
            if (t.base) { // fixed array
                if (!v.is_array())
                    throw StateError("value for array '" + label + "' must be an array");
                const TypeInfo& elem_t = layout_.type(*t.base);
                uint64_t declared = declared_length(t);
                if (v.size() > declared)
                    throw StateError("too many elements for fixed array '" + label + "'");
                Json out = Json::array();
                for (uint64_t i = 0; i < declared; ++i) {
                    Json ev = i < v.size() ? v[i] : zero_value(elem_t);
                    out.push_back(canonicalize(label + "[" + std::to_string(i) + "]", elem_t,
                                               ev, tuples, depth));
                }
                return out;
            }
            // elementary value type
            {
                ElementaryInfo e = classify(t);
                return canonical_leaf(e, field_bytes(e, v, label));
            }
        }
        throw StateError("unsupported encoding for '" + label + "'");
    }

    static uint64_t declared_length(const TypeInfo& array_t) {
        // recover L from the id suffix: t_array(<base>)<L>_storage
        const std::string& id = array_t.id;
        size_t close = id.rfind(')');
        size_t end = id.rfind("_storage");
        return std::stoull(id.substr(close + 1, end - close - 1));
    }

    Json zero_value(const TypeInfo& t) const {
        switch (t.encoding) {
        case Encoding::Mapping: return Json::object();
        case Encoding::DynamicArray: return Json::array();
        case Encoding::Bytes:
            return classify(t).kind == Elementary::DynBytes ? Json("0x") : Json("");
        case Encoding::Inplace:
            if (!t.members.empty())
                return Json::object();
            if (t.base)
                return Json::array();
            switch (classify(t).kind) {
            case Elementary::Bool: return false;
            case Elementary::Address: return "0x0000000000000000000000000000000000000000";
            case Elementary::FixedBytes: {
                std::string z(2 * t.number_of_bytes, '0');
                return "0x" + z;
            }
            default: return "0";
            }
        }
        return Json();
    }

    bool is_zero_value(const TypeInfo& t, const Json& canonical) const {
        return canonical == zero_value(t);
    }

private:
    const StorageLayout& layout_;
    const KeyEnumeration& keys_;
};

} // namespace state_detail

// Normalizes a high-level value map to the exact form decode_state emits:
// canonical literals, full-length fixed arrays and structs, mapping entries
// in enumeration order with zero entries dropped. Pure literal rewriting.
inline Json canonicalize_values(const StorageLayout& layout, const Json& values,
                                const KeyEnumeration& keys) {
    if (!values.is_object())
        throw StateError("value map must be a JSON object");
    for (const auto& [label, _] : values.items())
        if (!layout.find_element(label))
            throw StateError("value for unknown variable '" + label + "'");

    state_detail::ValueCanonicalizer canon(layout, keys);
    Json out = Json::object();
    for (const DataElement& e : layout.elements) {
        const TypeInfo& t = layout.type_of(e);
        Json v = values.contains(e.label) ? values[e.label] : canon.zero_value(t);
        out[e.label] = canon.canonicalize(e.label, t, v, keys.find(e.label), 0);
    }
    return out;
}

// ---- encode / decode / shards ----

namespace state_detail {

class StateCodec {
public:
    StateCodec(const StorageLayout& layout, const KeyEnumeration& keys)
        : layout_(layout), keys_(keys) {}

    // -- encode --

    void encode_element(const DataElement& elem, const Json& v, SlotWriter& w) const {
        const TypeInfo& t = layout_.type_of(elem);
        encode_value(elem.label, t, elem.slot, elem.offset, v, keys_.find(elem.label), 0, w);
    }

    // -- decode --

    Json decode_element(const DataElement& elem, const Snapshot& snap) const {
        const TypeInfo& t = layout_.type_of(elem);
        return decode_value(elem.label, t, elem.slot, elem.offset, snap,
                            keys_.find(elem.label), 0);
    }

    // -- shard slot attribution --

    // Collects the occupied slots of one element (or packed group member),
    // in deterministic order: base slots first, then derived slots in
    // enumeration/index order.
    void collect_slots(const DataElement& elem, const Snapshot& snap,
                       std::vector<Bytes32>& out) const {
        const TypeInfo& t = layout_.type_of(elem);
        collect_value(t, elem.slot, snap, keys_.find(elem.label), 0, out);
    }

private:
    using Tuples = std::vector<std::vector<std::string>>;

    void encode_value(const std::string& label, const TypeInfo& t, const U256& slot,
                      uint32_t offset, const Json& v, const Tuples* tuples, size_t depth,
                      SlotWriter& w) const {
        switch (t.encoding) {
        case Encoding::Mapping:
            encode_mapping(label, t, slot, v, tuples, depth, w);
            return;
        case Encoding::DynamicArray:
            encode_dynamic_array(label, t, slot, v, tuples, depth, w);
            return;
        case Encoding::Bytes:
            encode_bytes(label, t, slot, v, w);
            return;
        case Encoding::Inplace:
            if (!t.members.empty()) {
                encode_struct(label, t, slot, v, tuples, depth, w);
                return;
            }
            if (t.base) {
                encode_fixed_array(label, t, slot, v, tuples, depth, w);
                return;
            }
            {
                ElementaryInfo e = classify(t);
                std::vector<uint8_t> field = field_bytes(e, v, label);
                bool all_zero = std::all_of(field.begin(), field.end(),
                                            [](uint8_t b) { return b == 0; });
                if (!all_zero)
                    w.write_field(slot, offset, field);
            }
            return;
        }
    }

    void encode_mapping(const std::string& label, const TypeInfo& t, const U256& head,
                        const Json& v, const Tuples* tuples, size_t depth,
                        SlotWriter& w) const {
        if (!v.is_object())
            throw StateError("value for mapping '" + label + "' must be an object");
        if (v.empty())
            return;
        if (!tuples)
            throw StateError("mapping '" + label + "' has values but no key enumeration");
        const TypeInfo& key_t = layout_.type(*t.key);
        const TypeInfo& val_t = layout_.type(*t.base);

        std::set<std::string> enumerated;
        for (const auto& tuple : *tuples) {
            if (tuple.size() <= depth)
                throw StateError("key tuple for '" + label + "' is too short");
            enumerated.insert(make_key(key_t, tuple[depth]).canonical);
        }
        for (const auto& [k, inner] : v.items()) {
            MappingKey mk = make_key(key_t, k);
            if (!enumerated.count(mk.canonical))
                throw StateError("key '" + mk.canonical + "' of '" + label +
                                 "' missing from enumeration");
            U256 derived = derive_mapping_slot(head, mk);
            // narrow the tuple set for nested levels
            Tuples narrowed;
            if (val_t.encoding == Encoding::Mapping) {
                for (const auto& tuple : *tuples)
                    if (make_key(key_t, tuple[depth]).canonical == mk.canonical)
                        narrowed.push_back(tuple);
            }
            encode_value(label + "[" + mk.canonical + "]", val_t, derived, 0, inner,
                         val_t.encoding == Encoding::Mapping ? &narrowed : tuples, depth + 1,
                         w);
        }
    }

    void encode_bytes(const std::string& label, const TypeInfo& t, const U256& head,
                      const Json& v, SlotWriter& w) const {
        ElementaryInfo e = classify(t);
        std::string data;
        if (e.kind == Elementary::String)
            data = json_scalar_text(v, label);
        else
            data = hex::parse_bytes(json_scalar_text(v, label));
        if (data.empty())
            return;
        if (data.size() < 32) {
            Bytes32 word{};
            std::copy(data.begin(), data.end(), word.begin());
            word[31] = (uint8_t)(2 * data.size());
            w.write_word(head, word);
            return;
        }
        // long form: head = 2*len + 1, chunks at keccak(head)
        Bytes32 head_word = U256((uint64_t)(2 * data.size() + 1)).to_bytes();
        w.write_word(head, head_word);
        U256 chunk_slot = dynamic_data_slot(head);
        for (size_t off = 0; off < data.size(); off += 32) {
            Bytes32 chunk{};
            size_t n = std::min<size_t>(32, data.size() - off);
            std::copy(data.begin() + off, data.begin() + off + n, chunk.begin());
            if (chunk != Bytes32{})
                w.write_word(chunk_slot, chunk);
            chunk_slot += U256(1);
        }
    }

    void encode_struct(const std::string& label, const TypeInfo& t, const U256& base,
                       const Json& v, const Tuples* tuples, size_t depth,
                       SlotWriter& w) const {
        if (!v.is_object())
            throw StateError("value for struct '" + label + "' must be an object");
        for (const auto& [k, _] : v.items()) {
            bool known = false;
            for (const auto& m : t.members)
                known |= (m.label == k);
            if (!known)
                throw StateError("unknown struct member '" + k + "' for '" + label + "'");
        }
        for (const DataElement& m : t.members) {
            if (!v.contains(m.label))
                continue;
            const TypeInfo& mt = layout_.type(m.type_id);
            encode_value(label + "." + m.label, mt, base + m.slot, m.offset, v[m.label],
                         tuples, depth, w);
        }
    }

    void encode_fixed_array(const std::string& label, const TypeInfo& t, const U256& base,
                            const Json& v, const Tuples* tuples, size_t depth,
                            SlotWriter& w) const {
        if (!v.is_array())
            throw StateError("value for array '" + label + "' must be an array");
        const TypeInfo& elem_t = layout_.type(*t.base);
        uint64_t declared = ValueCanonicalizer::declared_length(t);
        if (v.size() > declared)
            throw StateError("too many elements for fixed array '" + label + "'");
        for (size_t i = 0; i < v.size(); ++i) {
            auto [slot, offset] = array_element_position(base, elem_t, i);
            encode_value(label + "[" + std::to_string(i) + "]", elem_t, slot, offset, v[i],
                         tuples, depth, w);
        }
    }

    void encode_dynamic_array(const std::string& label, const TypeInfo& t, const U256& head,
                              const Json& v, const Tuples* tuples, size_t depth,
                              SlotWriter& w) const {
        if (!v.is_array())
            throw StateError("value for array '" + label + "' must be an array");
        if (v.empty())
            return;
        const TypeInfo& elem_t = layout_.type(*t.base);
        w.write_word(head, U256((uint64_t)v.size()).to_bytes());
        U256 data = dynamic_data_slot(head);
        for (size_t i = 0; i < v.size(); ++i) {
            auto [slot, offset] = array_element_position(data, elem_t, i);
            encode_value(label + "[" + std::to_string(i) + "]", elem_t, slot, offset, v[i],
                         tuples, depth, w);
        }
    }

    // Position of element i of an array laid out from base_slot.
    std::pair<U256, uint32_t> array_element_position(const U256& base, const TypeInfo& elem_t,
                                                     uint64_t i) const {
        if (elem_t.is_value_type()) {
            uint64_t per_slot = 32 / elem_t.number_of_bytes;
            U256 slot = base + U256(i / per_slot);
            uint32_t offset = (uint32_t)((i % per_slot) * elem_t.number_of_bytes);
            return {slot, offset};
        }
        uint64_t elem_slots =
            elem_t.encoding == Encoding::Inplace ? (elem_t.number_of_bytes + 31) / 32 : 1;
        return {base + U256(i * elem_slots), 0};
    }

    // -- decode --

    std::vector<uint8_t> read_field(const Snapshot& snap, const U256& slot, uint32_t offset,
                                    uint32_t nbytes) const {
        Bytes32 word = snap.get(slot.to_bytes());
        size_t start = 32 - offset - nbytes;
        return std::vector<uint8_t>(word.begin() + start, word.begin() + start + nbytes);
    }

    Json decode_value(const std::string& label, const TypeInfo& t, const U256& slot,
                      uint32_t offset, const Snapshot& snap, const Tuples* tuples,
                      size_t depth) const {
        switch (t.encoding) {
        case Encoding::Mapping:
            return decode_mapping(label, t, slot, snap, tuples, depth);
        case Encoding::DynamicArray:
            return decode_dynamic_array(label, t, slot, snap, tuples, depth);
        case Encoding::Bytes:
            return decode_bytes(label, t, slot, snap);
        case Encoding::Inplace:
            if (!t.members.empty()) {
                Json out = Json::object();
                for (const DataElement& m : t.members) {
                    const TypeInfo& mt = layout_.type(m.type_id);
                    out[m.label] = decode_value(label + "." + m.label, mt, slot + m.slot,
                                                m.offset, snap, tuples, depth);
                }
                return out;
            }
            if (t.base) {
                const TypeInfo& elem_t = layout_.type(*t.base);
                uint64_t declared = ValueCanonicalizer::declared_length(t);
                Json out = Json::array();
                for (uint64_t i = 0; i < declared; ++i) {
                    auto [s, o] = array_element_position(slot, elem_t, i);
                    out.push_back(decode_value(label + "[" + std::to_string(i) + "]", elem_t,
                                               s, o, snap, tuples, depth));
                }
                return out;
            }
            {
                ElementaryInfo e = classify(t);
                return canonical_leaf(e, read_field(snap, slot, offset, e.bytes));
            }
        }
        throw StateError("unsupported encoding for '" + label + "'");
    }

    Json decode_mapping(const std::string& label, const TypeInfo& t, const U256& head,
                        const Snapshot& snap, const Tuples* tuples, size_t depth) const {
        Json out = Json::object();
        if (!tuples)
            return out;
        const TypeInfo& key_t = layout_.type(*t.key);
        const TypeInfo& val_t = layout_.type(*t.base);
        ValueCanonicalizer canon(layout_, keys_);
        std::set<std::string> seen;
        for (const auto& tuple : *tuples) {
            if (tuple.size() <= depth)
                throw StateError("key tuple for '" + label + "' is too short");
            MappingKey mk = make_key(key_t, tuple[depth]);
            if (!seen.insert(mk.canonical).second)
                continue;
            U256 derived = derive_mapping_slot(head, mk);
            Tuples narrowed;
            const Tuples* next = tuples;
            if (val_t.encoding == Encoding::Mapping) {
                for (const auto& tp : *tuples)
                    if (make_key(key_t, tp[depth]).canonical == mk.canonical)
                        narrowed.push_back(tp);
                next = &narrowed;
            }
            Json inner = decode_value(label + "[" + mk.canonical + "]", val_t, derived, 0,
                                      snap, next, depth + 1);
            if (!canon.is_zero_value(val_t, inner))
                out[mk.canonical] = std::move(inner);
        }
        return out;
    }

    Json decode_bytes(const std::string& label, const TypeInfo& t, const U256& head,
                      const Snapshot& snap) const {
        ElementaryInfo e = classify(t);
        Bytes32 head_word = snap.get(head.to_bytes());
        std::string data;
        if ((head_word[31] & 1) == 0) {
            // short form: low byte is 2*len, data in the head slot
            uint32_t len = head_word[31] / 2;
            if (len > 31)
                throw StateError("malformed short-string length marker for '" + label + "'");
            data.assign(head_word.begin(), head_word.begin() + len);
        } else {
            U256 marker = U256::from_bytes(head_word);
            // len = (marker - 1) / 2; reject absurd lengths up front
            if (marker.limbs[1] || marker.limbs[2] || marker.limbs[3] ||
                marker.limbs[0] > (1ull << 32))
                throw StateError("malformed long-string length marker for '" + label + "'");
            uint64_t len = (marker.limbs[0] - 1) / 2;
            if (len < 32)
                throw StateError("malformed long-string length marker for '" + label + "'");
            U256 chunk_slot = dynamic_data_slot(head);
            data.reserve(len);
            for (uint64_t off = 0; off < len; off += 32) {
                Bytes32 chunk = snap.get(chunk_slot.to_bytes());
                uint64_t n = std::min<uint64_t>(32, len - off);
                data.append(chunk.begin(), chunk.begin() + n);
                chunk_slot += U256(1);
            }
        }
        if (e.kind == Elementary::String)
            return data;
        return hex::to_hex((const uint8_t*)data.data(), data.size());
    }

    // -- slot collection --

    void collect_value(const TypeInfo& t, const U256& slot, const Snapshot& snap,
                       const Tuples* tuples, size_t depth, std::vector<Bytes32>& out) const {
        switch (t.encoding) {
        case Encoding::Mapping: {
            if (!tuples)
                return;
            const TypeInfo& key_t = layout_.type(*t.key);
            const TypeInfo& val_t = layout_.type(*t.base);
            std::set<std::string> seen;
            for (const auto& tuple : *tuples) {
                if (tuple.size() <= depth)
                    throw StateError("key tuple is too short");
                MappingKey mk = make_key(key_t, tuple[depth]);
                if (!seen.insert(mk.canonical).second)
                    continue;
                U256 derived = derive_mapping_slot(slot, mk);
                Tuples narrowed;
                const Tuples* next = tuples;
                if (val_t.encoding == Encoding::Mapping) {
                    for (const auto& tp : *tuples)
                        if (make_key(key_t, tp[depth]).canonical == mk.canonical)
                            narrowed.push_back(tp);
                    next = &narrowed;
                }
                collect_value(val_t, derived, snap, next, depth + 1, out);
            }
            return;
        }
        case Encoding::DynamicArray: {
            claim(slot, snap, out);
            Bytes32 head_word = snap.get(slot.to_bytes());
            if (head_word == Bytes32{})
                return;
            U256 len_word = U256::from_bytes(head_word);
            uint64_t len = len_word.limbs[0];
            if (len_word.limbs[1] || len_word.limbs[2] || len_word.limbs[3] ||
                len > (1ull << 32))
                throw StateError("implausible dynamic array length");
            const TypeInfo& elem_t = layout_.type(*t.base);
            U256 data = dynamic_data_slot(slot);
            for (uint64_t i = 0; i < len; ++i) {
                auto [s, o] = array_element_position(data, elem_t, i);
                if (elem_t.is_value_type()) {
                    if (o == 0) // claim each data slot once
                        claim(s, snap, out);
                } else {
                    collect_value(elem_t, s, snap, tuples, depth, out);
                }
            }
            return;
        }
        case Encoding::Bytes: {
            claim(slot, snap, out);
            Bytes32 head_word = snap.get(slot.to_bytes());
            if ((head_word[31] & 1) == 0)
                return;
            U256 marker = U256::from_bytes(head_word);
            if (marker.limbs[1] || marker.limbs[2] || marker.limbs[3] ||
                marker.limbs[0] > (1ull << 32))
                throw StateError("malformed long-string length marker");
            uint64_t len = (marker.limbs[0] - 1) / 2;
            U256 chunk = dynamic_data_slot(slot);
            for (uint64_t off = 0; off < len; off += 32) {
                claim(chunk, snap, out);
                chunk += U256(1);
            }
            return;
        }
        case Encoding::Inplace:
            if (!t.members.empty()) {
                for (const DataElement& m : t.members) {
                    const TypeInfo& mt = layout_.type(m.type_id);
                    if (mt.is_value_type())
                        claim(slot + m.slot, snap, out);
                    else
                        collect_value(mt, slot + m.slot, snap, tuples, depth, out);
                }
                return;
            }
            if (t.base) {
                const TypeInfo& elem_t = layout_.type(*t.base);
                uint64_t declared = ValueCanonicalizer::declared_length(t);
                for (uint64_t i = 0; i < declared; ++i) {
                    auto [s, o] = array_element_position(slot, elem_t, i);
                    if (elem_t.is_value_type()) {
                        if (o == 0)
                            claim(s, snap, out);
                    } else {
                        collect_value(elem_t, s, snap, tuples, depth, out);
                    }
                }
                return;
            }
            claim(slot, snap, out);
            return;
        }
    }

    void claim(const U256& slot, const Snapshot& snap, std::vector<Bytes32>& out) const {
        Bytes32 key = slot.to_bytes();
        if (snap.has(key) && std::find(out.begin(), out.end(), key) == out.end())
            out.push_back(key);
    }

    const StorageLayout& layout_;
    const KeyEnumeration& keys_;
};

} // namespace state_detail

// Encodes a high-level value map into a sparse slot snapshot, per the
// layout's packing and derived-slot rules. Zero values produce no entries.
inline Snapshot encode_state(const StorageLayout& layout, const Json& values,
                             const KeyEnumeration& keys) {
    if (!values.is_object())
        throw StateError("value map must be a JSON object");
    for (const auto& [label, _] : values.items())
        if (!layout.find_element(label))
            throw StateError("value for unknown variable '" + label + "'");

    std::map<Bytes32, Bytes32> acc;
    state_detail::SlotWriter writer(acc);
    state_detail::StateCodec codec(layout, keys);
    for (const DataElement& e : layout.elements) {
        if (!values.contains(e.label))
            continue;
        codec.encode_element(e, values[e.label], writer);
    }

    Snapshot snap;
    for (const auto& [slot, word] : acc)
        snap.set(slot, word);
    return snap;
}

// Inverse of encode_state over the enumerated keys; values come back in
// canonical form. Unenumerated mapping entries are not reported.
inline Json decode_state(const StorageLayout& layout, const Snapshot& snapshot,
                         const KeyEnumeration& keys) {
    state_detail::StateCodec codec(layout, keys);
    Json out = Json::object();
    for (const DataElement& e : layout.elements)
        out[e.label] = codec.decode_element(e, snapshot);
    return out;
}

// Segments a snapshot into per-variable shards. Variables packed into a
// shared slot form one composite shard. Every occupied slot must be
// attributable to exactly one shard.
inline std::vector<Shard> generate_shards(const StorageLayout& layout,
                                          const Snapshot& snapshot,
                                          const KeyEnumeration& keys) {
    state_detail::StateCodec codec(layout, keys);
    std::vector<Shard> shards;

    size_t i = 0;
    while (i < layout.elements.size()) {
        const DataElement& first = layout.elements[i];
        const TypeInfo& first_t = layout.type_of(first);

        Shard shard;
        shard.variable = first.label;
        shard.decl_index = (uint32_t)i;
        shard.members.push_back(first.label);

        size_t j = i + 1;
        if (first_t.is_value_type()) {
            // absorb consecutive value-type elements sharing the same slot
            while (j < layout.elements.size()) {
                const DataElement& next = layout.elements[j];
                if (!layout.type_of(next).is_value_type() || !(next.slot == first.slot))
                    break;
                shard.members.push_back(next.label);
                ++j;
            }
        }

        std::vector<Bytes32> slots;
        for (size_t k = i; k < j; ++k)
            codec.collect_slots(layout.elements[k], snapshot, slots);
        for (const Bytes32& s : slots)
            shard.slots.emplace_back(s, snapshot.get(s));

        shards.push_back(std::move(shard));
        i = j;
    }

    // partition check: every occupied slot claimed exactly once
    std::set<Bytes32> claimed;
    for (const Shard& s : shards) {
        for (const auto& [slot, _] : s.slots) {
            if (!claimed.insert(slot).second)
                throw StateError("slot " + hex::to_hex(slot) + " claimed by two shards");
        }
    }
    for (const auto& [slot, _] : snapshot.entries) {
        if (!claimed.count(slot))
            throw StateError("unknown slot " + hex::to_hex(slot) +
                             " not attributable to any layout variable");
    }
    return shards;
}

} // namespace solmig
