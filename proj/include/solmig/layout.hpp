// Copyright 2026 the solmig authors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "solmig/ast.hpp"
#include "solmig/errors.hpp"
#include "solmig/keccak.hpp"
#include "solmig/u256.hpp"

namespace solmig {

enum class Encoding { Inplace, Mapping, DynamicArray, Bytes };

inline const char* encoding_name(Encoding e) {
    switch (e) {
    case Encoding::Inplace: return "inplace";
    case Encoding::Mapping: return "mapping";
    case Encoding::DynamicArray: return "dynamic_array";
    case Encoding::Bytes: return "bytes";
    }
    return "inplace";
}

struct DataElement {
    std::string label;
    std::string type_id;
    U256 slot;          // struct members: relative to the struct's first slot
    uint32_t offset = 0; // byte offset from the low-order end of the slot
};

struct TypeInfo {
    std::string id;
    Encoding encoding = Encoding::Inplace;
    uint64_t number_of_bytes = 0;      // static footprint; 32 for mapping/dynamic heads
    std::optional<std::string> base;   // arrays: element type; mappings: value type
    std::optional<std::string> key;    // mappings only
    std::vector<DataElement> members;  // structs only

    bool is_value_type() const {
        return encoding == Encoding::Inplace && members.empty() && !base && number_of_bytes <= 32;
    }
};

struct StorageLayout {
    std::vector<DataElement> elements;      // declaration order
    std::map<std::string, TypeInfo> types;  // keyed by type id

    const TypeInfo& type_of(const DataElement& e) const { return types.at(e.type_id); }
    const TypeInfo& type(const std::string& id) const {
        auto it = types.find(id);
        if (it == types.end())
            throw LayoutError("unknown type id '" + id + "'");
        return it->second;
    }
    const DataElement* find_element(const std::string& label) const {
        for (const auto& e : elements)
            if (e.label == label)
                return &e;
        return nullptr;
    }
};

// ---- derived slot formulas ----

// Storage slot of m[key] for a mapping at head_slot. The key must already
// be padded to 32 bytes per its elementary type.
inline U256 mapping_slot(const U256& head_slot, const Bytes32& padded_key) {
    uint8_t buf[64];
    Bytes32 key_be = padded_key;
    Bytes32 head_be = head_slot.to_bytes();
    std::memcpy(buf, key_be.data(), 32);
    std::memcpy(buf + 32, head_be.data(), 32);
    return U256::from_bytes(keccak256(std::span<const uint8_t>(buf, 64)));
}

// Variant for string/bytes mapping keys: the raw bytes are hashed unpadded.
inline U256 mapping_slot_raw(const U256& head_slot, std::string_view raw_key) {
    std::vector<uint8_t> buf(raw_key.size() + 32);
    std::memcpy(buf.data(), raw_key.data(), raw_key.size());
    Bytes32 head_be = head_slot.to_bytes();
    std::memcpy(buf.data() + raw_key.size(), head_be.data(), 32);
    return U256::from_bytes(keccak256(std::span<const uint8_t>(buf.data(), buf.size())));
}

// First data slot of a dynamic array / long bytes value whose head (length)
// sits at head_slot. Element i lives at result + i*stride.
inline U256 dynamic_data_slot(const U256& head_slot) {
    Bytes32 head_be = head_slot.to_bytes();
    return U256::from_bytes(keccak256(std::span<const uint8_t>(head_be.data(), 32)));
}

// ---- layout computation ----

namespace layout_detail {

class TypeResolver {
public:
    TypeResolver(const ContractUnit& contract, std::map<std::string, TypeInfo>& table)
        : contract_(contract), table_(table) {}

    std::string resolve(const TypeName& t) {
        switch (t.kind) {
        case TypeName::Kind::Elementary:
            return resolve_elementary(t.name);
        case TypeName::Kind::Mapping: {
            std::string kid = resolve(t.params[0]);
            std::string vid = resolve(t.params[1]);
            std::string id = "t_mapping(" + kid + "," + vid + ")";
            if (!table_.count(id)) {
                TypeInfo info;
                info.id = id;
                info.encoding = Encoding::Mapping;
                info.number_of_bytes = 32;
                info.key = kid;
                info.base = vid;
                table_.emplace(id, std::move(info));
            }
            return id;
        }
        case TypeName::Kind::Array: {
            std::string eid = resolve(t.params[0]);
            const TypeInfo& elem = table_.at(eid);
            if (elem.encoding == Encoding::Mapping)
                throw LayoutError("arrays of mappings are not supported");
            if (t.array_length) {
                uint64_t len = *t.array_length;
                std::string id = "t_array(" + eid + ")" + std::to_string(len) + "_storage";
                if (!table_.count(id)) {
                    TypeInfo info;
                    info.id = id;
                    info.encoding = Encoding::Inplace;
                    info.number_of_bytes = 32 * slots_for_fixed_array(elem, len);
                    info.base = eid;
                    table_.emplace(id, std::move(info));
                }
                return id;
            }
            std::string id = "t_array(" + eid + ")dyn_storage";
            if (!table_.count(id)) {
                TypeInfo info;
                info.id = id;
                info.encoding = Encoding::DynamicArray;
                info.number_of_bytes = 32;
                info.base = eid;
                table_.emplace(id, std::move(info));
            }
            return id;
        }
        case TypeName::Kind::StructRef:
            return resolve_struct(t.name);
        }
        throw LayoutError("unsupported type");
    }

    // Slots occupied by a fixed array of `len` elements of `elem`.
    static uint64_t slots_for_fixed_array(const TypeInfo& elem, uint64_t len) {
        if (elem.is_value_type() && elem.number_of_bytes <= 32) {
            uint64_t per_slot = 32 / elem.number_of_bytes;
            return (len + per_slot - 1) / per_slot;
        }
        // non-value elements (structs, nested fixed arrays, dynamic heads,
        // strings) each occupy whole slots
        uint64_t elem_slots = (elem.number_of_bytes + 31) / 32;
        return len * elem_slots;
    }

private:
    std::string resolve_elementary(const std::string& name) {
        std::string id;
        TypeInfo info;
        if (name == "string") {
            id = "t_string_storage";
            info.encoding = Encoding::Bytes;
            info.number_of_bytes = 32;
        } else if (name == "bytes") {
            id = "t_bytes_storage";
            info.encoding = Encoding::Bytes;
            info.number_of_bytes = 32;
        } else if (name == "bool") {
            id = "t_bool";
            info.number_of_bytes = 1;
        } else if (name == "address") {
            id = "t_address";
            info.number_of_bytes = 20;
        } else if (name.starts_with("uint")) {
            id = "t_" + name;
            info.number_of_bytes = std::stoul(name.substr(4)) / 8;
        } else if (name.starts_with("int")) {
            id = "t_" + name;
            info.number_of_bytes = std::stoul(name.substr(3)) / 8;
        } else if (name.starts_with("bytes")) {
            id = "t_" + name;
            info.number_of_bytes = std::stoul(name.substr(5));
        } else {
            throw LayoutError("unsupported elementary type '" + name + "'");
        }
        if (!table_.count(id)) {
            info.id = id;
            table_.emplace(id, std::move(info));
        }
        return id;
    }

    std::string resolve_struct(const std::string& name) {
        std::string id = "t_struct(" + name + ")_storage";
        if (table_.count(id))
            return id;
        if (!in_progress_.insert(name).second)
            throw LayoutError("recursive struct reference '" + name + "'");
        const StructDecl* decl = contract_.find_struct(name);
        if (!decl)
            throw LayoutError("unresolved struct reference '" + name + "'");
        if (decl->members.empty())
            throw LayoutError("struct '" + name + "' has no members");

        TypeInfo info;
        info.id = id;
        info.encoding = Encoding::Inplace;
        U256 slot(0);
        uint32_t offset = 0;
        for (const Param& m : decl->members) {
            if (m.type.is_mapping())
                throw LayoutError("mapping member '" + m.name + "' inside struct '" + name +
                                  "' is not supported");
            std::string mid = resolve(m.type);
            const TypeInfo& mt = table_.at(mid);
            DataElement elem;
            elem.label = m.name;
            elem.type_id = mid;
            place(mt, slot, offset, elem);
            info.members.push_back(std::move(elem));
        }
        uint64_t total_slots = slot.limbs[0] + (offset > 0 ? 1 : 0);
        info.number_of_bytes = 32 * total_slots;
        table_.emplace(id, std::move(info));
        in_progress_.erase(name);
        return id;
    }

public:
    // Shared placement step: assigns (slot, offset) to elem and advances the
    // cursor. Value types pack; everything else starts and ends on slot
    // boundaries.
    static void place(const TypeInfo& t, U256& slot, uint32_t& offset, DataElement& elem) {
        if (t.is_value_type()) {
            if (offset + t.number_of_bytes > 32) {
                slot += U256(1);
                offset = 0;
            }
            elem.slot = slot;
            elem.offset = offset;
            offset += (uint32_t)t.number_of_bytes;
            if (offset == 32) {
                slot += U256(1);
                offset = 0;
            }
            return;
        }
        if (offset > 0) {
            slot += U256(1);
            offset = 0;
        }
        elem.slot = slot;
        elem.offset = 0;
        uint64_t slots_used = t.encoding == Encoding::Inplace ? t.number_of_bytes / 32 : 1;
        slot += U256(slots_used);
    }

private:
    const ContractUnit& contract_;
    std::map<std::string, TypeInfo>& table_;
    std::unordered_set<std::string> in_progress_;
};

} // namespace layout_detail

// Assigns storage slots to every non-constant state variable, in declaration
// order, with value-type packing. Mappings and dynamic types get one head
// slot; structs and fixed arrays start fresh and occupy whole slots.
inline StorageLayout compute_layout(const ContractUnit& contract) {
    StorageLayout layout;
    layout_detail::TypeResolver resolver(contract, layout.types);

    U256 slot(0);
    uint32_t offset = 0;
    for (const StateVariableDecl& v : contract.state_variables) {
        if (v.is_constant_or_immutable)
            continue; // occupies no storage slot
        std::string tid = resolver.resolve(v.type);
        const TypeInfo& t = layout.types.at(tid);
        DataElement elem;
        elem.label = v.name;
        elem.type_id = tid;
        layout_detail::TypeResolver::place(t, slot, offset, elem);
        layout.elements.push_back(std::move(elem));
    }
    return layout;
}

} // namespace solmig
