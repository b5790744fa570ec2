// Copyright 2026 the solmig authors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <string>

#include "json.hpp" // vendored nlohmann/json

#include "solmig/errors.hpp"

namespace solmig {

// Machine outputs use ordered_json so key order is ours and stable.
using Json = nlohmann::ordered_json;

inline Json parse_json(const std::string& text, const std::string& what) {
    Json j = Json::parse(text, nullptr, false);
    if (j.is_discarded())
        throw ConfigError("malformed JSON in " + what);
    return j;
}

} // namespace solmig
