#pragma once

#include <string>

#include <json.hpp>

namespace regdepth {

using Json = nlohmann::ordered_json;

/// Serializes with insertion-ordered keys and every double printed with 17
/// significant digits, so equal values always give equal bytes.
/// Non-finite doubles become null.
std::string dump_json(const Json& j, int indent = 2);

/// FNV-1a 64-bit hash rendered as 16 lowercase hex digits.
std::string fnv1a_hex(const std::string& text);

}  // namespace regdepth
