#pragma once

#include <string>

#include <json.hpp>

namespace decaycert::cli {

using Json = nlohmann::ordered_json;

/// Pretty-prints with two-space indentation. Floating-point values are
/// written with 17 significant digits; non-finite values become null.
std::string dump_json(const Json& j);

}  // namespace decaycert::cli
