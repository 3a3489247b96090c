#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "algebroid/algebroid.hpp"

namespace algebroid::cli {

using Json = nlohmann::ordered_json;

/// Builds an algebroid from a spec document: either a catalog shortcut
/// ("kind" + "params") or explicit "dimension", "rank", "anchor", "bracket"
/// with 1-based indices and antisymmetric completion.
/// Throws Error{InvalidInput}, Error{AntisymmetryViolation} and parser errors.
LieAlgebroid algebroid_from_spec(const nlohmann::json& doc);

/// Explicit spec document for an algebroid; feeding it back to
/// algebroid_from_spec reproduces the structure functions exactly.
Json spec_from_algebroid(const LieAlgebroid& A);

/// Lowercase hex SHA-256.
std::string sha256_hex(std::string_view bytes);

/// Runs one command. Everything (report, error document or help) goes to
/// `out`; the return value is the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out);

}  // namespace algebroid::cli
