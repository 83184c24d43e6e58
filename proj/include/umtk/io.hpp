#pragma once

#include <span>
#include <string>

#include "json.hpp"
#include "umtk/families.hpp"
#include "umtk/spaces.hpp"
#include "umtk/transform.hpp"

namespace umtk::io {

using json = nlohmann::ordered_json;

// Whole file as bytes. Throws input_error when unreadable.
std::string read_file(const std::string& path);

// {"n": int, "labels": [string]?, "d": [[value]]} where value is a JSON
// number or a string in the exact grammar "p", "p/q", "a.b".
Dissimilarity parse_matrix_json(const std::string& text);
// n lines of n comma-separated values in the same grammar. Errors carry
// 1-based line and column positions.
Dissimilarity parse_matrix_csv(const std::string& text);
// Sniffs the format: a first non-space '{' means JSON, anything else CSV.
Dissimilarity parse_matrix(const std::string& text);
Dissimilarity load_matrix(const std::string& path);

// {"kind": "piecewise_affine", "pieces": [{"from", "to", "from_closed",
// "to_closed", "slope", "intercept"}]} with "to": null (or absent) on the
// final unbounded piece, or {"kind": "power", "alpha": value}. Closure flags
// default to from_closed = true, to_closed = false.
TransformFunction parse_function_json(const std::string& text);
TransformFunction load_function(const std::string& path);

// A JSON list of function specs, or {"members": [list]}.
FunctionFamily parse_family_json(const std::string& text);
FunctionFamily load_family(const std::string& path);

// Writers emit every value as a canonical exact string.
json matrix_to_json(const Dissimilarity& d);
std::string matrix_to_csv(const Dissimilarity& d);
json function_to_json(const TransformFunction& f);
json family_to_json(std::span<const TransformFunction> members);

// Shared value grammar for a single JSON cell; where names the entry in
// error messages.
Rational rational_from_json(const json& v, const std::string& where);

}  // namespace umtk::io
