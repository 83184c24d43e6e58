#include "umtk/io.hpp"

#include <fstream>
#include <sstream>
#include <utility>
#include <vector>

#include "umtk/errors.hpp"

namespace umtk::io {

namespace {

json parse_json_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw input_error(std::string("invalid JSON: ") + e.what());
  }
}

const json& require_field(const json& j, const char* key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) throw input_error(where + ": missing field \"" + key + "\"");
  return *it;
}

bool closure_flag(const json& j, const char* key, bool fallback, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) return fallback;
  if (!it->is_boolean()) throw input_error(where + ": \"" + std::string(key) + "\" must be a boolean");
  return it->get<bool>();
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::string cur;
  for (char c : text) {
    if (c == '\n') {
      lines.push_back(std::move(cur));
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) lines.push_back(std::move(cur));
  while (!lines.empty() && lines.back().find_first_not_of(" \t") == std::string::npos) {
    lines.pop_back();
  }
  return lines;
}

std::string cell_pos(std::size_t line, std::size_t col) {
  return "line " + std::to_string(line + 1) + ", column " + std::to_string(col + 1);
}

TransformFunction function_from_json(const json& j, const std::string& where) {
  if (!j.is_object()) throw input_error(where + ": function spec must be an object");
  const json& kind = require_field(j, "kind", where);
  if (!kind.is_string()) throw input_error(where + ": \"kind\" must be a string");
  std::string k = kind.get<std::string>();

  if (k == "power") {
    Rational alpha = rational_from_json(require_field(j, "alpha", where), where + ".alpha");
    if (!alpha.is_positive()) throw input_error(where + ".alpha: exponent must be positive");
    return TransformFunction::power(std::move(alpha));
  }
  if (k != "piecewise_affine") {
    throw input_error(where + ": unknown kind \"" + k +
                      "\" (expected \"piecewise_affine\" or \"power\")");
  }

  const json& pieces_j = require_field(j, "pieces", where);
  if (!pieces_j.is_array() || pieces_j.empty()) {
    throw input_error(where + ": \"pieces\" must be a nonempty array");
  }
  std::vector<AffinePiece> pieces;
  pieces.reserve(pieces_j.size());
  for (std::size_t i = 0; i < pieces_j.size(); ++i) {
    std::string pw = where + ".pieces[" + std::to_string(i) + "]";
    const json& pj = pieces_j[i];
    if (!pj.is_object()) throw input_error(pw + ": piece must be an object");
    AffinePiece p;
    p.lo = rational_from_json(require_field(pj, "from", pw), pw + ".from");
    auto to_it = pj.find("to");
    if (to_it != pj.end() && !to_it->is_null()) {
      p.hi = rational_from_json(*to_it, pw + ".to");
    }
    p.lo_closed = closure_flag(pj, "from_closed", true, pw);
    p.hi_closed = closure_flag(pj, "to_closed", false, pw);
    if (!p.hi && p.hi_closed) {
      throw input_error(pw + ": unbounded piece cannot set \"to_closed\"");
    }
    p.slope = rational_from_json(require_field(pj, "slope", pw), pw + ".slope");
    p.intercept = rational_from_json(require_field(pj, "intercept", pw), pw + ".intercept");
    pieces.push_back(std::move(p));
  }
  return TransformFunction::piecewise(std::move(pieces));
}

json piece_to_json(const AffinePiece& p) {
  json pj;
  pj["from"] = p.lo.to_string();
  pj["to"] = p.hi ? json(p.hi->to_string()) : json(nullptr);
  pj["from_closed"] = p.lo_closed;
  pj["to_closed"] = p.hi_closed;
  pj["slope"] = p.slope.to_string();
  pj["intercept"] = p.intercept.to_string();
  return pj;
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw input_error("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw input_error("cannot read file: " + path);
  return std::move(buf).str();
}

Rational rational_from_json(const json& v, const std::string& where) {
  try {
    if (v.is_number_integer() || v.is_number_unsigned()) {
      return Rational::parse(v.dump());
    }
    if (v.is_number_float()) {
      return Rational::from_double(v.get<double>());
    }
    if (v.is_string()) {
      return Rational::parse(v.get<std::string>());
    }
  } catch (const input_error& e) {
    throw input_error(where + ": " + e.what());
  }
  throw input_error(where + ": expected a number or an exact \"p/q\" string");
}

Dissimilarity parse_matrix_json(const std::string& text) {
  json j = parse_json_text(text);
  if (!j.is_object()) throw input_error("matrix: top level must be an object");
  const json& n_j = require_field(j, "n", "matrix");
  if (!n_j.is_number_integer() || n_j.get<long long>() < 1) {
    throw input_error("matrix: \"n\" must be a positive integer");
  }
  std::size_t n = static_cast<std::size_t>(n_j.get<long long>());

  std::vector<std::string> labels;
  if (auto it = j.find("labels"); it != j.end() && !it->is_null()) {
    if (!it->is_array() || it->size() != n) {
      throw input_error("matrix: \"labels\" must list exactly n strings");
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (!(*it)[i].is_string()) {
        throw input_error("matrix: labels[" + std::to_string(i) + "] must be a string");
      }
      labels.push_back((*it)[i].get<std::string>());
    }
  }

  const json& d_j = require_field(j, "d", "matrix");
  if (!d_j.is_array() || d_j.size() != n) {
    throw input_error("matrix: \"d\" must be an array of n rows");
  }
  std::vector<Rational> entries;
  entries.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!d_j[i].is_array() || d_j[i].size() != n) {
      throw input_error("matrix: d[" + std::to_string(i) + "] must list exactly n values");
    }
    for (std::size_t k = 0; k < n; ++k) {
      entries.push_back(rational_from_json(
          d_j[i][k], "d[" + std::to_string(i) + "][" + std::to_string(k) + "]"));
    }
  }
  return Dissimilarity(n, std::move(entries), std::move(labels));
}

Dissimilarity parse_matrix_csv(const std::string& text) {
  std::vector<std::string> lines = split_lines(text);
  if (lines.empty()) throw input_error("csv matrix: no rows");
  std::size_t n = lines.size();

  std::vector<Rational> entries(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::string> cells;
    std::string cur;
    for (char c : lines[i]) {
      if (c == ',') {
        cells.push_back(std::move(cur));
        cur.clear();
      } else {
        cur.push_back(c);
      }
    }
    cells.push_back(std::move(cur));
    if (cells.size() != n) {
      throw input_error("csv matrix: line " + std::to_string(i + 1) + " has " +
                        std::to_string(cells.size()) + " values, expected " +
                        std::to_string(n) + " (rows must form a square matrix)");
    }
    for (std::size_t k = 0; k < n; ++k) {
      auto parsed = Rational::try_parse(cells[k]);
      if (!parsed) {
        throw input_error("csv matrix: " + cell_pos(i, k) + ": cannot parse value \"" +
                          cells[k] + "\"");
      }
      if (parsed->is_negative()) {
        throw input_error("csv matrix: " + cell_pos(i, k) + ": negative distance");
      }
      entries[i * n + k] = std::move(*parsed);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = i + 1; k < n; ++k) {
      if (entries[i * n + k] != entries[k * n + i]) {
        throw input_error("csv matrix: " + cell_pos(k, i) + " differs from its transpose at " +
                          cell_pos(i, k));
      }
    }
  }
  return Dissimilarity(n, std::move(entries));
}

Dissimilarity parse_matrix(const std::string& text) {
  std::size_t first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return parse_matrix_json(text);
  return parse_matrix_csv(text);
}

Dissimilarity load_matrix(const std::string& path) { return parse_matrix(read_file(path)); }

TransformFunction parse_function_json(const std::string& text) {
  return function_from_json(parse_json_text(text), "function");
}

TransformFunction load_function(const std::string& path) {
  return parse_function_json(read_file(path));
}

FunctionFamily parse_family_json(const std::string& text) {
  json j = parse_json_text(text);
  const json* list = &j;
  if (j.is_object()) list = &require_field(j, "members", "family");
  if (!list->is_array() || list->empty()) {
    throw input_error("family: expected a nonempty list of function specs");
  }
  std::vector<TransformFunction> members;
  members.reserve(list->size());
  for (std::size_t i = 0; i < list->size(); ++i) {
    members.push_back(function_from_json((*list)[i], "family[" + std::to_string(i) + "]"));
  }
  return FunctionFamily(std::move(members));
}

FunctionFamily load_family(const std::string& path) {
  return parse_family_json(read_file(path));
}

json matrix_to_json(const Dissimilarity& d) {
  json j;
  j["n"] = d.size();
  if (!d.labels().empty()) j["labels"] = d.labels();
  json rows = json::array();
  for (std::size_t i = 0; i < d.size(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < d.size(); ++k) row.push_back(d.at(i, k).to_string());
    rows.push_back(std::move(row));
  }
  j["d"] = std::move(rows);
  return j;
}

std::string matrix_to_csv(const Dissimilarity& d) {
  std::string out;
  for (std::size_t i = 0; i < d.size(); ++i) {
    for (std::size_t k = 0; k < d.size(); ++k) {
      if (k) out.push_back(',');
      out += d.at(i, k).to_string();
    }
    out.push_back('\n');
  }
  return out;
}

json function_to_json(const TransformFunction& f) {
  json j;
  if (f.is_power()) {
    j["kind"] = "power";
    j["alpha"] = f.alpha().to_string();
    return j;
  }
  j["kind"] = "piecewise_affine";
  json pieces = json::array();
  for (const AffinePiece& p : f.affine().pieces()) pieces.push_back(piece_to_json(p));
  j["pieces"] = std::move(pieces);
  return j;
}

json family_to_json(std::span<const TransformFunction> members) {
  json arr = json::array();
  for (const TransformFunction& f : members) arr.push_back(function_to_json(f));
  return arr;
}

}  // namespace umtk::io
