#pragma once

#include <json.hpp>
#include <string>

#include "polyring/algebra.hpp"
#include "polyring/symbolic.hpp"
#include "polyring/zariski.hpp"

namespace polyring {

// All loaders throw InvalidInput on unreadable files, malformed JSON, missing
// or mistyped fields, and on values the target constructors reject.

// instance: {size, add (row-major), neg, ops: {name: {arity, table}}}
nlohmann::ordered_json instance_to_json(const FinitePolyring& k);
FinitePolyring instance_from_json(const nlohmann::json& j);

// symbolic instance: {dimension, ops: [{name, kind, params}]}
// kind "product"/"zero" take params.arity, kind "matrix" takes params.matrix
nlohmann::ordered_json symbolic_to_json(int dimension, const std::vector<SymbolicOp>& ops);
SymbolicPolyring symbolic_from_json(const nlohmann::json& j);

// groupoid: {size, mul (row-major)}
nlohmann::ordered_json groupoid_to_json(const FiniteGroupoid& g);
FiniteGroupoid groupoid_from_json(const nlohmann::json& j);

// Self-contained replayable certificate; integer entries are decimal strings
// so coordinates of any magnitude round-trip exactly.
nlohmann::ordered_json certificate_to_json(const Certificate& c);
Certificate certificate_from_json(const nlohmann::json& j);

nlohmann::json parse_json_file(const std::string& path);
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace polyring
