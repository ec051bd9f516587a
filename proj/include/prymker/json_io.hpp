#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "prymker/covering.hpp"

namespace prymker {

using Json = nlohmann::ordered_json;

Json to_json(const Scalar& s);
Json to_json(const TruncatedSeries& f);
Json to_json(const CoveringDatum& datum);
Json to_json(const Matrix& m);
Json to_json(const Vector& v);

/// Parsers report SchemaError / ParseError prefixed with the JSON pointer of
/// the offending value.
Scalar scalar_from_json(const Json& j, const FieldSpec& field, const std::string& pointer);
TruncatedSeries series_from_json(const Json& j, const FieldSpec& field, const std::string& pointer);
CoveringDatum datum_from_json(const Json& j);

[[noreturn]] void schema_error(const std::string& pointer, const std::string& what);
const Json& json_member(const Json& j, const std::string& pointer, const char* key);
int json_int(const Json& j, const std::string& pointer);
std::string json_string(const Json& j, const std::string& pointer);
const Json& json_array(const Json& j, const std::string& pointer);
std::vector<std::string> json_string_list(const Json& j, const std::string& pointer);

/// Parses text as JSON; syntax errors become ParseError.
Json parse_json(const std::string& text, const std::string& what);
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace prymker
