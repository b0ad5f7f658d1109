#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"

namespace tubepack::detail {

using Json = nlohmann::json;

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

Json parse_json(const std::string& text);

// Member access with ParseError on absence or wrong type.
const Json& member(const Json& object, const char* key, const std::string& where);
double number_member(const Json& object, const char* key, const std::string& where);
int int_member(const Json& object, const char* key, const std::string& where);

}  // namespace tubepack::detail
