#pragma once

#include "unirenorm/renorm.hpp"

#include <json.hpp>

#include <map>
#include <string>
#include <string_view>

namespace unirenorm {

using Json = nlohmann::ordered_json;

/// {degree, base_param, stack: [[period, scale], ...]} with reals as decimal strings.
Json germ_to_json(const Germ& g);
Germ germ_from_json(const Json& j);

Json pre_renorm_to_json(const PreRenorm& pre);

/// Full precision decimal string.
std::string json_real(const BigReal& x);
/// 40 significant digits.
std::string csv_real(const BigReal& x);

using Config = std::map<std::string, std::string>;

/// Flat `key = value` lines; `#` starts a comment. Duplicate keys: last wins.
Config parse_config(std::string_view text);
Config load_config(const std::string& path);

std::string read_file(const std::string& path);
/// Writes to a temporary file in the same directory, then renames it over `path`.
void write_atomic(const std::string& path, std::string_view content);

}  // namespace unirenorm
