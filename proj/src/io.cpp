#include "unirenorm/io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unistd.h>

namespace unirenorm {

std::string json_real(const BigReal& x) { return to_decimal(x); }

std::string csv_real(const BigReal& x) { return to_decimal(x, 40); }

Json germ_to_json(const Germ& g) {
  Json stack = Json::array();
  for (const auto& level : g.stack()) stack.push_back(Json::array({level.period, json_real(level.scale)}));
  return Json{{"degree", g.degree()}, {"base_param", json_real(g.base_param())}, {"stack", stack}};
}

Germ germ_from_json(const Json& j) {
  try {
    std::vector<RenormLevel> stack;
    for (const auto& level : j.at("stack"))
      stack.push_back({level.at(0).get<int>(), parse_decimal(level.at(1).get<std::string>())});
    return Germ(j.at("degree").get<int>(), parse_decimal(j.at("base_param").get<std::string>()), std::move(stack));
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed germ JSON: ") + e.what());
  }
}

Json pre_renorm_to_json(const PreRenorm& pre) {
  return Json{{"p", pre.period}, {"b", json_real(pre.b)}, {"beta", json_real(pre.beta)}};
}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

Config parse_config(std::string_view text) {
  Config out;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": expected key = value");
    const auto key = trim(line.substr(0, eq));
    if (key.empty()) throw std::invalid_argument("config line " + std::to_string(line_no) + ": empty key");
    out[std::string(key)] = std::string(trim(line.substr(eq + 1)));
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Config load_config(const std::string& path) { return parse_config(read_file(path)); }

void write_atomic(const std::string& path, std::string_view content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      out.close();
      fs::remove(tmp);
      throw std::runtime_error("write failed: " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw std::runtime_error("cannot rename onto " + path + ": " + ec.message());
  }
}

}  // namespace unirenorm
