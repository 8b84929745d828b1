// Copyright (c) 2026 hsvtk contributors.
// SPDX-License-Identifier: Apache-2.0

#include "hsvtk/config.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "hsvtk/error.hpp"

namespace hsvtk {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

}  // namespace

Config Config::parse(const std::string& text) {
  Config cfg;
  std::istringstream stream(text);
  std::string line;
  int line_no = 0;
  while (std::getline(stream, line)) {
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string trimmed = trim(line);
    if (trimmed.empty()) continue;
    const std::size_t eq = trimmed.find('=');
    detail::require(eq != std::string::npos,
                    "Config: missing '=' on line " + std::to_string(line_no));
    const std::string key = trim(trimmed.substr(0, eq));
    const std::string value = trim(trimmed.substr(eq + 1));
    detail::require(!key.empty(), "Config: empty key on line " + std::to_string(line_no));
    cfg.entries_.emplace_back(key, value);
  }
  return cfg;
}

Config Config::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  detail::require(in.good(), "Config: cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str());
}

bool Config::has(const std::string& key) const {
  for (const auto& [k, v] : entries_) {
    if (k == key) return true;
  }
  return false;
}

std::string Config::get_string(const std::string& key) const {
  const std::string* last = nullptr;
  for (const auto& [k, v] : entries_) {
    if (k == key) last = &v;
  }
  detail::require(last != nullptr, "Config: missing key '" + key + "'");
  return *last;
}

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
  return has(key) ? get_string(key) : fallback;
}

double Config::get_double(const std::string& key) const {
  const std::string raw = get_string(key);
  try {
    std::size_t used = 0;
    const double v = std::stod(raw, &used);
    detail::require(trim(raw.substr(used)).empty(), "trailing characters");
    return v;
  } catch (const std::exception&) {
    throw Error("Config: key '" + key + "' is not a number: '" + raw + "'");
  }
}

double Config::get_double(const std::string& key, double fallback) const {
  return has(key) ? get_double(key) : fallback;
}

int Config::get_int(const std::string& key) const {
  const std::string raw = get_string(key);
  try {
    std::size_t used = 0;
    const int v = std::stoi(raw, &used);
    detail::require(trim(raw.substr(used)).empty(), "trailing characters");
    return v;
  } catch (const std::exception&) {
    throw Error("Config: key '" + key + "' is not an integer: '" + raw + "'");
  }
}

int Config::get_int(const std::string& key, int fallback) const {
  return has(key) ? get_int(key) : fallback;
}

std::vector<std::string> Config::get_all(const std::string& key) const {
  std::vector<std::string> out;
  for (const auto& [k, v] : entries_) {
    if (k == key) out.push_back(v);
  }
  return out;
}

}  // namespace hsvtk
