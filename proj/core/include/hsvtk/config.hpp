// Copyright (c) 2026 hsvtk contributors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace hsvtk {

/// Minimal key=value configuration file. Lines are `key = value`; `#` starts
/// a comment; repeated keys accumulate in order (used for layer tables).
class Config {
 public:
  Config() = default;

  static Config parse(const std::string& text);
  static Config load(const std::filesystem::path& path);

  bool has(const std::string& key) const;

  std::string get_string(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  int get_int(const std::string& key) const;
  int get_int(const std::string& key, int fallback) const;

  /// All values recorded for a repeated key, in file order.
  std::vector<std::string> get_all(const std::string& key) const;

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

}  // namespace hsvtk
