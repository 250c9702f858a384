// Copyright 2026 the lcsurf authors. Licensed under the Apache License, Version 2.0.
#pragma once

/**
 * @file config.hpp
 * @brief Line-oriented key/value configuration text for charts and pair
 * constructions.
 *
 * Format, one `key = value` per line ('#' starts a comment):
 *
 *   source     = "R31"              # quoted string
 *   components = [cos((u+v)/2), sin((u+v)/2), (u-v)/2]   # list; commas split
 *                                    # at parenthesis depth 0 only
 *   domain     = [-0.5, 1.5, -0.5, 1.5]
 *   params.r   = 2.0                 # dotted keys form groups
 *
 * Values keep their raw text; accessors parse on demand and report the line
 * of the offending entry. Key order is preserved for deterministic echoes.
 */

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "lcsurf/error.hpp"

namespace lcs {

class Config {
 public:
  static Config parse_text(const std::string& text);
  static Config load_file(const std::string& path);

  bool has(const std::string& key) const;
  /// Raw value text (trimmed). Throws if the key is absent.
  const std::string& raw(const std::string& key) const;

  double number(const std::string& key) const;
  double number_or(const std::string& key, double fallback) const;
  /// Value must be a double-quoted string.
  std::string str(const std::string& key) const;
  std::string str_or(const std::string& key, const std::string& fallback) const;
  /// List items split at depth-0 commas, each trimmed (quotes optional).
  std::vector<std::string> list(const std::string& key) const;
  std::vector<double> number_list(const std::string& key) const;
  /// All entries under "<prefix>." as name -> number (e.g. params.*).
  std::map<std::string, double> number_group(const std::string& prefix) const;

  /// Ordered entries, for config echoes in reports.
  const std::vector<std::pair<std::string, std::string>>& items() const { return items_; }

 private:
  std::vector<std::pair<std::string, std::string>> items_;
  std::map<std::string, size_t> index_;
  std::map<std::string, int> lines_;

  int line_of(const std::string& key) const;
};

}  // namespace lcs
