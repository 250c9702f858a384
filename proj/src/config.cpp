// Copyright 2026 the lcsurf authors. Licensed under the Apache License, Version 2.0.
#include "lcsurf/config.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace lcs {

namespace {

std::string trim(const std::string& s) {
  size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::string strip_quotes(const std::string& s) {
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') return s.substr(1, s.size() - 2);
  return s;
}

double parse_number(const std::string& s, const std::string& key, int line) {
  const std::string t = trim(s);
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (end == t.c_str() || *end != '\0')
    fail("config line " + std::to_string(line) + ": value of '" + key +
         "' is not a number: '" + t + "'");
  return v;
}

}  // namespace

Config Config::parse_text(const std::string& text) {
  Config cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    // Strip comments ('#' outside quotes).
    bool in_str = false;
    std::string body;
    for (char c : line) {
      if (c == '"') in_str = !in_str;
      if (c == '#' && !in_str) break;
      body += c;
    }
    body = trim(body);
    if (body.empty()) continue;
    const size_t eq = body.find('=');
    if (eq == std::string::npos)
      fail("config line " + std::to_string(lineno) + ": expected 'key = value', got '" +
           body + "'");
    const std::string key = trim(body.substr(0, eq));
    const std::string value = trim(body.substr(eq + 1));
    if (key.empty())
      fail("config line " + std::to_string(lineno) + ": empty key");
    if (cfg.index_.count(key))
      fail("config line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
    cfg.index_[key] = cfg.items_.size();
    cfg.items_.emplace_back(key, value);
    cfg.lines_[key] = lineno;
  }
  return cfg;
}

Config Config::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_text(ss.str());
}

bool Config::has(const std::string& key) const { return index_.count(key) != 0; }

const std::string& Config::raw(const std::string& key) const {
  auto it = index_.find(key);
  if (it == index_.end()) fail("config: missing required key '" + key + "'");
  return items_[it->second].second;
}

int Config::line_of(const std::string& key) const {
  auto it = lines_.find(key);
  return it == lines_.end() ? 0 : it->second;
}

double Config::number(const std::string& key) const {
  return parse_number(raw(key), key, line_of(key));
}

double Config::number_or(const std::string& key, double fallback) const {
  return has(key) ? number(key) : fallback;
}

std::string Config::str(const std::string& key) const {
  const std::string& r = raw(key);
  if (r.size() < 2 || r.front() != '"' || r.back() != '"')
    fail("config line " + std::to_string(line_of(key)) + ": value of '" + key +
         "' must be a quoted string");
  return r.substr(1, r.size() - 2);
}

std::string Config::str_or(const std::string& key, const std::string& fallback) const {
  return has(key) ? str(key) : fallback;
}

std::vector<std::string> Config::list(const std::string& key) const {
  const std::string& r = raw(key);
  if (r.size() < 2 || r.front() != '[' || r.back() != ']')
    fail("config line " + std::to_string(line_of(key)) + ": value of '" + key +
         "' must be a [list]");
  const std::string inner = r.substr(1, r.size() - 2);
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c : inner) {
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(strip_quotes(trim(cur)));
      cur.clear();
      continue;
    }
    cur += c;
  }
  if (!trim(cur).empty() || !out.empty()) out.push_back(strip_quotes(trim(cur)));
  if (!out.empty() && out.back().empty()) out.pop_back();
  return out;
}

std::vector<double> Config::number_list(const std::string& key) const {
  std::vector<double> out;
  for (const std::string& item : list(key))
    out.push_back(parse_number(item, key, line_of(key)));
  return out;
}

std::map<std::string, double> Config::number_group(const std::string& prefix) const {
  std::map<std::string, double> out;
  const std::string pre = prefix + ".";
  for (const auto& [key, value] : items_)
    if (key.rfind(pre, 0) == 0)
      out[key.substr(pre.size())] = parse_number(value, key, line_of(key));
  return out;
}

}  // namespace lcs
