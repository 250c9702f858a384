// Copyright 2026 the lcsurf authors. Licensed under the Apache License, Version 2.0.
#pragma once

/**
 * @file report.hpp
 * @brief Deterministic report serialization: insertion-ordered JSON with
 * fixed float formatting, and CSV tables.
 *
 * Reports are regression artifacts: identical inputs must produce
 * byte-identical output.  Object keys keep insertion order, floats print with
 * 17 significant digits, non-finite values serialize as JSON null, and
 * nothing run-dependent (pointers, timestamps, locales) enters the text.
 */

#include <string>
#include <utility>
#include <vector>

namespace lcs {

/// %.17g rendering shared by the JSON and CSV writers ("nan"/"inf" for
/// non-finite values; JSON replaces those with null).
std::string format_double(double x);

/// An insertion-ordered JSON document.
class Json {
 public:
  Json() = default;  // null

  static Json boolean(bool b);
  static Json number(double x);
  static Json integer(long long i);
  static Json text(std::string s);
  static Json array();
  static Json object();

  /// Append a field to an object (keys are emitted in insertion order).
  Json& add(const std::string& key, Json value);
  Json& add(const std::string& key, double value);
  Json& add(const std::string& key, int value);
  Json& add(const std::string& key, long long value);
  Json& add(const std::string& key, bool value);
  Json& add(const std::string& key, const char* value);
  Json& add(const std::string& key, const std::string& value);

  /// Append an element to an array.
  Json& push(Json value);
  Json& push(double value);
  Json& push(const std::string& value);

  bool is_null() const { return kind_ == Kind::Null; }

  /// Pretty-printed document (2-space indent) with a trailing newline.
  std::string dump() const;

 private:
  enum class Kind { Null, Bool, Int, Double, String, Array, Object };
  Kind kind_ = Kind::Null;
  bool bool_ = false;
  long long int_ = 0;
  double double_ = 0.0;
  std::string string_;
  std::vector<Json> items_;
  std::vector<std::pair<std::string, Json>> fields_;

  void write(std::string& out, int depth) const;
};

/// A CSV table with a fixed header.  Cells are preformatted strings (use
/// format_double for numbers); the writer does not quote, so cells must not
/// contain commas or newlines.
class Csv {
 public:
  explicit Csv(std::vector<std::string> columns);
  void add_row(std::vector<std::string> cells);
  std::string dump() const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> rows_;
};

}  // namespace lcs
