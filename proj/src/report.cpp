// Copyright 2026 the lcsurf authors. Licensed under the Apache License, Version 2.0.
#include "lcsurf/report.hpp"

#include <cmath>
#include <cstdio>

#include "lcsurf/error.hpp"

namespace lcs {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

void append_escaped(std::string& out, const std::string& s) {
  out += '"';
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  out += '"';
}

}  // namespace

Json Json::boolean(bool b) {
  Json j;
  j.kind_ = Kind::Bool;
  j.bool_ = b;
  return j;
}

Json Json::number(double x) {
  Json j;
  if (std::isfinite(x)) {
    j.kind_ = Kind::Double;
    j.double_ = x;
  }  // non-finite stays null
  return j;
}

Json Json::integer(long long i) {
  Json j;
  j.kind_ = Kind::Int;
  j.int_ = i;
  return j;
}

Json Json::text(std::string s) {
  Json j;
  j.kind_ = Kind::String;
  j.string_ = std::move(s);
  return j;
}

Json Json::array() {
  Json j;
  j.kind_ = Kind::Array;
  return j;
}

Json Json::object() {
  Json j;
  j.kind_ = Kind::Object;
  return j;
}

Json& Json::add(const std::string& key, Json value) {
  if (kind_ != Kind::Object) fail("Json: add() requires an object");
  fields_.emplace_back(key, std::move(value));
  return *this;
}

Json& Json::add(const std::string& key, double value) {
  return add(key, number(value));
}
Json& Json::add(const std::string& key, int value) {
  return add(key, integer(value));
}
Json& Json::add(const std::string& key, long long value) {
  return add(key, integer(value));
}
Json& Json::add(const std::string& key, bool value) {
  return add(key, boolean(value));
}
Json& Json::add(const std::string& key, const char* value) {
  return add(key, text(value));
}
Json& Json::add(const std::string& key, const std::string& value) {
  return add(key, text(value));
}

Json& Json::push(Json value) {
  if (kind_ != Kind::Array) fail("Json: push() requires an array");
  items_.push_back(std::move(value));
  return *this;
}

Json& Json::push(double value) { return push(number(value)); }
Json& Json::push(const std::string& value) { return push(text(value)); }

void Json::write(std::string& out, int depth) const {
  const std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
  const std::string inner(static_cast<std::size_t>(depth + 1) * 2, ' ');
  switch (kind_) {
    case Kind::Null: out += "null"; break;
    case Kind::Bool: out += bool_ ? "true" : "false"; break;
    case Kind::Int: {
      char buf[24];
      std::snprintf(buf, sizeof buf, "%lld", int_);
      out += buf;
      break;
    }
    case Kind::Double: out += format_double(double_); break;
    case Kind::String: append_escaped(out, string_); break;
    case Kind::Array:
      if (items_.empty()) {
        out += "[]";
        break;
      }
      out += "[\n";
      for (std::size_t i = 0; i < items_.size(); ++i) {
        out += inner;
        items_[i].write(out, depth + 1);
        if (i + 1 < items_.size()) out += ',';
        out += '\n';
      }
      out += pad;
      out += ']';
      break;
    case Kind::Object:
      if (fields_.empty()) {
        out += "{}";
        break;
      }
      out += "{\n";
      for (std::size_t i = 0; i < fields_.size(); ++i) {
        out += inner;
        append_escaped(out, fields_[i].first);
        out += ": ";
        fields_[i].second.write(out, depth + 1);
        if (i + 1 < fields_.size()) out += ',';
        out += '\n';
      }
      out += pad;
      out += '}';
      break;
  }
}

std::string Json::dump() const {
  std::string out;
  write(out, 0);
  out += '\n';
  return out;
}

Csv::Csv(std::vector<std::string> columns) : columns_(std::move(columns)) {}

void Csv::add_row(std::vector<std::string> cells) {
  if (cells.size() != columns_.size()) fail("Csv: row width does not match header");
  rows_.push_back(std::move(cells));
}

std::string Csv::dump() const {
  std::string out;
  for (std::size_t c = 0; c < columns_.size(); ++c) {
    if (c) out += ',';
    out += columns_[c];
  }
  out += '\n';
  for (const auto& row : rows_) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      out += row[c];
    }
    out += '\n';
  }
  return out;
}

}  // namespace lcs
