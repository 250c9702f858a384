// Copyright 2026 the lcsurf authors. Licensed under the Apache License, Version 2.0.
#pragma once

#include <stdexcept>
#include <string>

namespace lcs {

/**
 * @brief Error thrown by lcsurf operations that fail on well-typed input
 * (degenerate pivots, order exhaustion, domain violations, parse errors, ...).
 *
 * Messages are complete sentences suitable for direct display; parse errors
 * additionally carry a "line:col" prefix.
 */
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

[[noreturn]] inline void fail(const std::string& msg) { throw Error(msg); }

}  // namespace lcs
