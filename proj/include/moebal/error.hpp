// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The moebal Authors

#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace moebal {

enum class ErrorCode {
  kInvalidArgument,
  kDimensionMismatch,
  kPrecondition,
  kTooLarge,
  kParse,
  kIo,
};

const char* to_string(ErrorCode code);

/// Structured error raised by every module. `line` is set for parse errors
/// that can be pinned to a 1-based input line.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what,
        std::optional<std::size_t> line = std::nullopt);

  ErrorCode code() const noexcept { return code_; }
  std::optional<std::size_t> line() const noexcept { return line_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> line_;
};

}  // namespace moebal
