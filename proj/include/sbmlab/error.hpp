/*
 * (C) Copyright 2026 The sbmlab Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <stdexcept>
#include <string>

namespace sbmlab {

// Numeric values double as CLI exit codes and C API status codes.
enum class ErrorCode : int {
  InvalidInput = 2,
  NotConverged = 3,
  Io = 4,
  NoRoot = 5,
  Precondition = 6,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void throw_invalid(const std::string& what) {
  throw Error(ErrorCode::InvalidInput, what);
}

inline void require(bool cond, const std::string& what) {
  if (!cond) throw_invalid(what);
}

}  // namespace sbmlab
