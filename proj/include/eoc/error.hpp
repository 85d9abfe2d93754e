#pragma once

#include <stdexcept>
#include <string>

namespace eoc {

/// Bad caller input: sizes, ranges, malformed parameters.
struct ValidationError : std::runtime_error {
  explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

/// File or stream trouble.
struct IoError : std::runtime_error {
  explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A broken internal invariant; indicates a bug, not bad input.
struct InternalError : std::logic_error {
  explicit InternalError(const std::string& msg) : std::logic_error(msg) {}
};

/// A verification pass found a violated bound or mismatched semantics.
struct VerifyError : std::runtime_error {
  explicit VerifyError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace eoc
