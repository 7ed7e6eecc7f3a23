#pragma once

#include <stdexcept>
#include <string>

namespace polarfade {

// Bad user input: wrong sizes, invalid flags, malformed config. CLI exit code 1.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

// A verification suite found a failing check. CLI exit code 2.
class VerificationFailure : public std::runtime_error {
 public:
  explicit VerificationFailure(const std::string& what) : std::runtime_error(what) {}
};

// Internal consistency tripwire: exact arithmetic produced a negative count,
// a non-exact power-of-two division, or a total that does not match the
// codebook size. Never recoverable. CLI exit code 3.
class TripwireError : public std::logic_error {
 public:
  explicit TripwireError(const std::string& what) : std::logic_error(what) {}
};

// Cache file problems: bad magic, version mismatch, checksum failure.
class CacheError : public std::runtime_error {
 public:
  explicit CacheError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace polarfade
