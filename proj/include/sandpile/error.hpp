#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace sandpile {

// Input violates an operation's precondition.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

// An enumeration would exceed its configured size cap.
class CapExceeded : public std::runtime_error {
 public:
  explicit CapExceeded(const std::string& what) : std::runtime_error(what) {}
};

struct Caps {
  std::int64_t max_order = 1'000'000;
  std::int64_t max_box = 1'000'000;
  std::int64_t max_candidates = 5'000'000;
  int max_mixed_dim = 8;
  int threads = 1;
};

}  // namespace sandpile
