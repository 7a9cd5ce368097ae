#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace psl {

// Thrown when a table or bitmap would not fit in the configured memory
// budget.  The message always names both byte counts.
class capacity_error : public std::runtime_error {
public:
  capacity_error(const std::string& what_arg, uint64_t required, uint64_t allowed)
      : std::runtime_error(what_arg + ": requires " + std::to_string(required) +
                           " bytes, memory budget allows " + std::to_string(allowed) +
                           " bytes"),
        required_bytes(required),
        allowed_bytes(allowed) {}

  uint64_t required_bytes;
  uint64_t allowed_bytes;
};

// Malformed experiment config (JSON schema violation); the message names
// the offending field.
class parse_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Failed file read/write for table containers.
class io_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace psl
