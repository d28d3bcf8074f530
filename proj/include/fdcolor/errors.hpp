#pragma once

#include <stdexcept>
#include <string>

namespace fdcolor {

// Malformed or out-of-range input (maps to CLI exit code 2).
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// A configured size cap would be exceeded (maps to CLI exit code 4).
class CapExceeded : public std::runtime_error {
 public:
  explicit CapExceeded(const std::string& what) : std::runtime_error(what) {}
};

// An internal invariant failed to hold; always an implementation bug
// (maps to CLI exit code 3).
class InvariantBreach : public std::logic_error {
 public:
  explicit InvariantBreach(const std::string& what) : std::logic_error(what) {}
};

}  // namespace fdcolor
