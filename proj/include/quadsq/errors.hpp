#pragma once

#include <stdexcept>
#include <string>

namespace quadsq {

// Precondition violations / inputs outside an operation's domain.
class DomainError : public std::runtime_error {
 public:
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// A local-solvability search exhausted its precision budget without a
// certificate either way. Deliberately loud: never coerced to a boolean.
class UndecidedError : public std::runtime_error {
 public:
  explicit UndecidedError(const std::string& what) : std::runtime_error(what) {}
};

// An internal invariant that should be unreachable was violated (a bug, or a
// violated mathematical claim the code relies on). Fail loud.
class CheckError : public std::logic_error {
 public:
  explicit CheckError(const std::string& what) : std::logic_error(what) {}
};

inline void check(bool cond, const char* msg) {
  if (!cond) throw CheckError(msg);
}

}  // namespace quadsq
