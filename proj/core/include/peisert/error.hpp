#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace peisert {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller supplied something outside an operation's preconditions.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A runtime verification of a mathematical claim failed. Seeing this means
/// a construction is wrong, not that the input was bad.
class InternalInconsistency : public Error {
 public:
  using Error::Error;
};

/// A search ran past its configured node budget. Carries how far it got so
/// callers can report partial progress instead of silently truncating.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(const std::string& what, std::uint64_t nodes, std::uint64_t found)
      : Error(what), nodes_(nodes), found_(found) {}

  std::uint64_t nodes_visited() const { return nodes_; }
  std::uint64_t results_so_far() const { return found_; }

 private:
  std::uint64_t nodes_;
  std::uint64_t found_;
};

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw InvalidArgument(msg);
}

inline void verify(bool cond, const std::string& msg) {
  if (!cond) throw InternalInconsistency(msg);
}

}  // namespace peisert
