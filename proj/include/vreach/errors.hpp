#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace vreach {

// Every error names the module and operation it came from, e.g.
// "skeleton.identify_edges: LP iteration limit reached".
class Error : public std::runtime_error {
 public:
  Error(const std::string& where, const std::string& what)
      : std::runtime_error(where + ": " + what), where_(where) {}
  const std::string& where() const noexcept { return where_; }

 private:
  std::string where_;
};

// Dimension mismatches and broken preconditions.
class ContractViolation : public Error {
 public:
  using Error::Error;
};

// The LP oracle could not reach a verdict. Never mapped to "infeasible".
class SolverFailure : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& where, std::size_t line, const std::string& what)
      : Error(where, "line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Expansion cap, branch cap, corner-count guard.
class LimitExceeded : public Error {
 public:
  using Error::Error;
};

// Thrown at cooperative cancellation points; the drivers turn it into a
// partial result.
class Cancelled : public Error {
 public:
  Cancelled() : Error("reach", "cancelled") {}
};

}  // namespace vreach
