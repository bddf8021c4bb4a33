#pragma once

#include <stdexcept>
#include <string>

namespace movstab {

// Error taxonomy mirrors the three CLI failure classes:
//   SchemaError       -> malformed or inconsistent input data (exit 2)
//   PreconditionError -> a validly shaped request that violates an operation's
//                        contract (exit 3)
//   InvariantError    -> an internal consistency check failed; indicates a bug
//                        or inconsistent certified state (exit 4)
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class SchemaError : public Error {
public:
  explicit SchemaError(const std::string& what) : Error(what) {}
};

class PreconditionError : public Error {
public:
  explicit PreconditionError(const std::string& what) : Error(what) {}
};

class InvariantError : public Error {
public:
  explicit InvariantError(const std::string& what) : Error(what) {}
};

}  // namespace movstab
