#pragma once

#include <stdexcept>
#include <string>

namespace schemata {

enum class ErrorCode {
  kInvalidAlphabet,
  kInvalidSymbol,
  kLengthMismatch,
  kBudgetExceeded,
  kNotAWord,
  kEmptySchema,
  kEmptyPopulation,
  kUndefined,
  kElementNotInLattice,
  kTooManyCutPoints,
  kNonBinaryWord,
  kNoInstances,
  kInvalidConfig,
};

const char* to_string(ErrorCode code) noexcept;

// All library failures are reported through this one exception type; the
// code distinguishes the contract that was violated.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace schemata
