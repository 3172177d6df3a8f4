#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ordterm {

enum class ErrorCode {
  InvalidArgument,
  ParseError,
  DomainTooLarge,
  OccupiedSlot,
  InvalidPath,
  LabelNotDecreasing,
  BudgetExceeded,
  NoRelation,
  NotHomogeneous,
  BranchNotInTree,
  EmptySequence,
  NoWitness,
  LemmaViolated,
  LengthMismatch,
  ArityMismatch,
  NameCollision,
  UnknownVariable,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ordterm
