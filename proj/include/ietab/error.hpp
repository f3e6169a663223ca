#pragma once

#include <stdexcept>
#include <string>

namespace ietab {

enum class ErrorKind {
  BadPolynomial,
  BadInterval,
  DivisionByZero,
  NotInLattice,
  NotDense,
  BudgetExceeded,
  MixedContexts,
  NotUnimodular,
  OutOfRange,
  Overlap,
  NotRepresentable,
  NotAssociated,
  NotInSAFKernel,
  NotOrientationPreserving,
  NotRepresentableOverS,
  KindMismatch,
  Parse,
  Internal,
};

const char* kind_name(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

// Iteration budget: IETABEL_BUDGET overrides `fallback` when set to a positive integer.
long budget_from_env(long fallback);

}  // namespace ietab
