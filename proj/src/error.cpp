#include "ietab/error.hpp"

#include <cstdlib>
#include <string>

namespace ietab {

const char* kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::BadPolynomial: return "BadPolynomial";
    case ErrorKind::BadInterval: return "BadInterval";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::NotInLattice: return "NotInLattice";
    case ErrorKind::NotDense: return "NotDense";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::MixedContexts: return "MixedContexts";
    case ErrorKind::NotUnimodular: return "NotUnimodular";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::Overlap: return "Overlap";
    case ErrorKind::NotRepresentable: return "NotRepresentable";
    case ErrorKind::NotAssociated: return "NotAssociated";
    case ErrorKind::NotInSAFKernel: return "NotInSAFKernel";
    case ErrorKind::NotOrientationPreserving: return "NotOrientationPreserving";
    case ErrorKind::NotRepresentableOverS: return "NotRepresentableOverS";
    case ErrorKind::KindMismatch: return "KindMismatch";
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::Internal: return "Internal";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(kind_name(kind)) + ": " + what), kind_(kind) {}

void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

long budget_from_env(long fallback) {
  const char* s = std::getenv("IETABEL_BUDGET");
  if (!s || !*s) return fallback;
  char* end = nullptr;
  long v = std::strtol(s, &end, 10);
  if (end == s || *end != '\0' || v <= 0) return fallback;
  return v;
}

}  // namespace ietab
