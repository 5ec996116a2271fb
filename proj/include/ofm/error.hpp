#ifndef OFM_ERROR_HPP
#define OFM_ERROR_HPP

#include <stdexcept>
#include <string>

namespace ofm {

enum class ErrorKind {
  NotInvolution,
  HasFixedPoint,
  BadLength,
  NotAPermutation,
  OutOfRange,
  TooLarge,
  BudgetExhausted,
  ParityViolation,
  NoConvergence,
  Overflow,
  EmptyEnsemble,
  EmptySample,
  DegenerateSpectrum,
  MixedSizes,
  ParseError,
  IoError,
};

inline const char *to_string(ErrorKind kind) {
  switch (kind) {
  case ErrorKind::NotInvolution: return "NotInvolution";
  case ErrorKind::HasFixedPoint: return "HasFixedPoint";
  case ErrorKind::BadLength: return "BadLength";
  case ErrorKind::NotAPermutation: return "NotAPermutation";
  case ErrorKind::OutOfRange: return "OutOfRange";
  case ErrorKind::TooLarge: return "TooLarge";
  case ErrorKind::BudgetExhausted: return "BudgetExhausted";
  case ErrorKind::ParityViolation: return "ParityViolation";
  case ErrorKind::NoConvergence: return "NoConvergence";
  case ErrorKind::Overflow: return "Overflow";
  case ErrorKind::EmptyEnsemble: return "EmptyEnsemble";
  case ErrorKind::EmptySample: return "EmptySample";
  case ErrorKind::DegenerateSpectrum: return "DegenerateSpectrum";
  case ErrorKind::MixedSizes: return "MixedSizes";
  case ErrorKind::ParseError: return "ParseError";
  case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a machine-checkable kind.
class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string &what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

} // namespace ofm

#endif // OFM_ERROR_HPP
