#pragma once

#include <stdexcept>
#include <string>

namespace tnn {

enum class Errc {
  // usage / parse level
  Parse,
  SizeMismatch,
  IndexOutOfRange,
  RankTooLarge,
  // mathematical preconditions
  NotComparable,
  NotInG0,
  NotInG0u,
  NotUnipotentUpper,
  NonPositiveParameter,
  LengthMismatch,
  Singular,
  CellMismatch,
  NonPositiveTau,
  ZNotInYgeqV,
  // integrator
  StepUnderflow,
  StratumEscape,
  MaxStepsExceeded,
  // a step that cannot fail on valid input failed; this is a bug
  InternalInvariant,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::Parse: return "Parse";
    case Errc::SizeMismatch: return "SizeMismatch";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::RankTooLarge: return "RankTooLarge";
    case Errc::NotComparable: return "NotComparable";
    case Errc::NotInG0: return "NotInG0";
    case Errc::NotInG0u: return "NotInG0u";
    case Errc::NotUnipotentUpper: return "NotUnipotentUpper";
    case Errc::NonPositiveParameter: return "NonPositiveParameter";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::Singular: return "Singular";
    case Errc::CellMismatch: return "CellMismatch";
    case Errc::NonPositiveTau: return "NonPositiveTau";
    case Errc::ZNotInYgeqV: return "ZNotInYgeqV";
    case Errc::StepUnderflow: return "StepUnderflow";
    case Errc::StratumEscape: return "StratumEscape";
    case Errc::MaxStepsExceeded: return "MaxStepsExceeded";
    case Errc::InternalInvariant: return "InternalInvariant";
  }
  return "Unknown";
}

/// True for errors caused by malformed input rather than by mathematics.
inline bool is_usage_error(Errc c) {
  return c == Errc::Parse || c == Errc::SizeMismatch ||
         c == Errc::IndexOutOfRange || c == Errc::RankTooLarge;
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what),
        code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace tnn
