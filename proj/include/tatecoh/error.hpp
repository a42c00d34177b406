#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tatecoh {

enum class ErrorCode {
    InvalidDescriptor,
    RingMismatch,
    NoCanonicalMap,
    NonIntegralElement,
    NotAUnit,
    LaurentWindowOverflow,
    DegreeMismatch,
    NonzeroConstantTerm,
    NonUnitConstantTerm,
    NotDivisible,
    ZeroDivisorPivot,
    NonUnitBeta,
    NonIntegralCoefficient,
    PrecisionExhausted,
    BadOrbitOddMultiplicity,
    UnknownLocalization,
    NonStabilizingTower,
    InvalidTower,
    NonpositiveLength,
    DegenerationHypothesisFails,
    SlopeHitsOrbitLength,
    InconsistentPattern,
    MalformedCompletedModule,
    SchemaViolation,
    ParseError,
    Unsupported,
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

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

} // namespace tatecoh
