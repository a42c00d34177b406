#include "tatecoh/error.hpp"

namespace tatecoh {

std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::InvalidDescriptor: return "InvalidDescriptor";
    case ErrorCode::RingMismatch: return "RingMismatch";
    case ErrorCode::NoCanonicalMap: return "NoCanonicalMap";
    case ErrorCode::NonIntegralElement: return "NonIntegralElement";
    case ErrorCode::NotAUnit: return "NotAUnit";
    case ErrorCode::LaurentWindowOverflow: return "LaurentWindowOverflow";
    case ErrorCode::DegreeMismatch: return "DegreeMismatch";
    case ErrorCode::NonzeroConstantTerm: return "NonzeroConstantTerm";
    case ErrorCode::NonUnitConstantTerm: return "NonUnitConstantTerm";
    case ErrorCode::NotDivisible: return "NotDivisible";
    case ErrorCode::ZeroDivisorPivot: return "ZeroDivisorPivot";
    case ErrorCode::NonUnitBeta: return "NonUnitBeta";
    case ErrorCode::NonIntegralCoefficient: return "NonIntegralCoefficient";
    case ErrorCode::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorCode::BadOrbitOddMultiplicity: return "BadOrbitOddMultiplicity";
    case ErrorCode::UnknownLocalization: return "UnknownLocalization";
    case ErrorCode::NonStabilizingTower: return "NonStabilizingTower";
    case ErrorCode::InvalidTower: return "InvalidTower";
    case ErrorCode::NonpositiveLength: return "NonpositiveLength";
    case ErrorCode::DegenerationHypothesisFails: return "DegenerationHypothesisFails";
    case ErrorCode::SlopeHitsOrbitLength: return "SlopeHitsOrbitLength";
    case ErrorCode::InconsistentPattern: return "InconsistentPattern";
    case ErrorCode::MalformedCompletedModule: return "MalformedCompletedModule";
    case ErrorCode::SchemaViolation: return "SchemaViolation";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::Unsupported: return "Unsupported";
    }
    return "Unknown";
}

} // namespace tatecoh
