#include "ltk/error.hpp"

namespace ltk {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::RingMismatch: return "RingMismatch";
        case ErrorKind::NotEmbedding: return "NotEmbedding";
        case ErrorKind::WindowOverflow: return "WindowOverflow";
        case ErrorKind::NotUnit: return "NotUnit";
        case ErrorKind::PrecisionInsufficient: return "PrecisionInsufficient";
        case ErrorKind::OutOfRange: return "OutOfRange";
        case ErrorKind::NoRoot: return "NoRoot";
        case ErrorKind::PrecisionGuardExceeded: return "PrecisionGuardExceeded";
        case ErrorKind::ValuationTooLow: return "ValuationTooLow";
        case ErrorKind::HeightExceedsPrecision: return "HeightExceedsPrecision";
        case ErrorKind::NonPPowerLeadingTerm: return "NonPPowerLeadingTerm";
        case ErrorKind::NotNormalForm: return "NotNormalForm";
        case ErrorKind::NormalizationObstructed: return "NormalizationObstructed";
        case ErrorKind::UnsupportedMap: return "UnsupportedMap";
        case ErrorKind::NoLift: return "NoLift";
        case ErrorKind::NotTopologicallyNilpotent: return "NotTopologicallyNilpotent";
        case ErrorKind::NotFrobeniusLift: return "NotFrobeniusLift";
        case ErrorKind::GuardDigitMissing: return "GuardDigitMissing";
        case ErrorKind::DerivationMismatch: return "DerivationMismatch";
        case ErrorKind::BadShape: return "BadShape";
        case ErrorKind::EtaleFailure: return "EtaleFailure";
    }
    return "Unknown";
}

}  // namespace ltk
