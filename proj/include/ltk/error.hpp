#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ltk {

enum class ErrorKind {
    InvalidArgument,
    RingMismatch,
    NotEmbedding,
    WindowOverflow,
    NotUnit,
    PrecisionInsufficient,
    OutOfRange,
    NoRoot,
    PrecisionGuardExceeded,
    ValuationTooLow,
    HeightExceedsPrecision,
    NonPPowerLeadingTerm,
    NotNormalForm,
    NormalizationObstructed,
    UnsupportedMap,
    NoLift,
    NotTopologicallyNilpotent,
    NotFrobeniusLift,
    GuardDigitMissing,
    DerivationMismatch,
    BadShape,
    EtaleFailure,
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool cond, ErrorKind kind, const std::string& what) {
    if (!cond) fail(kind, what);
}

}  // namespace ltk
