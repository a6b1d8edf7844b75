#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace toeplitz {

enum class Errc {
    InvalidArgument,
    ParseError,
    AliasingRisk,
    UnitModulusRoot,
    RootFindFailure,
    UnbalancedWinding,
    DegeneratePoles,
    SingularMatrix,
    DimensionMismatch,
    NotHermitian,
    EigenFailure,
    LocalizationFailure,
    ExcludedLambda,
    NonUniqueMinimum,
    NotPositiveDefinite,
    PredictorRootOnCircle,
    NeumannCondition,
    SmallSystemSingular,
    WindowTooSmall,
    ApproxFailure,
};

std::string_view to_string(Errc code) noexcept;

/// Library-wide exception. `value()` carries the offending magnitude when one
/// exists (pivot size, operator norm, achieved approximation error, ...).
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what, double value = 0.0)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code), value_(value)
    {
    }

    Errc code() const noexcept { return code_; }
    double value() const noexcept { return value_; }

private:
    Errc code_;
    double value_;
};

} // namespace toeplitz
