#include "toeplitz_spectra/error.hpp"

namespace toeplitz {

std::string_view to_string(Errc code) noexcept
{
    switch (code) {
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::ParseError: return "ParseError";
    case Errc::AliasingRisk: return "AliasingRisk";
    case Errc::UnitModulusRoot: return "UnitModulusRoot";
    case Errc::RootFindFailure: return "RootFindFailure";
    case Errc::UnbalancedWinding: return "UnbalancedWinding";
    case Errc::DegeneratePoles: return "DegeneratePoles";
    case Errc::SingularMatrix: return "SingularMatrix";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::NotHermitian: return "NotHermitian";
    case Errc::EigenFailure: return "EigenFailure";
    case Errc::LocalizationFailure: return "LocalizationFailure";
    case Errc::ExcludedLambda: return "ExcludedLambda";
    case Errc::NonUniqueMinimum: return "NonUniqueMinimum";
    case Errc::NotPositiveDefinite: return "NotPositiveDefinite";
    case Errc::PredictorRootOnCircle: return "PredictorRootOnCircle";
    case Errc::NeumannCondition: return "NeumannCondition";
    case Errc::SmallSystemSingular: return "SmallSystemSingular";
    case Errc::WindowTooSmall: return "WindowTooSmall";
    case Errc::ApproxFailure: return "ApproxFailure";
    }
    return "Unknown";
}

} // namespace toeplitz
