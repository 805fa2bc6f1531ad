#include "verdoorn/errors.hpp"

namespace verdoorn {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::SingularDesign: return "SingularDesign";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::InsufficientObservations: return "InsufficientObservations";
        case ErrorKind::ZeroResidualNorm: return "ZeroResidualNorm";
        case ErrorKind::InvalidDf: return "InvalidDf";
        case ErrorKind::InvalidLevels: return "InvalidLevels";
        case ErrorKind::MissingCell: return "MissingCell";
        case ErrorKind::ZeroDenominator: return "ZeroDenominator";
        case ErrorKind::InsufficientIntervals: return "InsufficientIntervals";
        case ErrorKind::UnbalancedPanel: return "UnbalancedPanel";
        case ErrorKind::UnknownGroup: return "UnknownGroup";
        case ErrorKind::WrongSpec: return "WrongSpec";
        case ErrorKind::InvalidConfig: return "InvalidConfig";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::ValidationFailed: return "ValidationFailed";
        case ErrorKind::IoError: return "IoError";
    }
    return "Unknown";
}

}  // namespace verdoorn
