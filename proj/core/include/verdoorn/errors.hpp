#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace verdoorn {

enum class ErrorKind {
    SingularDesign,
    DimensionMismatch,
    InsufficientObservations,
    ZeroResidualNorm,
    InvalidDf,
    InvalidLevels,
    MissingCell,
    ZeroDenominator,
    InsufficientIntervals,
    UnbalancedPanel,
    UnknownGroup,
    WrongSpec,
    InvalidConfig,
    ParseError,
    ValidationFailed,
    IoError,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries one of the kinds above so
/// callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace verdoorn
