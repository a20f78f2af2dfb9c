#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mvop {

enum class ErrorKind {
    SingularMatrix,
    IncommensurableUnits,
    DimensionMismatch,
    NonPolynomialAdjoint,
    NotInBoundedDegreeClass,
    UnsupportedWeight,
    SingularHankel,
    MixedFamilies,
    NotRepresentable,
    SingularEigenvalue,
    ParameterConstraintViolated,
    NotDecomposable,
    InvalidArgument,
    ParseError,
};

constexpr std::string_view to_string(ErrorKind k)
{
    switch (k) {
    case ErrorKind::SingularMatrix: return "SingularMatrix";
    case ErrorKind::IncommensurableUnits: return "IncommensurableUnits";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NonPolynomialAdjoint: return "NonPolynomialAdjoint";
    case ErrorKind::NotInBoundedDegreeClass: return "NotInBoundedDegreeClass";
    case ErrorKind::UnsupportedWeight: return "UnsupportedWeight";
    case ErrorKind::SingularHankel: return "SingularHankel";
    case ErrorKind::MixedFamilies: return "MixedFamilies";
    case ErrorKind::NotRepresentable: return "NotRepresentable";
    case ErrorKind::SingularEigenvalue: return "SingularEigenvalue";
    case ErrorKind::ParameterConstraintViolated: return "ParameterConstraintViolated";
    case ErrorKind::NotDecomposable: return "NotDecomposable";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ParseError: return "ParseError";
    }
    return "Unknown";
}

/// Every failure raised by the library carries one of the kinds above.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind)
    {
    }

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

} // namespace mvop
