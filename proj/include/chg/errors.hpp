#pragma once

#include <stdexcept>
#include <string>

namespace chg {

enum class ErrorCode {
    IsotropicVector,
    DegenerateTau,
    SamePoint,
    EuclideanLine,
    IncompatibleInertia,
    ZeroDiagonal,
    NotRegular,
    NotConjugate,
    NotTwoReflectionProduct,
    SignChange,
    StepTooLarge,
    EqualPoints,
    OrthogonalPoints,
    EuclideanGeodesic,
    NotOnGeodesic,
    ExceptionalCase,
    NotStronglyRegular,
    InadmissibleCoords,
    TraceMinusOne,
    Unreachable,
    IncompatibleInvariants,
    IncompatibleSigns,
    OnRamification,
    LeavesAdmissibleRegion,
    NotAPentagon,
    InadmissibleModuli,
    DifferentDelta,
    InvalidInput
};

inline const char* error_name(ErrorCode c)
{
    switch (c) {
    case ErrorCode::IsotropicVector: return "IsotropicVector";
    case ErrorCode::DegenerateTau: return "DegenerateTau";
    case ErrorCode::SamePoint: return "SamePoint";
    case ErrorCode::EuclideanLine: return "EuclideanLine";
    case ErrorCode::IncompatibleInertia: return "IncompatibleInertia";
    case ErrorCode::ZeroDiagonal: return "ZeroDiagonal";
    case ErrorCode::NotRegular: return "NotRegular";
    case ErrorCode::NotConjugate: return "NotConjugate";
    case ErrorCode::NotTwoReflectionProduct: return "NotTwoReflectionProduct";
    case ErrorCode::SignChange: return "SignChange";
    case ErrorCode::StepTooLarge: return "StepTooLarge";
    case ErrorCode::EqualPoints: return "EqualPoints";
    case ErrorCode::OrthogonalPoints: return "OrthogonalPoints";
    case ErrorCode::EuclideanGeodesic: return "EuclideanGeodesic";
    case ErrorCode::NotOnGeodesic: return "NotOnGeodesic";
    case ErrorCode::ExceptionalCase: return "ExceptionalCase";
    case ErrorCode::NotStronglyRegular: return "NotStronglyRegular";
    case ErrorCode::InadmissibleCoords: return "InadmissibleCoords";
    case ErrorCode::TraceMinusOne: return "TraceMinusOne";
    case ErrorCode::Unreachable: return "Unreachable";
    case ErrorCode::IncompatibleInvariants: return "IncompatibleInvariants";
    case ErrorCode::IncompatibleSigns: return "IncompatibleSigns";
    case ErrorCode::OnRamification: return "OnRamification";
    case ErrorCode::LeavesAdmissibleRegion: return "LeavesAdmissibleRegion";
    case ErrorCode::NotAPentagon: return "NotAPentagon";
    case ErrorCode::InadmissibleModuli: return "InadmissibleModuli";
    case ErrorCode::DifferentDelta: return "DifferentDelta";
    case ErrorCode::InvalidInput: return "InvalidInput";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode c, const std::string& detail = {})
        : std::runtime_error(detail.empty() ? std::string(error_name(c))
                                            : std::string(error_name(c)) + ": " + detail),
          code_(c)
    {
    }
    ErrorCode code() const noexcept { return code_; }
    const char* name() const noexcept { return error_name(code_); }

private:
    ErrorCode code_;
};

} // namespace chg
