#include "olp/error.hpp"

namespace olp {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::ZeroConstantTerm: return "ZeroConstantTerm";
        case ErrorCode::EvalAtZero: return "EvalAtZero";
        case ErrorCode::InvalidParams: return "InvalidParams";
        case ErrorCode::NonzeroCoefficientViolated: return "NonzeroCoefficientViolated";
        case ErrorCode::UnsupportedFamily: return "UnsupportedFamily";
        case ErrorCode::InsufficientOrder: return "InsufficientOrder";
        case ErrorCode::ZeroCoefficient: return "ZeroCoefficient";
        case ErrorCode::MissingCoefficients: return "MissingCoefficients";
        case ErrorCode::WindowExceeded: return "WindowExceeded";
        case ErrorCode::RadiusInvalid: return "RadiusInvalid";
        case ErrorCode::NearZeroDenominator: return "NearZeroDenominator";
        case ErrorCode::TailNotNegligible: return "TailNotNegligible";
        case ErrorCode::DomainViolation: return "DomainViolation";
        case ErrorCode::PoleProximity: return "PoleProximity";
        case ErrorCode::DegenerateLeadingCoefficient: return "DegenerateLeadingCoefficient";
        case ErrorCode::PivotVanished: return "PivotVanished";
        case ErrorCode::RepresentationCondFailed: return "RepresentationCondFailed";
        case ErrorCode::ConfigError: return "ConfigError";
    }
    return "Unknown";
}

}  // namespace olp
