#include "okamoto/common.hpp"

namespace okamoto {

const char* error_name(ErrorCode c)
{
    switch (c) {
    case ErrorCode::InvalidChart: return "InvalidChart";
    case ErrorCode::DenominatorVanishes: return "DenominatorVanishes";
    case ErrorCode::OutsideChartDomain: return "OutsideChartDomain";
    case ErrorCode::FieldInfinite: return "FieldInfinite";
    case ErrorCode::EnergyInfinite: return "EnergyInfinite";
    case ErrorCode::NotNearInfinitySet: return "NotNearInfinitySet";
    case ErrorCode::NoValidChart: return "NoValidChart";
    case ErrorCode::ApproachedInfinitySet: return "ApproachedInfinitySet";
    case ErrorCode::StepLimitExceeded: return "StepLimitExceeded";
    case ErrorCode::StepUnderflow: return "StepUnderflow";
    case ErrorCode::NewtonDiverged: return "NewtonDiverged";
    case ErrorCode::ZetaZero: return "ZetaZero";
    case ErrorCode::AtPole: return "AtPole";
    case ErrorCode::BranchCut: return "BranchCut";
    case ErrorCode::OrderUnavailable: return "OrderUnavailable";
    case ErrorCode::AtSingularXi: return "AtSingularXi";
    case ErrorCode::SeedInvalid: return "SeedInvalid";
    case ErrorCode::CZero: return "CZero";
    case ErrorCode::QTooSmall: return "QTooSmall";
    case ErrorCode::SingularLevel: return "SingularLevel";
    case ErrorCode::QuadratureFailed: return "QuadratureFailed";
    case ErrorCode::AtLatticePoint: return "AtLatticePoint";
    case ErrorCode::ConfigError: return "ConfigError";
    }
    return "Unknown";
}

}  // namespace okamoto
