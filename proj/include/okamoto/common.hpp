#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace okamoto {

using cplx = std::complex<double>;

enum class ErrorCode {
    InvalidChart,
    DenominatorVanishes,
    OutsideChartDomain,
    FieldInfinite,
    EnergyInfinite,
    NotNearInfinitySet,
    NoValidChart,
    ApproachedInfinitySet,
    StepLimitExceeded,
    StepUnderflow,
    NewtonDiverged,
    ZetaZero,
    AtPole,
    BranchCut,
    OrderUnavailable,
    AtSingularXi,
    SeedInvalid,
    CZero,
    QTooSmall,
    SingularLevel,
    QuadratureFailed,
    AtLatticePoint,
    ConfigError,
};

const char* error_name(ErrorCode c);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

inline bool finite(cplx x) { return std::isfinite(x.real()) && std::isfinite(x.imag()); }

constexpr double pi = 3.14159265358979323846;

}  // namespace okamoto
