#pragma once

#include <array>
#include <string>
#include <vector>

#include "okamoto/integrator.hpp"

namespace okamoto {

// Coefficients of u(z) = sum_{n=-2}^{4} c_n (z - zeta)^n; c[n + 2] holds c_n.
struct LaurentCoeffs {
    std::array<cplx, 7> c{};
    cplx operator[](int n) const { return c[static_cast<std::size_t>(n + 2)]; }
};

LaurentCoeffs laurent_coeffs(cplx zeta, cplx a);
// Partial sum through (z - zeta)^order, order in [-2, 4].
cplx laurent_eval(cplx zeta, cplx a, cplx z, int order = 4);
// min(0.5, |zeta| / 10).
double laurent_trust_radius(cplx zeta);

// E = 4/(5 zeta) (z - zeta)^-1 + a/128 - 22/(25 zeta^2), remainder dropped.
cplx energy_near_pole(cplx zeta, cplx a, cplx z);

// Solution through the pole (zeta, a), integrated in C91 from (a, 0) in
// binary128 by Gragg-Bulirsch-Stoer extrapolation.
struct PoleOracleSample {
    cplx z{};
    cplx u1{};
    cplx u2{};
    cplx E{};
    ChartPoint c91;
};
PoleOracleSample pole_oracle(cplx zeta, cplx a, cplx z);

// Same, returning the (z - zeta) E product and u1 - laurent partial sum with the
// subtraction done in binary128.
struct PoleOracleResidual {
    cplx laurent_error{};
    cplx residue_product{};  // (z - zeta) E(z)
    cplx energy_constant{};  // E(z) - 4/(5 zeta)/(z - zeta)
};
PoleOracleResidual pole_oracle_residual(cplx zeta, cplx a, cplx z, int order = 4);

struct Rect {
    cplx lo{};  // lower-left corner
    cplx hi{};  // upper-right corner
    bool empty() const { return !(hi.real() > lo.real() && hi.imag() > lo.imag()); }
    bool contains(cplx z) const {
        return z.real() >= lo.real() && z.real() <= hi.real() && z.imag() >= lo.imag() && z.imag() <= hi.imag();
    }
};

enum class CoverStrategy { RayFan, Boustrophedon };

struct PoleFieldOptions {
    CoverStrategy strategy = CoverStrategy::RayFan;
    int rays = 32;
    int rows = 16;  // boustrophedon passes
    double dedup_radius = 1e-6;
    int threads = 1;
    StepControl ctl;
};

struct PoleFieldResult {
    std::vector<PoleEvent> events;  // sorted by Re zeta, then Im zeta
    std::vector<std::string> warnings;
};

PoleFieldResult pole_field(const AtlasState& seed, const Rect& region, const PoleFieldOptions& opt = {});

// Distance from each pole to its nearest neighbour.
std::vector<double> nearest_neighbor_spacings(const std::vector<PoleEvent>& events);
std::string spacing_histogram_json(const std::vector<double>& spacings, int bins = 20);
std::string pole_field_csv(const std::vector<PoleEvent>& events);

}  // namespace okamoto
