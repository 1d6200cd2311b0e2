#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "okamoto/integrator.hpp"

namespace okamoto {

// Scaled variables: x = -2^{-3/5} 3^{-1/5} xi, xi = (5t/4)^{4/5},
// eta(xi) = xi^{1/2} pi1(t), eta'(xi) = xi^{3/4} pi2(t), with
//   pi1' = pi2 - 2 pi1/(5t),  pi2' = (pi1^2 - 1)/2 - 3 pi2/(5t).
struct ScaledState {
    cplx t{};
    cplx pi1{};
    cplx pi2{};
};

struct XState {
    cplx x{};
    cplx y{};
    cplx yprime{};
};

struct Equilibrium {
    int epsilon = 1;
    cplx u1{};
    cplx lambda_plus{};
    cplx lambda_minus{};
    cplx alpha{-0.5};
    cplx mu1_plus{-0.5};
    std::array<cplx, 2> c1_vec{cplx(0.2), cplx(-0.2)};
};

Equilibrium equilibrium(int epsilon);

// Principal branches throughout. t -> x -> t is the identity for t != 0;
// x -> t -> x is the identity when |arg xi| < 4 pi / 5.
ScaledState scaled_from_x(cplx x, cplx y, cplx yprime);
XState scaled_to_x(const ScaledState& s);

// (pi1, pi2) <-> (p+, p-): pi1 = 1 + p+ + p-, pi2 = p+ - p-.
std::array<cplx, 2> to_p(cplx pi1, cplx pi2);

// Coefficients of pi1 = 1 + sum a_j t^-j, pi2 = sum b_j t^-j from the formal
// recursion, j = 0..order (a_0 = 1, b_0 = 0).
struct SeriesCoeffs {
    std::vector<double> a;
    std::vector<double> b;
};
SeriesCoeffs series_coefficients(int order);

constexpr int series_max_order = 8;
// Frozen a_j, b_j for j <= series_max_order.
const SeriesCoeffs& frozen_series();

// Partial sum through t^-m, 0 <= m <= series_max_order.
ScaledState truncated_series(cplx t, int m);
// Partial sum stopped before the smallest term (coefficients regenerated up to
// max_order); used to seed the numeric tritronquee constructions.
ScaledState optimal_series(cplx t, int max_order = 80);

// Exact rationals (int64 with 128-bit intermediates).
struct Rational {
    long long num = 0;
    long long den = 1;
    Rational() = default;
    Rational(long long n, long long d = 1);
    double value() const { return double(num) / double(den); }
    std::string str() const;
};
Rational operator+(Rational a, Rational b);
Rational operator-(Rational a, Rational b);
Rational operator*(Rational a, Rational b);
Rational operator/(Rational a, Rational b);
bool operator==(Rational a, Rational b);

using RPoly = std::vector<Rational>;  // coefficient of xi^k at index k
RPoly rpoly_add(const RPoly& a, const RPoly& b);
RPoly rpoly_sub(const RPoly& a, const RPoly& b);
RPoly rpoly_mul(const RPoly& a, const RPoly& b);
RPoly rpoly_derivative(const RPoly& a);
Rational rpoly_eval(const RPoly& a, Rational x);

// P_{k,l}, k in {1, 2}, l in {0, 1}.
const RPoly& level_polynomial(int k, int l);

// pi_{k,l}(xi) = (xi - 12)^{-l-2-[k=2]} P_{k,l}(xi) and d/dxi.
struct PiLevel {
    cplx pi1{}, pi2{};
    cplx dpi1{}, dpi2{};
};
PiLevel pi_level(cplx xi, int l);

// pi_{912} = pi1/pi2 expanded in 1/t at fixed xi: level 0 = pi_{1,0}/pi_{2,0},
// level 1 = (pi_{1,1} pi_{2,0} - pi_{1,0} pi_{2,1}) / pi_{2,0}^2. Value and d/dxi.
std::pair<cplx, cplx> pi912_level(cplx xi, int l);

struct Pi912Exact {
    Rational value_at_12;
    Rational derivative_at_12;
    Rational level1_at_12;
    Rational c1;  // -level1 / derivative
};
Pi912Exact pi912_exact();

cplx tau_of(cplx t);  // e^{-t} t^{-1/2}

// sum_{l < m} t^{-l} pi_{k,l}(C tau(t)), m in {1, 2}.
ScaledState transitional_eval(cplx t, cplx C, int m);

// Root of e^{-t} t^alpha = tau near 2 pi i n + alpha log(2 pi i n) - log_tau.
cplx solve_tau_equation(cplx tau, cplx log_tau, int n, cplx alpha);
// Leading terms plus the s-series through total order `order` in (u, v), 0..3.
cplx tau_equation_series(cplx log_tau, int n, cplx alpha, int order);

struct PoleSequenceParams {
    cplx C{};
    int n_min = 1;
    int n_max = 20;
    std::array<double, 2> c_series{12.0, 109.0 / 10.0};
    int include_order = 1;
};

// Newton: root of sum_{l <= include_order} T^{-l} pi_{912,l}(C tau(T)) seeded by
// Fast. Fast: the closed form through O(n^-2). Relation: root of
// C tau(T) = sum_{j <= include_order} c_j T^{-j}.
enum class PoleMode { Newton, Fast, Relation };

std::vector<cplx> pole_sequence(const PoleSequenceParams& p, PoleMode mode = PoleMode::Newton);
cplx pole_fast(cplx C, int n);
cplx pole_newton(cplx T_seed, cplx C, int include_order = 1);
cplx pole_relation(cplx T_seed, cplx C, const std::array<double, 2>& c, int include_order = 1);
// |C tau(T) - 12 - (109/10)/T|
double pole_residual(cplx T, cplx C);
// Continues the Newton root while C turns once around 0 in `steps` steps.
cplx track_pole_around_C(cplx T, cplx C, int steps = 16);

cplx map_pole_to_x(cplx T);

// i sqrt(6/(5 pi)), as usually quoted.
cplx stokes_constant_printed();
// The same modulus with the sign produced by stokes_numeric (the negative of the
// printed value); this is the C whose predicted poles p_down actually has.
cplx stokes_constant();

// Scaled system as the Boutroux system (epsilon = 1): t = lambda+ z,
// u1 = A pi1, u2 = lambda+ A pi2, A = i/sqrt(6).
AtlasState scaled_to_atlas(const ScaledState& s);
ScaledState atlas_to_scaled(const AtlasState& a);
cplx t_to_z(cplx t);
cplx z_to_t(cplx z);
ScaledState integrate_scaled(const ScaledState& s, cplx t_end, const StepControl& ctl = {});

struct StokesEstimate {
    cplx t{};
    std::array<cplx, 2> scaled_difference{};  // e^t t^{1/2} (p_down - p_up)
};
// p_up and p_down seeded at t +- i sqrt(R^2 - t^2) and integrated to t.
StokesEstimate stokes_numeric(double t = 15.0, double seed_radius = 25.0);

struct TritronqueeOptions {
    cplx C = stokes_constant();
    int n_max = 30;
    double seed_radius = 25.0;
    double turn_radius = 6.0;
    StepControl ctl{1e-12, 1e-14};
};

struct TritronqueeRow {
    int n = 0;
    cplx fast{};
    cplx newton{};
    cplx located{};
    bool found = false;
    double residual = 0;  // pole_residual at the Newton prediction
};

struct TritronqueeResult {
    cplx C{};
    std::vector<TritronqueeRow> rows;
    std::vector<std::string> warnings;
};

// Poles of p_down (C = stokes_constant()): seeded at -R i, continued around the
// origin through the right half plane and up the imaginary axis, with a
// horizontal branch through each predicted pole.
TritronqueeResult tritronquee_poles(const TritronqueeOptions& opt = {});

// n, T (fast, Newton, located) and X images; NaN for poles not located.
std::string tritronquee_csv(const TritronqueeResult& r);
// n, Re T, Im T, Re X, Im X, residual.
std::string pole_prediction_csv(const std::vector<cplx>& T, cplx C, int n_min);

}  // namespace okamoto
