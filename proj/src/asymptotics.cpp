#include "okamoto/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>

namespace okamoto {

namespace {

const cplx I(0.0, 1.0);

// x = -kx xi, y = ky eta.
const double kx = std::pow(2.0, -0.6) * std::pow(3.0, -0.2);
const double ky = std::pow(2.0, -0.8) * std::pow(3.0, -0.6);

cplx cpow(cplx z, double p) { return std::exp(p * std::log(z)); }

cplx log_2piin(int n) { return cplx(std::log(2 * pi * std::abs(n)), n > 0 ? pi / 2 : -pi / 2); }

}  // namespace

Equilibrium equilibrium(int epsilon) {
    if (epsilon != 1 && epsilon != -1) throw Error(ErrorCode::ConfigError, "epsilon must be +-1");
    Equilibrium e;
    e.epsilon = epsilon;
    e.u1 = double(epsilon) * I / std::sqrt(6.0);
    e.lambda_plus = std::pow(24.0, 0.25) * std::exp(I * pi * (0.5 - epsilon / 4.0));
    e.lambda_minus = -e.lambda_plus;
    return e;
}

ScaledState scaled_from_x(cplx x, cplx y, cplx yprime) {
    if (x == cplx(0.0)) throw Error(ErrorCode::BranchCut, "x = 0");
    const cplx xi = -x / kx;
    if (xi.imag() == 0.0 && xi.real() < 0) throw Error(ErrorCode::BranchCut, "xi on the negative real axis");
    const cplx eta = y / ky;
    const cplx deta = -yprime * kx / ky;  // d eta / d xi
    const cplx lx = std::log(xi);
    return {0.8 * std::exp(1.25 * lx), eta * std::exp(-0.5 * lx), deta * std::exp(-0.75 * lx)};
}

XState scaled_to_x(const ScaledState& s) {
    if (s.t == cplx(0.0)) throw Error(ErrorCode::BranchCut, "t = 0");
    const cplx lx = 0.8 * std::log(1.25 * s.t);
    const cplx xi = std::exp(lx);
    const cplx eta = std::exp(0.5 * lx) * s.pi1;
    const cplx deta = std::exp(0.75 * lx) * s.pi2;
    return {-kx * xi, ky * eta, -deta * ky / kx};
}

std::array<cplx, 2> to_p(cplx pi1, cplx pi2) { return {0.5 * (pi1 - 1.0 + pi2), 0.5 * (pi1 - 1.0 - pi2)}; }

SeriesCoeffs series_coefficients(int order) {
    if (order < 0) throw Error(ErrorCode::OrderUnavailable, "negative order");
    SeriesCoeffs c;
    c.a.assign(static_cast<std::size_t>(order) + 1, 0.0);
    c.b.assign(static_cast<std::size_t>(order) + 1, 0.0);
    c.a[0] = 1;
    // t^-k coefficients of pi1' = pi2 - (2/5) pi1/t and pi2' = (pi1^2-1)/2 - (3/5) pi2/t.
    for (int k = 1; k <= order; ++k) {
        const auto K = static_cast<std::size_t>(k);
        c.b[K] = (1.4 - k) * c.a[K - 1];
        double conv = 0;
        for (int i = 1; i < k; ++i) conv += c.a[static_cast<std::size_t>(i)] * c.a[static_cast<std::size_t>(k - i)];
        c.a[K] = (1.6 - k) * c.b[K - 1] - 0.5 * conv;
    }
    return c;
}

const SeriesCoeffs& frozen_series() {
    static const SeriesCoeffs c{
        {1.0, 0.0, -4.0 / 25, 0.0, -392.0 / 625, 0.0, -6272.0 / 625, 0.0, -141196832.0 / 390625},
        {0.0, 2.0 / 5, 0.0, 32.0 / 125, 0.0, 7056.0 / 3125, 0.0, 175616.0 / 3125, 0.0}};
    return c;
}

ScaledState truncated_series(cplx t, int m) {
    if (m < 0 || m > series_max_order) throw Error(ErrorCode::OrderUnavailable, "series order outside [0, 8]");
    if (t == cplx(0.0)) throw Error(ErrorCode::ConfigError, "t = 0");
    const SeriesCoeffs& c = frozen_series();
    const cplx it = 1.0 / t;
    cplx p1 = 0, p2 = 0;
    for (int j = m; j >= 0; --j) {
        p1 = p1 * it + c.a[static_cast<std::size_t>(j)];
        p2 = p2 * it + c.b[static_cast<std::size_t>(j)];
    }
    return {t, p1, p2};
}

ScaledState optimal_series(cplx t, int max_order) {
    if (t == cplx(0.0)) throw Error(ErrorCode::ConfigError, "t = 0");
    const SeriesCoeffs c = series_coefficients(max_order);
    const cplx it = 1.0 / t;
    cplx p1 = 1.0, p2 = 0.0, pw = 1.0;
    double last = std::numeric_limits<double>::infinity();
    for (int j = 1; j <= max_order; j += 2) {
        // Terms alternate between pi2 (odd j) and pi1 (even j); compare pairs.
        const cplx t1 = c.b[static_cast<std::size_t>(j)] * pw * it;
        const cplx t2 = j + 1 <= max_order ? c.a[static_cast<std::size_t>(j + 1)] * pw * it * it : 0.0;
        const double size = std::abs(t1) + std::abs(t2);
        if (size > last) break;
        last = size;
        p2 += t1;
        p1 += t2;
        pw *= it * it;
    }
    return {t, p1, p2};
}

// ---- rationals ----

namespace {

long long checked(__int128 v) {
    if (v > std::numeric_limits<long long>::max() || v < std::numeric_limits<long long>::min())
        throw Error(ErrorCode::ConfigError, "rational overflow");
    return static_cast<long long>(v);
}

Rational make(__int128 n, __int128 d) {
    if (d == 0) throw Error(ErrorCode::ConfigError, "rational division by zero");
    if (d < 0) n = -n, d = -d;
    __int128 a = n < 0 ? -n : n, b = d;
    while (b) {
        const __int128 r = a % b;
        a = b;
        b = r;
    }
    if (a > 1) n /= a, d /= a;
    Rational r;
    r.num = checked(n);
    r.den = checked(d);
    return r;
}

}  // namespace

Rational::Rational(long long n, long long d) { *this = make(n, d); }

std::string Rational::str() const { return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den); }

Rational operator+(Rational a, Rational b) {
    return make(__int128(a.num) * b.den + __int128(b.num) * a.den, __int128(a.den) * b.den);
}
Rational operator-(Rational a, Rational b) {
    return make(__int128(a.num) * b.den - __int128(b.num) * a.den, __int128(a.den) * b.den);
}
Rational operator*(Rational a, Rational b) { return make(__int128(a.num) * b.num, __int128(a.den) * b.den); }
Rational operator/(Rational a, Rational b) { return make(__int128(a.num) * b.den, __int128(a.den) * b.num); }
bool operator==(Rational a, Rational b) { return a.num == b.num && a.den == b.den; }

RPoly rpoly_add(const RPoly& a, const RPoly& b) {
    RPoly r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = (i < a.size() ? a[i] : Rational()) + (i < b.size() ? b[i] : Rational());
    return r;
}

RPoly rpoly_sub(const RPoly& a, const RPoly& b) {
    RPoly r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = (i < a.size() ? a[i] : Rational()) - (i < b.size() ? b[i] : Rational());
    return r;
}

RPoly rpoly_mul(const RPoly& a, const RPoly& b) {
    if (a.empty() || b.empty()) return {};
    RPoly r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = r[i + j] + a[i] * b[j];
    return r;
}

RPoly rpoly_derivative(const RPoly& a) {
    if (a.size() <= 1) return {};
    RPoly r(a.size() - 1);
    for (std::size_t i = 1; i < a.size(); ++i) r[i - 1] = a[i] * Rational(static_cast<long long>(i));
    return r;
}

Rational rpoly_eval(const RPoly& a, Rational x) {
    Rational acc;
    for (std::size_t i = a.size(); i-- > 0;) acc = acc * x + a[i];
    return acc;
}

const RPoly& level_polynomial(int k, int l) {
    static const RPoly P10{144, 120, 1};
    static const RPoly P20{0, 1728, 144};
    static const RPoly P11{0, 216, 210, 3, Rational(-1, 60)};
    static const RPoly P21{Rational(497664, 60), Rational(-134784, 60), Rational(266112, 60),
                           Rational(25704, 60),  Rational(-24, 60),     Rational(1, 60)};
    if (k == 1 && l == 0) return P10;
    if (k == 2 && l == 0) return P20;
    if (k == 1 && l == 1) return P11;
    if (k == 2 && l == 1) return P21;
    throw Error(ErrorCode::OrderUnavailable, "level polynomials exist for k in {1,2}, l in {0,1}");
}

namespace {

// Value and derivative of a polynomial with double coefficients.
struct DPoly {
    std::vector<double> c;
    explicit DPoly(const RPoly& p) {
        for (const auto& r : p) c.push_back(r.value());
    }
    std::pair<cplx, cplx> eval(cplx x) const {
        cplx v = 0, d = 0;
        for (std::size_t i = c.size(); i-- > 0;) {
            d = d * x + v;
            v = v * x + c[i];
        }
        return {v, d};
    }
};

const DPoly& dpoly(int k, int l) {
    static const DPoly p10(level_polynomial(1, 0)), p20(level_polynomial(2, 0)), p11(level_polynomial(1, 1)),
        p21(level_polynomial(2, 1));
    if (l == 0) return k == 1 ? p10 : p20;
    return k == 1 ? p11 : p21;
}

}  // namespace

PiLevel pi_level(cplx xi, int l) {
    if (l != 0 && l != 1) throw Error(ErrorCode::OrderUnavailable, "pi levels implemented for l in {0, 1}");
    if (xi == cplx(12.0)) throw Error(ErrorCode::AtSingularXi, "xi = 12");
    const cplx w = xi - 12.0;
    PiLevel r;
    for (int k = 1; k <= 2; ++k) {
        const int m = l + 2 + (k == 2 ? 1 : 0);
        auto [P, dP] = dpoly(k, l).eval(xi);
        const cplx wm = std::pow(w, -m);
        const cplx v = P * wm;
        const cplx d = dP * wm - double(m) * P * wm / w;
        (k == 1 ? r.pi1 : r.pi2) = v;
        (k == 1 ? r.dpi1 : r.dpi2) = d;
    }
    return r;
}

std::pair<cplx, cplx> pi912_level(cplx xi, int l) {
    if (l != 0 && l != 1) throw Error(ErrorCode::OrderUnavailable, "pi912 levels implemented for l in {0, 1}");
    auto [P10, dP10] = dpoly(1, 0).eval(xi);
    auto [P20, dP20] = dpoly(2, 0).eval(xi);
    if (P20 == cplx(0.0)) throw Error(ErrorCode::AtSingularXi, "pi_{2,0} vanishes");
    if (l == 0) {
        const cplx N = P10 * (xi - 12.0), dN = dP10 * (xi - 12.0) + P10;
        return {N / P20, (dN * P20 - N * dP20) / (P20 * P20)};
    }
    auto [P11, dP11] = dpoly(1, 1).eval(xi);
    auto [P21, dP21] = dpoly(2, 1).eval(xi);
    const cplx N = P11 * P20 - P10 * P21;
    const cplx dN = dP11 * P20 + P11 * dP20 - dP10 * P21 - P10 * dP21;
    const cplx D = P20 * P20, dD = 2.0 * P20 * dP20;
    return {N / D, (dN * D - N * dD) / (D * D)};
}

Pi912Exact pi912_exact() {
    const RPoly& P10 = level_polynomial(1, 0);
    const RPoly& P20 = level_polynomial(2, 0);
    const RPoly& P11 = level_polynomial(1, 1);
    const RPoly& P21 = level_polynomial(2, 1);
    const Rational x12(12);
    const RPoly N0 = rpoly_mul(P10, RPoly{-12, 1});
    const Rational D0 = rpoly_eval(P20, x12);
    Pi912Exact r;
    r.value_at_12 = rpoly_eval(N0, x12) / D0;
    r.derivative_at_12 =
        (rpoly_eval(rpoly_derivative(N0), x12) * D0 - rpoly_eval(N0, x12) * rpoly_eval(rpoly_derivative(P20), x12)) /
        (D0 * D0);
    const RPoly N1 = rpoly_sub(rpoly_mul(P11, P20), rpoly_mul(P10, P21));
    r.level1_at_12 = rpoly_eval(N1, x12) / (D0 * D0);
    r.c1 = Rational(0) - r.level1_at_12 / r.derivative_at_12;
    return r;
}

cplx tau_of(cplx t) {
    if (t == cplx(0.0)) throw Error(ErrorCode::ConfigError, "t = 0");
    return std::exp(-t - 0.5 * std::log(t));
}

ScaledState transitional_eval(cplx t, cplx C, int m) {
    if (m != 1 && m != 2) throw Error(ErrorCode::OrderUnavailable, "transitional order must be 1 or 2");
    const cplx xi = C * tau_of(t);
    ScaledState s{t, 0.0, 0.0};
    cplx tl = 1.0;
    for (int l = 0; l < m; ++l) {
        const PiLevel p = pi_level(xi, l);
        s.pi1 += tl * p.pi1;
        s.pi2 += tl * p.pi2;
        tl /= t;
    }
    return s;
}

cplx solve_tau_equation(cplx tau, cplx log_tau, int n, cplx alpha) {
    if (tau == cplx(0.0)) throw Error(ErrorCode::SeedInvalid, "tau = 0");
    if (std::abs(std::exp(log_tau) - tau) > 1e-10 * std::abs(tau))
        throw Error(ErrorCode::SeedInvalid, "log_tau is not a logarithm of tau");
    const double N = 2 * pi * std::abs(n);
    if (n == 0 || !(N > 4 * (std::abs(log_tau) + std::abs(alpha) * std::log(N))))
        throw Error(ErrorCode::SeedInvalid, "|n| too small for the seed");
    const cplx rhs = 2.0 * pi * I * double(n) - log_tau;
    cplx t = rhs + alpha * log_2piin(n);
    for (int it = 0; it < 60; ++it) {
        const cplx g = t - alpha * std::log(t) - rhs;
        const cplx dt = g / (1.0 - alpha / t);
        t -= dt;
        if (!finite(t)) break;
        if (std::abs(dt) <= 4e-16 * std::abs(t)) return t;
    }
    throw Error(ErrorCode::NewtonDiverged, "tau equation Newton did not converge");
}

cplx tau_equation_series(cplx lam, int n, cplx alpha, int order) {
    if (order < 0 || order > 3) throw Error(ErrorCode::OrderUnavailable, "s-series order outside [0, 3]");
    const cplx L = log_2piin(n);
    const cplx u = 1.0 / (2.0 * pi * I * double(n)), v = L * u;
    const cplx a = alpha, a2 = a * a, a3 = a2 * a, a4 = a2 * a2;
    cplx s = 0;
    if (order >= 1) s += -a * lam * u + a2 * v;
    if (order >= 2) s += -a * lam * (a + lam / 2.0) * u * u + a2 * (a + lam) * u * v - a3 * v * v / 2.0;
    if (order >= 3)
        s += -a * lam * (a2 + 1.5 * a * lam + lam * lam / 3.0) * u * u * u +
             a2 * (a2 + 3.0 * a * lam + lam * lam) * u * u * v - a3 * (1.5 * a + lam) * u * v * v + a4 * v * v * v / 3.0;
    return 2.0 * pi * I * double(n) + a * L - lam + s;
}

cplx pole_fast(cplx C, int n) {
    if (C == cplx(0.0)) throw Error(ErrorCode::CZero, "C = 0");
    if (n < 1) throw Error(ErrorCode::ConfigError, "n must be >= 1");
    const cplx L = log_2piin(n);
    const cplx u = 1.0 / (2.0 * pi * I * double(n)), v = L * u;
    const cplx lc = std::log(C / 12.0);
    return 2.0 * pi * I * double(n) - 0.5 * L + lc + v / 4.0 - (0.5 * lc + 109.0 / 120.0) * u + v * v / 16.0 -
           (0.25 * lc + 139.0 / 240.0) * u * v;
}

namespace {

template <class F>
cplx newton(cplx T, F&& f) {
    for (int it = 0; it < 60; ++it) {
        auto [g, dg] = f(T);
        const cplx dT = g / dg;
        T -= dT;
        if (!finite(T)) break;
        if (std::abs(dT) <= 1e-15 * std::abs(T)) return T;
    }
    throw Error(ErrorCode::NewtonDiverged, "pole Newton did not converge");
}

}  // namespace

cplx pole_newton(cplx T_seed, cplx C, int include_order) {
    if (C == cplx(0.0)) throw Error(ErrorCode::CZero, "C = 0");
    if (include_order < 0 || include_order > 1) throw Error(ErrorCode::OrderUnavailable, "include_order in {0, 1}");
    return newton(T_seed, [&](cplx T) {
        const cplx xi = C * tau_of(T);
        const cplx dxi = -xi * (1.0 + 0.5 / T);
        auto [f0, d0] = pi912_level(xi, 0);
        cplx g = f0, dg = d0 * dxi;
        if (include_order >= 1) {
            auto [f1, d1] = pi912_level(xi, 1);
            g += f1 / T;
            dg += d1 * dxi / T - f1 / (T * T);
        }
        return std::pair{g, dg};
    });
}

cplx pole_relation(cplx T_seed, cplx C, const std::array<double, 2>& c, int include_order) {
    if (C == cplx(0.0)) throw Error(ErrorCode::CZero, "C = 0");
    if (include_order < 0 || include_order > 1) throw Error(ErrorCode::OrderUnavailable, "include_order in {0, 1}");
    return newton(T_seed, [&](cplx T) {
        const cplx xi = C * tau_of(T);
        cplx g = xi - c[0], dg = -xi * (1.0 + 0.5 / T);
        if (include_order >= 1) {
            g -= c[1] / T;
            dg += c[1] / (T * T);
        }
        return std::pair{g, dg};
    });
}

std::vector<cplx> pole_sequence(const PoleSequenceParams& p, PoleMode mode) {
    if (p.C == cplx(0.0)) throw Error(ErrorCode::CZero, "C = 0");
    if (p.n_min < 1 || p.n_max < p.n_min) throw Error(ErrorCode::ConfigError, "n range must satisfy 1 <= n_min <= n_max");
    std::vector<cplx> out;
    for (int n = p.n_min; n <= p.n_max; ++n) {
        const cplx f = pole_fast(p.C, n);
        switch (mode) {
            case PoleMode::Fast: out.push_back(f); break;
            case PoleMode::Newton: out.push_back(pole_newton(f, p.C, p.include_order)); break;
            case PoleMode::Relation: out.push_back(pole_relation(f, p.C, p.c_series, p.include_order)); break;
        }
    }
    return out;
}

double pole_residual(cplx T, cplx C) { return std::abs(C * tau_of(T) - 12.0 - 10.9 / T); }

cplx track_pole_around_C(cplx T, cplx C, int steps) {
    for (int k = 1; k <= steps; ++k) T = pole_newton(T, C * std::exp(2.0 * pi * I * double(k) / double(steps)));
    return T;
}

cplx map_pole_to_x(cplx T) {
    if (T == cplx(0.0)) throw Error(ErrorCode::ConfigError, "T = 0");
    return -kx * cpow(1.25 * T, 0.8);
}

cplx stokes_constant_printed() { return I * std::sqrt(6.0 / (5.0 * pi)); }

// Sign fixed by stokes_numeric: with p_down seeded in the lower half plane the
// difference p_down - p_up approaches -i sqrt(6/(5 pi)) e^-t t^-1/2 in p-.
cplx stokes_constant() { return -stokes_constant_printed(); }

// ---- numeric constructions through the atlas integrator ----

namespace {

const Equilibrium& eq1() {
    static const Equilibrium e = equilibrium(1);
    return e;
}

}  // namespace

cplx t_to_z(cplx t) { return t / eq1().lambda_plus; }
cplx z_to_t(cplx z) { return z * eq1().lambda_plus; }

AtlasState scaled_to_atlas(const ScaledState& s) {
    const cplx A = eq1().u1, lam = eq1().lambda_plus;
    return {t_to_z(s.t), {ChartId::B, A * s.pi1, lam * A * s.pi2}};
}

ScaledState atlas_to_scaled(const AtlasState& a) {
    const cplx A = eq1().u1, lam = eq1().lambda_plus;
    auto [u1, u2] = state_to_base(a);
    return {z_to_t(a.z), u1 / A, u2 / (lam * A)};
}

ScaledState integrate_scaled(const ScaledState& s, cplx t_end, const StepControl& ctl) {
    const AtlasState a = scaled_to_atlas(s);
    const Trajectory tr = integrate_path(a, PathSpec::segment(a.z, t_to_z(t_end)), ctl);
    ScaledState r = atlas_to_scaled(tr.states.back());
    r.t = t_end;
    return r;
}

StokesEstimate stokes_numeric(double t, double seed_radius) {
    if (!(seed_radius > t && t > 0)) throw Error(ErrorCode::ConfigError, "need 0 < t < seed_radius");
    const double h = std::sqrt(seed_radius * seed_radius - t * t);
    StepControl ctl;
    ctl.rel_tol = 1e-13;
    ctl.abs_tol = 1e-15;
    const ScaledState up = integrate_scaled(optimal_series(cplx(t, h)), t, ctl);
    const ScaledState dn = integrate_scaled(optimal_series(cplx(t, -h)), t, ctl);
    const auto pu = to_p(up.pi1, up.pi2), pd = to_p(dn.pi1, dn.pi2);
    const cplx scale = std::exp(cplx(t) + 0.5 * std::log(cplx(t)));
    return {t, {scale * (pd[0] - pu[0]), scale * (pd[1] - pu[1])}};
}

TritronqueeResult tritronquee_poles(const TritronqueeOptions& opt) {
    if (opt.n_max < 1) throw Error(ErrorCode::ConfigError, "n_max must be >= 1");
    if (!(opt.turn_radius > 0 && opt.seed_radius > opt.turn_radius))
        throw Error(ErrorCode::ConfigError, "need 0 < turn_radius < seed_radius");
    TritronqueeResult res;
    res.C = opt.C;
    PoleSequenceParams pp;
    pp.C = res.C;
    pp.n_max = opt.n_max;
    const std::vector<cplx> fast = pole_sequence(pp, PoleMode::Fast);
    const std::vector<cplx> nwt = pole_sequence(pp, PoleMode::Newton);

    // Spine: -R i -> -r i, half circle through +r, then up the imaginary axis.
    const double R = opt.seed_radius, r = opt.turn_radius;
    AtlasState s = scaled_to_atlas(optimal_series(cplx(0, -R)));
    auto run = [&](const PathSpec& p) { return integrate_path(s, p, opt.ctl); };
    try {
        s = run(PathSpec::segment(s.z, t_to_z(cplx(0, -r)))).states.back();
        const double arg_l = std::arg(1.0 / eq1().lambda_plus);
        s = run(PathSpec::arc(0.0, r / std::abs(eq1().lambda_plus), arg_l - pi / 2, arg_l + pi / 2)).states.back();
    } catch (const Error& e) {
        res.warnings.push_back(std::string("spine: ") + e.what());
        return res;
    }

    for (int n = 1; n <= opt.n_max; ++n) {
        const auto k = static_cast<std::size_t>(n - 1);
        TritronqueeRow row;
        row.n = n;
        row.fast = fast[k];
        row.newton = nwt[k];
        row.residual = pole_residual(nwt[k], res.C);
        const cplx on_axis(0.0, nwt[k].imag());
        try {
            if (z_to_t(s.z).imag() < on_axis.imag()) s = run(PathSpec::segment(s.z, t_to_z(on_axis))).states.back();
            const cplx end(nwt[k].real() - 1.5, nwt[k].imag());
            const Trajectory br = run(PathSpec::segment(s.z, t_to_z(end)));
            double best = 0.5;
            for (const auto& e : br.events) {
                const cplx T = z_to_t(e.zeta);
                if (std::abs(T - nwt[k]) < best) {
                    best = std::abs(T - nwt[k]);
                    row.located = T;
                    row.found = true;
                }
            }
            if (!row.found) res.warnings.push_back("n=" + std::to_string(n) + ": no pole within 0.5 of the prediction");
        } catch (const Error& e) {
            res.warnings.push_back("n=" + std::to_string(n) + ": " + e.what());
        }
        res.rows.push_back(row);
    }
    return res;
}

namespace {

void put(std::string& out, const char* fmt, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, fmt, v);
    out += buf;
}

void put_c(std::string& out, cplx z) {
    put(out, "%.17g", z.real());
    out += ',';
    put(out, "%.17g", z.imag());
}

}  // namespace

std::string tritronquee_csv(const TritronqueeResult& r) {
    std::string out =
        "n,re_T_fast,im_T_fast,re_T_newton,im_T_newton,re_T_num,im_T_num,abs_dT,re_X_newton,im_X_newton,re_X_num,"
        "im_X_num,residual\n";
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (const auto& row : r.rows) {
        out += std::to_string(row.n) + ',';
        put_c(out, row.fast);
        out += ',';
        put_c(out, row.newton);
        out += ',';
        put_c(out, row.found ? row.located : cplx(nan, nan));
        out += ',';
        put(out, "%.17g", row.found ? std::abs(row.located - row.newton) : nan);
        out += ',';
        put_c(out, map_pole_to_x(row.newton));
        out += ',';
        put_c(out, row.found ? map_pole_to_x(row.located) : cplx(nan, nan));
        out += ',';
        put(out, "%.17g", row.residual);
        out += '\n';
    }
    return out;
}

std::string pole_prediction_csv(const std::vector<cplx>& T, cplx C, int n_min) {
    std::string out = "n,re_T,im_T,re_X,im_X,residual\n";
    for (std::size_t i = 0; i < T.size(); ++i) {
        out += std::to_string(n_min + static_cast<int>(i)) + ',';
        put_c(out, T[i]);
        out += ',';
        put_c(out, map_pole_to_x(T[i]));
        out += ',';
        put(out, "%.17g", pole_residual(T[i], C));
        out += '\n';
    }
    return out;
}

}  // namespace okamoto
