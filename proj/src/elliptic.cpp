#include "okamoto/elliptic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <unsupported/Eigen/Polynomials>

namespace okamoto {

namespace {

const cplx I(0.0, 1.0);

// Lattice coordinates (s, t) with z = s p1 + t p2.
std::array<double, 2> coords(cplx z, cplx p1, cplx p2) {
    const double det = p1.real() * p2.imag() - p1.imag() * p2.real();
    return {(z.real() * p2.imag() - z.imag() * p2.real()) / det, (p1.real() * z.imag() - p1.imag() * z.real()) / det};
}

// Gauss-Lagrange reduction of a lattice basis.
std::array<cplx, 2> reduce_basis(cplx a, cplx b) {
    if (std::abs(a) > std::abs(b)) std::swap(a, b);
    for (int it = 0; it < 100; ++it) {
        const double mu = std::round((b * std::conj(a)).real() / std::norm(a));
        b -= mu * a;
        if (std::abs(b) >= std::abs(a)) break;
        std::swap(a, b);
    }
    return {a, b};
}

cplx cexpm1(cplx w) {
    const double s = std::sin(0.5 * w.imag());
    return {std::expm1(w.real()) * std::cos(w.imag()) - 2 * s * s, std::exp(w.real()) * std::sin(w.imag())};
}

// Lattice omega (Z + tau Z) with tau in the standard fundamental domain.
struct NormalLattice {
    cplx omega{};
    cplx tau{};
};

NormalLattice normalize(cplx p1, cplx p2) {
    if (p1 == cplx(0.0) || std::abs((p2 / p1).imag()) < 1e-14)
        throw Error(ErrorCode::SingularLevel, "degenerate lattice basis");
    cplx omega = p1, tau = p2 / p1;
    if (tau.imag() < 0) tau = -tau;
    for (int it = 0; it < 200; ++it) {
        tau -= std::round(tau.real());
        if (std::abs(tau) >= 1.0 - 1e-15) break;
        omega *= tau;
        tau = -1.0 / tau;
    }
    return {omega, tau};
}

cplx nome(cplx tau) { return std::exp(2.0 * pi * I * tau); }

}  // namespace

WeierstrassParams weierstrass_params(cplx q) { return {cplx(-2.0), -q}; }

bool near_singular_level(cplx q, double tol) {
    const double s = std::sqrt(8.0 / 27.0);
    return std::abs(q - I * s) < tol || std::abs(q + I * s) < tol;
}

const PeriodConstants& period_constants() {
    static const PeriodConstants c = [] {
        const double g3 = std::pow(std::tgamma(1.0 / 3.0), 3);
        PeriodConstants k;
        k.a0 = -I * g3 / (2 * pi);
        k.b0 = -I * 4.0 * std::pow(3.0, -1.5) * pi * pi / g3;
        k.b0_printed = I * 16.0 * std::pow(3.0, -1.5) * pi * pi / g3;
        return k;
    }();
    return c;
}

PeriodBasis period_basis_asymptotic(cplx q, int order, bool use_printed_b) {
    if (order != 0 && order != 1) throw Error(ErrorCode::OrderUnavailable, "asymptotic period order must be 0 or 1");
    if (std::abs(q) < 100.0) throw Error(ErrorCode::QTooSmall, "|q| < 100");
    const PeriodConstants& k = period_constants();
    const cplx lq = std::log(q);
    const cplx q16 = std::exp(-lq / 6.0), q56 = std::exp(-5.0 * lq / 6.0);
    const cplx w = std::exp(I * pi / 3.0);
    const cplx b = use_printed_b ? k.b0_printed : k.b0;
    PeriodBasis r{q, q16 * k.a0, q16 * w * k.a0};
    if (order == 1) {
        r.p1 += q56 * b;
        r.p2 += q56 * std::conj(w) * b;
    }
    return r;
}

std::array<cplx, 3> cubic_roots(cplx q) {
    Eigen::Matrix<cplx, 4, 1> c;
    c << q, cplx(2.0), cplx(0.0), cplx(4.0);
    Eigen::PolynomialSolver<cplx, 3> solver(c);
    std::array<cplx, 3> r;
    for (int i = 0; i < 3; ++i) {
        cplx u = solver.roots()[i];
        for (int it = 0; it < 3; ++it) {
            const cplx d = 12.0 * u * u + 2.0;
            if (d == cplx(0.0)) break;
            u -= (4.0 * u * u * u + 2.0 * u + q) / d;
        }
        r[static_cast<std::size_t>(i)] = u;
    }
    std::sort(r.begin(), r.end(), [](cplx a, cplx b) { return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag(); });
    return r;
}

namespace {

double dist_to_segment(cplx p, cplx a, cplx b) {
    const cplx d = b - a;
    const double t = std::clamp(((p - a) * std::conj(d)).real() / std::norm(d), 0.0, 1.0);
    return std::abs(p - (a + t * d));
}

// Twice the integral of du/sqrt(4u^3+2u+q) from ei to ej, u = m - h cos(theta),
// with the square root continued along the segment.
cplx pair_period(cplx ei, cplx ej, cplx ek) {
    const cplx m = 0.5 * (ei + ej), h = 0.5 * (ej - ei), d0 = ei - ek;
    const cplx sd0 = std::sqrt(d0);
    auto f = [&](double th) { return 1.0 / (sd0 * std::sqrt((m - h * std::cos(th) - ek) / d0)); };
    double err = 0;
    const cplx v = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, pi, 20, 1e-14, &err);
    if (!std::isfinite(err) || err > 1e-9 * std::abs(v)) throw Error(ErrorCode::QuadratureFailed, "period quadrature");
    return -I * v;
}

std::array<cplx, 2> label(const std::array<cplx, 2>& raw, cplx t1, cplx t2, double slack) {
    const auto [a, b] = reduce_basis(raw[0], raw[1]);
    std::array<cplx, 2> out{};
    const cplx tgt[2] = {t1, t2};
    double n[2][2];
    for (int k = 0; k < 2; ++k) {
        const auto c = coords(tgt[k], a, b);
        n[k][0] = std::round(c[0]);
        n[k][1] = std::round(c[1]);
        if (std::abs(c[0] - n[k][0]) > slack || std::abs(c[1] - n[k][1]) > slack)
            throw Error(ErrorCode::QuadratureFailed, "period labelling lost track");
        out[static_cast<std::size_t>(k)] = n[k][0] * a + n[k][1] * b;
    }
    if (std::abs(n[0][0] * n[1][1] - n[0][1] * n[1][0]) != 1.0)
        throw Error(ErrorCode::QuadratureFailed, "labelled periods do not form a basis");
    return out;
}

}  // namespace

std::array<cplx, 2> raw_periods(cplx q) {
    if (near_singular_level(q)) throw Error(ErrorCode::SingularLevel, "q within 1e-6 of +-i sqrt(8/27)");
    const auto r = cubic_roots(q);
    struct Pair {
        std::size_t i, j, k;
        double clear;
    };
    std::array<Pair, 3> pairs{Pair{0, 1, 2, 0}, Pair{1, 2, 0, 0}, Pair{2, 0, 1, 0}};
    for (auto& p : pairs) p.clear = dist_to_segment(r[p.k], r[p.i], r[p.j]) / std::abs(r[p.j] - r[p.i]);
    std::stable_sort(pairs.begin(), pairs.end(), [](const Pair& x, const Pair& y) { return x.clear > y.clear; });
    return {pair_period(r[pairs[0].i], r[pairs[0].j], r[pairs[0].k]),
            pair_period(r[pairs[1].i], r[pairs[1].j], r[pairs[1].k])};
}

PeriodBasis period_numeric(cplx q) {
    constexpr double Q = 1000.0;
    if (std::abs(q) >= Q) {
        const PeriodBasis a = period_basis_asymptotic(q, 1);
        const auto l = label(raw_periods(q), a.p1, a.p2, 0.05);
        return {q, l[0], l[1]};
    }
    // Continue the labelling inward along the ray through q, then straight to q
    // once |q| < 1, passing the singular levels on the side Re q > 0.
    const cplx dir = q == cplx(0.0) ? cplx(1.0) : q / std::abs(q);
    std::vector<cplx> way{dir * Q, dir * std::max(std::abs(q), 1.0)};
    if (std::abs(q) < 1.0) way.push_back(q);
    const double s8 = std::sqrt(8.0 / 27.0);
    for (std::size_t i = 0; i + 1 < way.size(); ++i)
        for (cplx sing : {I * s8, -I * s8})
            if (way[i] != sing + 0.1 && dist_to_segment(sing, way[i], way[i + 1]) < 0.05) {
                way.insert(way.begin() + static_cast<std::ptrdiff_t>(i) + 1, sing + 0.1);
                break;
            }
    std::vector<cplx> path{way.front()};
    for (std::size_t i = 1; i < way.size(); ++i) {
        cplx z = path.back();
        while (std::abs(way[i] - z) > 1e-12) {
            const double h = 0.13 * std::max(std::abs(z), 0.15);
            const cplx d = way[i] - z;
            z = std::abs(d) <= h ? way[i] : z + d * (h / std::abs(d));
            path.push_back(z);
        }
    }
    const PeriodBasis a = period_basis_asymptotic(path.front(), 1);
    auto cur = label(raw_periods(path.front()), a.p1, a.p2, 0.05);
    cplx prev_q = path.front();
    for (std::size_t i = 1; i < path.size(); ++i) {
        // Subdivide where the labelling is ambiguous (near the singular levels).
        std::vector<cplx> todo{path[i]};
        int depth = 0;
        while (!todo.empty()) {
            const cplx target = todo.back();
            try {
                cur = label(raw_periods(target), cur[0], cur[1], 0.2);
                prev_q = target;
                todo.pop_back();
            } catch (const Error& e) {
                if (e.code() == ErrorCode::SingularLevel || ++depth > 40) throw;
                todo.push_back(0.5 * (prev_q + target));
            }
        }
    }
    return {q, cur[0], cur[1]};
}

cplx period_ode_check(cplx q, cplx p, cplx dp, cplx d2p) {
    const cplx D = 8.0 + 27.0 * q * q;
    if (std::abs(D) < 1e-12) throw Error(ErrorCode::SingularLevel, "8 + 27 q^2 = 0");
    return d2p + 54.0 * q / D * dp + 15.0 / (4.0 * D) * p;
}

WeierstrassParams lattice_invariants(cplx p1, cplx p2) {
    const NormalLattice L = normalize(p1, p2);
    const cplx qn = nome(L.tau);
    cplx e4 = 1.0, e6 = 1.0, qk = 1.0;
    for (int n = 1; n < 200; ++n) {
        qk *= qn;
        if (std::abs(qk) < 1e-18) break;
        const double n3 = double(n) * n * n;
        const cplx f = qk / (1.0 - qk);
        e4 += 240.0 * n3 * f;
        e6 -= 504.0 * n3 * n * n * f;
    }
    const double p4 = std::pow(pi, 4), p6 = std::pow(pi, 6);
    return {4.0 * p4 / 3.0 * e4 / std::pow(L.omega, 4), 8.0 * p6 / 27.0 * e6 / std::pow(L.omega, 6)};
}

cplx q_from_basis(const PeriodBasis& b) { return -lattice_invariants(b.p1, b.p2).g3; }

cplx reduce_to_cell(cplx z, cplx p1, cplx p2) {
    const auto c = coords(z, p1, p2);
    return z - std::floor(c[0] + 0.5) * p1 - std::floor(c[1] + 0.5) * p2;
}

std::pair<cplx, cplx> weierstrass_p(cplx z, const PeriodBasis& basis) {
    const NormalLattice L = normalize(basis.p1, basis.p2);
    cplx w = reduce_to_cell(z, L.omega, L.omega * L.tau) / L.omega;
    if (std::abs(w) < 1e-10) throw Error(ErrorCode::AtLatticePoint, "z is a lattice point");
    const cplx qn = nome(L.tau);
    const cplx tpi = 2.0 * pi * I;
    const cplx u = std::exp(tpi * w), iu = 1.0 / u;
    const cplx one_minus_u = -cexpm1(tpi * w);
    cplx s = 1.0 / 12.0 + u / (one_minus_u * one_minus_u);
    cplx ds = u * (1.0 + u) / (one_minus_u * one_minus_u * one_minus_u);
    cplx qk = 1.0;
    for (int n = 1; n < 400; ++n) {
        qk *= qn;
        const double mag = std::abs(qk) * std::max(std::abs(u), std::abs(iu));
        const cplx a = qk * u, b = qk * iu;
        s += a / ((1.0 - a) * (1.0 - a)) + b / ((1.0 - b) * (1.0 - b)) - 2.0 * qk / ((1.0 - qk) * (1.0 - qk));
        ds += a * (1.0 + a) / std::pow(1.0 - a, 3) - b * (1.0 + b) / std::pow(1.0 - b, 3);
        if (mag < 1e-18) break;
    }
    const cplx wp = tpi * tpi * s / (L.omega * L.omega);
    const cplx dwp = tpi * tpi * tpi * ds / (L.omega * L.omega * L.omega);
    return {wp, dwp};
}

namespace {

std::vector<cplx> laurent_coeffs(cplx g2, cplx g3, int terms) {
    // c[k] multiplies z^{2k-2}, k >= 2.
    std::vector<cplx> c(static_cast<std::size_t>(std::max(terms, 3)) + 2, 0.0);
    c[2] = g2 / 20.0;
    c[3] = g3 / 28.0;
    for (int k = 4; k < static_cast<int>(c.size()); ++k) {
        cplx s = 0;
        for (int m = 2; m <= k - 2; ++m) s += c[static_cast<std::size_t>(m)] * c[static_cast<std::size_t>(k - m)];
        c[static_cast<std::size_t>(k)] = 3.0 / ((2.0 * k + 1.0) * (k - 3.0)) * s;
    }
    return c;
}

}  // namespace

cplx weierstrass_laurent(cplx z, cplx g2, cplx g3, int terms) {
    const auto c = laurent_coeffs(g2, g3, terms);
    const cplx z2 = z * z;
    cplx s = 0;
    for (int k = terms + 1; k >= 2; --k) s = s * z2 + c[static_cast<std::size_t>(k)];
    return 1.0 / z2 + s * z2;
}

cplx weierstrass_laurent_derivative(cplx z, cplx g2, cplx g3, int terms) {
    const auto c = laurent_coeffs(g2, g3, terms);
    const cplx z2 = z * z;
    cplx s = 0;
    for (int k = terms + 1; k >= 2; --k) s = s * z2 + (2.0 * k - 2.0) * c[static_cast<std::size_t>(k)];
    return -2.0 / (z2 * z) + s * z;
}

SpecialPoints special_points(const PeriodBasis& basis) {
    const cplx g2 = lattice_invariants(basis.p1, basis.p2).g2;
    const double scale = std::min(std::abs(basis.p1), std::abs(basis.p2));
    auto refine = [&](cplx z, bool derivative) {
        for (int it = 0; it < 50; ++it) {
            auto [wp, dwp] = weierstrass_p(z, basis);
            const cplx dz = derivative ? dwp / (6.0 * wp * wp - g2 / 2.0) : wp / dwp;
            z -= dz;
            if (!finite(z)) break;
            if (std::abs(dz) < 1e-14 * scale) return z;
        }
        throw Error(ErrorCode::NewtonDiverged, "special point refinement");
    };
    const cplx s = basis.p1 + basis.p2;
    SpecialPoints r;
    r.zeros_of_u = {refine(s / 3.0, false), refine(2.0 * s / 3.0, false)};
    r.zeros_of_du = {refine(basis.p1 / 2.0, true), refine(basis.p2 / 2.0, true), refine(s / 2.0, true)};
    return r;
}

PeriodBasis hexagonal_basis() { return {cplx(0.0), cplx(1.0), cplx(0.5, std::sqrt(3.0) / 2.0)}; }

namespace {

void append_num(std::string& out, double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out += buf;
}

}  // namespace

std::string wp_grid_csv(const PeriodBasis& basis, cplx lo, cplx hi, int nx, int ny) {
    if (nx < 2 || ny < 2) throw Error(ErrorCode::ConfigError, "grid needs at least 2 x 2 points");
    const double cutoff = 1e-3 * std::min(std::abs(basis.p1), std::abs(basis.p2));
    std::string out = "re_z,im_z,abs_wp\n";
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            const cplx z(lo.real() + (hi.real() - lo.real()) * i / (nx - 1), lo.imag() + (hi.imag() - lo.imag()) * j / (ny - 1));
            double v = std::numeric_limits<double>::quiet_NaN();
            if (std::abs(reduce_to_cell(z, basis.p1, basis.p2)) > cutoff) v = std::abs(weierstrass_p(z, basis).first);
            append_num(out, z.real());
            out += ',';
            append_num(out, z.imag());
            out += ',';
            append_num(out, v);
            out += '\n';
        }
    }
    return out;
}

std::string period_table_csv(const std::vector<PeriodBasis>& rows) {
    std::string out = "re_q,im_q,re_p1,im_p1,re_p2,im_p2\n";
    for (const auto& r : rows) {
        for (cplx v : {r.q, r.p1, r.p2}) {
            append_num(out, v.real());
            out += ',';
            append_num(out, v.imag());
            out += ',';
        }
        out.back() = '\n';
    }
    return out;
}

}  // namespace okamoto
