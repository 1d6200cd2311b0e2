#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "okamoto/common.hpp"

namespace okamoto {

// Level set (u')^2 = 4u^3 + 2u + q of the autonomous limit system, q = 2E.
struct PeriodBasis {
    cplx q{};
    cplx p1{};
    cplx p2{};
};

struct WeierstrassParams {
    cplx g2{-2.0};
    cplx g3{};
};
WeierstrassParams weierstrass_params(cplx q);  // g2 = -2, g3 = -q

// q = +-i sqrt(8/27): the cubic has a double root.
bool near_singular_level(cplx q, double tol = 1e-6);

struct PeriodConstants {
    cplx a0{};          // -i Gamma(1/3)^3 / (2 pi)
    cplx b0{};          // -i 2^{2/3} 3^{-2} B(1/2, 5/6) = -i 4 3^{-3/2} pi^2 Gamma(1/3)^{-3}
    cplx b0_printed{};  // i 16 3^{-3/2} pi^2 Gamma(1/3)^{-3}
};
const PeriodConstants& period_constants();

// p1 = q^{-1/6} a0 + [order>=1] q^{-5/6} b, p2 with the factors e^{+-i pi/3}.
// b = b0 by default; use_printed_b swaps in b0_printed. Requires |q| >= 100.
PeriodBasis period_basis_asymptotic(cplx q, int order = 1, bool use_printed_b = false);

// Periods of du / sqrt(4u^3 + 2u + q) around two pairs of roots, labelled to
// continue the asymptotic basis along the ray from q to |q| = 1000.
PeriodBasis period_numeric(cplx q);

// The two pair periods before labelling (a Z-basis of the lattice, unordered).
std::array<cplx, 2> raw_periods(cplx q);

// Roots of 4u^3 + 2u + q.
std::array<cplx, 3> cubic_roots(cplx q);

// p'' + 54q/(8+27q^2) p' + 15/(4(8+27q^2)) p.
cplx period_ode_check(cplx q, cplx p, cplx dp, cplx d2p);

// Lattice invariants from the Eisenstein series.
WeierstrassParams lattice_invariants(cplx p1, cplx p2);
// -g3 of the lattice of b (equals b.q for an exact period basis).
cplx q_from_basis(const PeriodBasis& b);

// Reduces z into the cell {s p1 + t p2 : s, t in [-1/2, 1/2)}.
cplx reduce_to_cell(cplx z, cplx p1, cplx p2);

// wp and wp' of the lattice generated by (p1, p2).
std::pair<cplx, cplx> weierstrass_p(cplx z, const PeriodBasis& basis);

// z^-2 + sum c_k z^{2k-2} for given invariants, `terms` coefficients.
cplx weierstrass_laurent(cplx z, cplx g2, cplx g3, int terms = 12);
cplx weierstrass_laurent_derivative(cplx z, cplx g2, cplx g3, int terms = 12);

struct SpecialPoints {
    std::array<cplx, 2> zeros_of_u{};   // near (p1+p2)/3, 2(p1+p2)/3
    std::array<cplx, 3> zeros_of_du{};  // near p1/2, p2/2, (p1+p2)/2
};
SpecialPoints special_points(const PeriodBasis& basis);

// |wp| on an nx x ny grid over the rectangle [lo, hi]; NaN within 1e-3 of a
// lattice point. CSV columns re_z, im_z, abs_wp.
std::string wp_grid_csv(const PeriodBasis& basis, cplx lo, cplx hi, int nx, int ny);
// Regular hexagonal lattice generated by 1 and 1/2 + i sqrt(3)/2.
PeriodBasis hexagonal_basis();

// re_q, im_q, re_p1, im_p1, re_p2, im_p2
std::string period_table_csv(const std::vector<PeriodBasis>& rows);

}  // namespace okamoto
