#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "okamoto/integrator.hpp"

using namespace okamoto;

namespace {

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

// Taylor coefficients of u1 at z0 from z^2 u'' = z^2 (6u^2 + 1) - z u' + 4u/25.
std::vector<cplx> taylor(cplx z0, cplx u0, cplx du0, int order) {
    std::vector<cplx> a(order + 3, 0.0);
    a[0] = u0;
    a[1] = du0;
    const cplx zz[3] = {z0 * z0, 2.0 * z0, 1.0};
    for (int k = 0; k + 2 <= order; ++k) {
        cplx rhs = 0;
        for (int j = 0; j <= std::min(k, 2); ++j) {
            cplx sq = 0;
            for (int i = 0; i <= k - j; ++i) sq += a[i] * a[k - j - i];
            rhs += zz[j] * (6.0 * sq + (k - j == 0 ? 1.0 : 0.0));
        }
        rhs -= z0 * double(k + 1) * a[k + 1] + double(k) * a[k];
        rhs += 4.0 / 25.0 * a[k];
        // Left side: sum_j zz_j (k-j+2)(k-j+1) a_{k-j+2}.
        cplx known = 0;
        for (int j = 1; j <= std::min(k, 2); ++j) known += zz[j] * double((k - j + 2) * (k - j + 1)) * a[k - j + 2];
        a[k + 2] = (rhs - known) / (zz[0] * double((k + 2) * (k + 1)));
    }
    a.resize(order + 1);
    return a;
}

std::pair<cplx, cplx> taylor_eval(const std::vector<cplx>& a, cplx t) {
    cplx u = 0, du = 0;
    for (int k = static_cast<int>(a.size()) - 1; k >= 0; --k) u = u * t + a[k];
    for (int k = static_cast<int>(a.size()) - 1; k >= 1; --k) du = du * t + double(k) * a[k];
    return {u, du};
}

}  // namespace

TEST_CASE("autonomous step conserves energy") {
    const AtlasState s{1.0, {ChartId::B, 1.0, 0.0}};
    const StepResult r = step(s, 1e-3, {}, true);
    const cplx E0 = 0.5 * 0.0 - 2.0 - 1.0;
    auto [u1, u2] = chart_to_base(r.state.point, 1.0);
    const cplx E1 = 0.5 * u2 * u2 - 2.0 * u1 * u1 * u1 - u1;
    CHECK(std::abs(E1 - E0) < 1e-12);
    CHECK(r.state.z == cplx(1.0 + 1e-3));
}

TEST_CASE("single step matches the Taylor series of the second-order equation") {
    const cplx z0 = 6.0, dz = 1e-2;
    const auto a = taylor(z0, 0.0, 0.0, 8);
    CHECK(std::abs(a[2] - 0.5) < 1e-15);  // u'' = 1 at u = u' = 0
    const StepResult r = step({z0, {ChartId::B, 0.0, 0.0}}, dz, {});
    auto [u, du] = taylor_eval(a, dz);
    const cplx Z = 1.0 / (5.0 * (z0 + dz));
    CHECK(std::abs(r.state.point.c1 - u) < 1e-10);
    CHECK(std::abs(r.state.point.c2 - (du + 2.0 * Z * u)) < 1e-10);
    CHECK(r.error_estimate < 1.0);
}

TEST_CASE("step across the pole line in C91 is regular") {
    const AtlasState s{10.0, {ChartId::C91, 0.5, -0.01}};
    const StepResult r = step(s, -0.05, {});
    CHECK(finite(r.state.point.c1));
    CHECK(r.state.point.c2.real() > 0);
}

TEST_CASE("zero-length path keeps the initial state only") {
    const AtlasState s{7.0, {ChartId::B, 0.2, 0.1}};
    const Trajectory t = integrate_path(s, PathSpec::segment(7.0, 7.0));
    REQUIRE(t.states.size() == 1);
    CHECK(t.states[0].point.c1 == s.point.c1);
    CHECK(t.events.empty());
}

TEST_CASE("path validation") {
    const AtlasState s{7.0, {ChartId::B, 0.2, 0.1}};
    CHECK_THROWS_AS(integrate_path(s, PathSpec::segment(8.0, 9.0)), Error);
    CHECK_THROWS_AS(integrate_path(s, PathSpec::segment(7.0, -7.0)), Error);
}

TEST_CASE("generic real trajectory from the origin crosses poles") {
    const Trajectory t = integrate_path({6.0, {ChartId::B, 0.0, 0.0}}, PathSpec::segment(6.0, 30.0));
    CHECK(t.events.size() >= 1);
    CHECK(t.states.back().z == cplx(30.0));
    // Recorded energies are recomputable from the states.
    for (std::size_t i = 0; i < t.states.size(); i += 97) {
        const EnergyValue e = energy(t.states[i].point, t.states[i].z);
        CHECK(rel(t.energies[i].E, e.E) < 1e-14);
    }
    for (const auto& ev : t.events) {
        CHECK(std::abs(ev.zeta.imag()) < 1e-9);  // real data, real poles
        CHECK(ev.newton_iterations <= 6);
    }
}

TEST_CASE("departure from a pole") {
    const cplx zeta = 10.0;
    const Trajectory t = integrate_path({zeta, {ChartId::C91, 0.0, 0.0}}, PathSpec::segment(zeta, zeta + 0.02));
    REQUIRE(t.states.size() > 1);
    auto [u1, u2] = state_to_base(t.states.back());
    const cplx d = t.states.back().z - zeta;
    CHECK(std::abs(u1 * d * d - 1.0) < 1e-3);
}

TEST_CASE("detect_pole recovers a seeded pole") {
    const cplx zeta = 10.0;
    StepControl tight;
    tight.rel_tol = 1e-13;
    tight.abs_tol = 1e-15;
    const AtlasState p0{zeta, {ChartId::C91, 0.0, 0.0}};
    const AtlasState a = integrate_straight(p0, zeta + cplx(0.04, 0.01), tight);
    const AtlasState b = integrate_straight(p0, zeta + cplx(0.05, 0.01), tight);
    const PoleEvent e = detect_pole({a, b}, tight);
    CHECK(std::abs(e.zeta - zeta) < 1e-10);
    CHECK(std::abs(e.a) < 1e-8);
    const Tangent f = vector_field({ChartId::C91, e.a, 0.0}, e.zeta);
    CHECK(std::abs(f.d2 + 0.5) < 1.0 / std::abs(zeta));

    const PoleEvent on = detect_pole({p0, p0});
    CHECK(on.zeta == zeta);
    CHECK(on.newton_iterations == 0);

    CHECK_THROWS_AS(detect_pole({{10.0, {ChartId::B, 1.0, 1.0}}, p0}), Error);
}

TEST_CASE("switch_chart examples") {
    const AtlasState small{5.0, {ChartId::B, 0.1, 0.2}};
    CHECK(switch_chart(small).point.chart == ChartId::B);

    const AtlasState big{5.0, {ChartId::B, 1e6, 1e9}};
    const AtlasState s = switch_chart(big);
    CHECK(s.point.chart != ChartId::B);
    CHECK(std::max(std::abs(s.point.c1), std::abs(s.point.c2)) < 10.0);
    auto [u1, u2] = chart_to_base(s.point, s.z);
    CHECK(rel(u1, 1e6) < 1e-9);
    CHECK(rel(u2, 1e9) < 1e-9);

    // Near the pole line.
    auto [v1, v2] = chart_to_base({ChartId::C91, 2.0, 0.2}, 5.0);
    const AtlasState nb = switch_chart({5.0, {ChartId::B, v1, v2}});
    CHECK(nb.point.chart == ChartId::C91);
    CHECK(std::abs(nb.point.c2 - 0.2) < 1e-12);
}

TEST_CASE("tolerance scaling converges monotonically") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    for (int inst = 0; inst < 10; ++inst) {
        const AtlasState s{cplx(8.0, U(rng)), {ChartId::B, cplx(U(rng), U(rng)), cplx(U(rng), U(rng))}};
        const cplx z1 = s.z + 4.0;
        auto final_state = [&](double tol) {
            StepControl c;
            c.rel_tol = tol;
            c.abs_tol = tol * 1e-2;
            const Trajectory t = integrate_path(s, PathSpec::segment(s.z, z1), c);
            return state_to_base(t.states.back());
        };
        auto [r1, r2] = final_state(1e-13);
        // A single tolerance can land on an accidental cancellation of the
        // global error, so the check is against the worst coarser run.
        double worst_coarser = 0, first = 0, last = 0;
        for (double tol = 1e-6; tol > 2e-10; tol /= 2) {
            auto [u1, u2] = final_state(tol);
            const double err = std::max(rel(u1, r1), rel(u2, r2));
            if (worst_coarser > 0) CHECK(err <= worst_coarser);
            worst_coarser = std::max(worst_coarser, err);
            if (first == 0) first = err;
            last = err;
        }
        CHECK(last < 1e-2 * first);
    }
}

TEST_CASE("energy law holds along a trajectory") {
    StepControl c;
    c.rel_tol = 1e-10;
    const Trajectory t = integrate_path({6.0, {ChartId::B, 0.0, 0.0}}, PathSpec::segment(6.0, 12.0), c);
    double worst = 0;
    int n = 0;
    for (std::size_t i = 5; i < t.states.size(); i += 20) {
        const AtlasState& st = t.states[i];
        if (st.point.chart != ChartId::B) continue;  // between poles
        const double h = 1e-4;
        StepControl tight;
        tight.rel_tol = 1e-13;
        tight.abs_tol = 1e-15;
        const AtlasState p = integrate_straight(st, st.z + h, tight);
        const AtlasState m = integrate_straight(st, st.z - h, tight);
        const cplx dE = (energy(p.point, p.z).E - energy(m.point, m.z).E) / (2 * h);
        worst = std::max(worst, rel(dE, energy_dot(st.point, st.z)));
        ++n;
    }
    CHECK(n > 10);
    CHECK(worst < 1e-6);
}

TEST_CASE("accepted-step ratio stays high around poles") {
    const Trajectory t = integrate_path({6.0, {ChartId::B, 0.0, 0.0}}, PathSpec::segment(6.0, 30.0));
    REQUIRE(!t.events.empty());
    const double ratio = double(t.states.size()) / double(t.states.size() + t.rejected_steps);
    CHECK(ratio > 0.8);
}

TEST_CASE("monodromy after a 5 pi / 2 turn") {
    const cplx u10(0.3, 0.1), u20(0.2, -0.1);
    IntegrateOptions o;
    o.bulge_retries = 20;
    const Trajectory t = integrate_path({8.0, {ChartId::B, u10, u20}}, PathSpec::arc(0.0, 8.0, 0.0, 2.5 * pi), {}, o);
    auto [u1, u2] = state_to_base(t.states.back());
    const double scale = std::max(std::abs(u10), std::abs(u20));
    CHECK(std::abs(u1 + u10) / scale < 1e-6);
    CHECK(std::abs(u2 - cplx(0, 1) * u20) / scale < 1e-6);
}

TEST_CASE("export formats") {
    const Trajectory t = integrate_path({6.0, {ChartId::B, 0.0, 0.0}}, PathSpec::segment(6.0, 10.0));
    const std::string csv = trajectory_csv(t);
    CHECK(csv.rfind("s,re_z,im_z,chart,re_c1,im_c1,re_c2,im_c2,re_E,im_E\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == static_cast<long>(t.states.size()) + 1);
    const std::string js = pole_events_json(t.events);
    CHECK(js.find("zeta_re") != std::string::npos);
    CHECK(js.find("step_index") != std::string::npos);
}
