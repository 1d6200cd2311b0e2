#include <algorithm>
#include <cmath>
#include <random>

#include "json.hpp"
#include "okamoto/atlas.hpp"

namespace okamoto {

namespace {

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

double rel2(const Tangent& a, cplx b1, cplx b2) {
    const double n = std::max({std::abs(b1), std::abs(b2), 1e-300});
    return std::max(std::abs(a.d1 - b1), std::abs(a.d2 - b2)) / n;
}

struct Sampler {
    std::mt19937_64 rng;
    std::uniform_real_distribution<double> u{0.0, 1.0};
    cplx polar(double rmin, double rmax) {
        const double r = rmin + (rmax - rmin) * u(rng);
        return std::polar(r, 2 * pi * u(rng));
    }
};

// Parent coordinate Jacobian d(parent)/d(child) and d(parent)/dz by central
// differences of the library's own substitution maps.
struct Jac {
    cplx a11, a12, a21, a22, t1, t2;
    cplx det() const { return a11 * a22 - a12 * a21; }
    Tangent pull(cplx v1, cplx v2) const {
        return {(a22 * v1 - a12 * v2) / det(), (-a21 * v1 + a11 * v2) / det()};
    }
};

ChartPoint parent_point(const ChartPoint& p, cplx z) {
    if (p.chart == ChartId::C02 || p.chart == ChartId::C03) return convert(p, ChartId::B, z);
    return to_parent(p, z);
}

Jac fd_jacobian(const ChartPoint& p, cplx z) {
    const double h = 1e-6;
    auto diff = [&](cplx d1, cplx d2, cplx dz, double s) {
        const ChartPoint a = parent_point({p.chart, p.c1 + d1, p.c2 + d2}, z + dz);
        const ChartPoint b = parent_point({p.chart, p.c1 - d1, p.c2 - d2}, z - dz);
        return std::pair<cplx, cplx>{(a.c1 - b.c1) / (2 * s), (a.c2 - b.c2) / (2 * s)};
    };
    const double s1 = h * std::max(1.0, std::abs(p.c1)), s2 = h * std::max(1.0, std::abs(p.c2));
    const double sz = h * std::max(1.0, std::abs(z));
    Jac J;
    std::tie(J.a11, J.a21) = diff(s1, 0.0, 0.0, s1);
    std::tie(J.a12, J.a22) = diff(0.0, s2, 0.0, s2);
    std::tie(J.t1, J.t2) = diff(0.0, 0.0, sz, sz);
    return J;
}

}  // namespace

ChartVerifyReport verify_charts(const ChartVerifyOptions& opt) {
    ChartVerifyReport rep;
    Sampler smp{std::mt19937_64(opt.seed)};
    auto field = [&](const ChartPoint& p, cplx z) {
        Tangent f = vector_field(p, z);
        if (opt.tamper && *opt.tamper == p.chart) {
            f.d1 *= 1.0 + 1e-4;
            f.d2 *= 1.0 + 1e-4;
        }
        return f;
    };
    for (ChartId c : all_charts()) {
        ChartVerifyRow row;
        row.chart = c;
        for (int k = 0; k < opt.samples; ++k) {
            const cplx z = smp.polar(3.0, 30.0);
            const ChartPoint p{c, smp.polar(0.1, 1.0), smp.polar(0.1, 1.0)};

            auto [u1, u2] = chart_to_base(p, z);
            auto [v1, v2] = chart_to_base(base_to_chart(c, u1, u2, z), z);
            row.round_trip = std::max({row.round_trip, rel(v1, u1), rel(v2, u2)});
            if (c == ChartId::B) continue;

            const ChartPoint q = parent_point(p, z);
            const Jac J = fd_jacobian(p, z);
            const Tangent g = field(q, z);
            const Tangent e = J.pull(g.d1 - J.t1, g.d2 - J.t2);
            row.pushforward = std::max(row.pushforward, rel2(field(p, z), e.d1, e.d2));
            row.jacobian = std::max(row.jacobian, rel(jacobian_w(p, z), jacobian_w(q, z) / J.det()));

            const cplx E = energy(p, z).E;
            const double scale = std::max(std::abs(E), 1.0 / std::abs(jacobian_w(p, z)));
            row.energy = std::max(row.energy, std::abs(E - energy(q, z).E) / scale);

            const Tangent ga = autonomous_vector_field(q, z);
            const Tangent ea = J.pull(ga.d1 - J.t1, ga.d2 - J.t2);
            row.pushforward = std::max(row.pushforward, rel2(autonomous_vector_field(p, z), ea.d1, ea.d2));

            if (blowup_level(c) == 9) {
                // Field minus limit field pulled back from C81 through the exact
                // bilinear substitution; the dz term of the moving chart cancels.
                const bool first = c == ChartId::C91;
                const Jac X{first ? p.c2 : cplx(1.0), first ? p.c1 : cplx(0.0),
                            first ? cplx(0.0) : p.c2, first ? cplx(1.0) : p.c1, 0.0, 0.0};
                const Tangent d = X.pull(g.d1 - ga.d1, g.d2 - ga.d2);
                const Tangent fp = field(p, z), fa = autonomous_vector_field(p, z);
                const Tangent printed = u0u_difference(p, z);
                row.difference = std::max({row.difference, rel2({fp.d1 - fa.d1, fp.d2 - fa.d2}, printed.d1, printed.d2),
                                           rel2(printed, d.d1, d.d2)});
            }
        }
        row.pass = row.round_trip <= opt.tol_round_trip && row.pushforward <= opt.tol_pushforward &&
                   row.jacobian <= opt.tol_jacobian && row.energy <= opt.tol_energy &&
                   row.difference <= opt.tol_difference;
        rep.pass = rep.pass && row.pass;
        rep.rows.push_back(row);
    }
    return rep;
}

std::string ChartVerifyReport::to_json() const {
    nlohmann::ordered_json j;
    j["pass"] = pass;
    auto& charts = j["charts"] = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
        charts.push_back({{"chart", chart_name(r.chart)},
                          {"pass", r.pass},
                          {"round_trip", r.round_trip},
                          {"pushforward", r.pushforward},
                          {"jacobian", r.jacobian},
                          {"energy", r.energy},
                          {"difference", r.difference}});
    }
    return j.dump(2);
}

}  // namespace okamoto
