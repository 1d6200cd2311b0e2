#include "okamoto/integrator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>

#include "json.hpp"

namespace okamoto {

namespace {

// Z as seen by the integrated system; the autonomous system is Z = 0 in every
// chart, including the transition maps.
cplx model_Z(cplx z, bool autonomous) { return autonomous ? cplx(0.0) : boutroux_Z(z); }

Tangent field(const ChartPoint& p, cplx z, bool autonomous) {
    return detail::field_Z(p, model_Z(z, autonomous));
}

// Path pieces parametrised by arc length.
struct Param {
    const PathPiece* piece;
    double length;

    cplx z(double s) const {
        if (const auto* g = std::get_if<Segment>(piece)) {
            if (length == 0) return g->z0;
            return g->z0 + (g->z1 - g->z0) * (s / length);
        }
        const auto& a = std::get<Arc>(*piece);
        const double dir = a.arg1 >= a.arg0 ? 1.0 : -1.0;
        return a.center + std::polar(a.radius, a.arg0 + dir * s / a.radius);
    }
    cplx dz(double s) const {
        if (const auto* g = std::get_if<Segment>(piece)) return length == 0 ? cplx(0.0) : (g->z1 - g->z0) / length;
        const auto& a = std::get<Arc>(*piece);
        const double dir = a.arg1 >= a.arg0 ? 1.0 : -1.0;
        return cplx(0.0, dir) * std::polar(1.0, a.arg0 + dir * s / a.radius);
    }
};

// Dormand-Prince 5(4).
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

struct Vec {
    cplx x, y;
};
Vec operator+(Vec a, Vec b) { return {a.x + b.x, a.y + b.y}; }
Vec operator*(cplx s, Vec a) { return {s * a.x, s * a.y}; }

struct RawStep {
    Vec y;
    double err;
};

// One step of y' = F(t, y) with F(t, y) = field(z(t)) * dz(t), t real or complex.
template <class ZOf, class DzOf>
RawStep dopri(ChartId chart, Vec y0, double t, double h, ZOf zof, DzOf dzof, const StepControl& ctl,
              bool autonomous) {
    auto F = [&](double tt, Vec y) {
        const Tangent f = field({chart, y.x, y.y}, zof(tt), autonomous);
        const cplx d = dzof(tt);
        return Vec{f.d1 * d, f.d2 * d};
    };
    const cplx H = h;
    const Vec k1 = F(t, y0);
    const Vec k2 = F(t + c2 * h, y0 + (H * a21) * k1);
    const Vec k3 = F(t + c3 * h, y0 + (H * a31) * k1 + (H * a32) * k2);
    const Vec k4 = F(t + c4 * h, y0 + (H * a41) * k1 + (H * a42) * k2 + (H * a43) * k3);
    const Vec k5 = F(t + c5 * h, y0 + (H * a51) * k1 + (H * a52) * k2 + (H * a53) * k3 + (H * a54) * k4);
    const Vec k6 =
        F(t + h, y0 + (H * a61) * k1 + (H * a62) * k2 + (H * a63) * k3 + (H * a64) * k4 + (H * a65) * k5);
    const Vec y1 = y0 + (H * b1) * k1 + (H * b3) * k3 + (H * b4) * k4 + (H * b5) * k5 + (H * b6) * k6;
    const Vec k7 = F(t + h, y1);
    const Vec e = (H * e1) * k1 + (H * e3) * k3 + (H * e4) * k4 + (H * e5) * k5 + (H * e6) * k6 + (H * e7) * k7;
    if (!finite(y1.x) || !finite(y1.y)) throw Error(ErrorCode::FieldInfinite, "non-finite step");
    auto sc = [&](cplx a, cplx b) { return ctl.abs_tol + ctl.rel_tol * std::max(std::abs(a), std::abs(b)); };
    const double err = std::max(std::abs(e.x) / sc(y0.x, y1.x), std::abs(e.y) / sc(y0.y, y1.y));
    return {y1, err};
}

double next_h(double h, double err) {
    const double f = err == 0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
    return h * f;
}

// Chart policy along a trajectory. Candidates are B, C91 and C92; see the
// pole-proximity ratio below.
struct Policy {
    // rho = (|E| + |u1|) / |u1|^3 is small only near the pole line.
    static constexpr double enter_c91 = 1.0 / 16;
    static constexpr double leave_c91 = 1.0 / 8;
    static constexpr double enter_c92 = 1e8;  // |u911|
    static constexpr double leave_c92 = 1e-6;  // |u922|
};

double pole_ratio(const ChartPoint& p, cplx Z) {
    try {
        auto [u1, u2] = detail::to_base_Z(p, Z);
        const cplx E = 0.5 * u2 * u2 - 2.0 * u1 * u1 * u1 - u1;
        const double a = std::abs(u1);
        if (!finite(E) || a == 0) return std::numeric_limits<double>::infinity();
        return (std::abs(E) + a) / (a * a * a);
    } catch (const Error&) {
        return 0.0;  // on the pole line itself
    }
}

ChartId choose_chart(const ChartPoint& p, cplx Z) {
    switch (p.chart) {
    case ChartId::B:
        return pole_ratio(p, Z) < Policy::enter_c91 ? ChartId::C91 : ChartId::B;
    case ChartId::C91:
        if (std::abs(p.c1) > Policy::enter_c92) return ChartId::C92;
        return pole_ratio(p, Z) > Policy::leave_c91 ? ChartId::B : ChartId::C91;
    case ChartId::C92:
        return std::abs(p.c2) > Policy::leave_c92 ? ChartId::C91 : ChartId::C92;
    default:
        // Any other chart: hand over to B if evaluable there, else C91.
        try {
            auto [u1, u2] = detail::to_base_Z(p, Z);
            if (finite(u1) && finite(u2)) return ChartId::B;
        } catch (const Error&) {
        }
        return ChartId::C91;
    }
}

// Indicator check against the infinity set. Inside C91 away from L8 the state
// is in the regular neighbourhood of the pole line, where 1/q is small without
// being close to I.
bool near_infinity(const ChartPoint& p, cplx z, bool autonomous, double d_min) {
    if (p.chart == ChartId::C91 && std::abs(p.c1) < 1e3) return false;
    try {
        const DistanceIndicator d = distance_to_infinity(p, autonomous ? cplx(1e300) : z);
        return std::abs(d.d) < d_min;
    } catch (const Error&) {
        return true;
    }
}

EnergyValue safe_energy(const ChartPoint& p, cplx z, bool autonomous) {
    try {
        const cplx E = detail::energy_Z(p, model_Z(z, autonomous));
        return {E, 2.0 * E};
    } catch (const Error&) {
        const double inf = std::numeric_limits<double>::infinity();
        return {cplx(inf, 0), cplx(inf, 0)};
    }
}

double min_distance_to_origin(const PathPiece& p) {
    if (const auto* g = std::get_if<Segment>(&p)) {
        const cplx d = g->z1 - g->z0;
        const double n = std::norm(d);
        double t = n == 0 ? 0.0 : std::clamp(-(std::conj(d) * g->z0).real() / n, 0.0, 1.0);
        return std::abs(g->z0 + t * d);
    }
    const auto& a = std::get<Arc>(p);
    // Closest approach of a circle to 0, checked against the swept angles.
    double best = std::numeric_limits<double>::infinity();
    const int n = 4096;
    for (int i = 0; i <= n; ++i) {
        const double th = a.arg0 + (a.arg1 - a.arg0) * i / n;
        best = std::min(best, std::abs(a.center + std::polar(a.radius, th)));
    }
    return best;
}

void validate(const AtlasState& init, const PathSpec& path) {
    if (init.z == cplx(0.0)) throw Error(ErrorCode::ConfigError, "initial z is 0");
    cplx at = init.z;
    for (const auto& p : path.pieces) {
        const cplx a = piece_start(p);
        if (std::abs(a - at) > 1e-12 * std::max(1.0, std::abs(at)))
            throw Error(ErrorCode::ConfigError, "path is not contiguous");
        if (min_distance_to_origin(p) < 1e-12) throw Error(ErrorCode::ConfigError, "path passes through z = 0");
        if (const auto* arc = std::get_if<Arc>(&p); arc && !(arc->radius > 0))
            throw Error(ErrorCode::ConfigError, "arc radius must be positive");
        at = piece_end(p);
    }
}

PoleEvent newton_pole(const std::pair<AtlasState, AtlasState>& segment, const StepControl& ctl, bool autonomous) {
    const AtlasState& a = segment.first;
    const AtlasState& b = segment.second;
    if (a.point.chart != ChartId::C91 || b.point.chart != ChartId::C91)
        throw Error(ErrorCode::NewtonDiverged, "segment is not in C91");
    AtlasState st = std::abs(a.point.c2) <= std::abs(b.point.c2) ? a : b;
    if (std::abs(st.point.c2) >= 0.1) throw Error(ErrorCode::NewtonDiverged, "|u912| above the 0.1 trigger");
    const double scale = std::abs(st.point.c2);
    int it = 0;
    for (; it < 40; ++it) {
        if (std::abs(st.point.c2) < 1e-13) break;
        const Tangent f = field(st.point, st.z, autonomous);
        const cplx dz = -st.point.c2 / f.d2;
        if (!finite(dz) || std::abs(dz) > 10 * std::max(scale, 1e-3))
            throw Error(ErrorCode::NewtonDiverged, "Newton step out of range");
        st = integrate_straight(st, st.z + dz, ctl, autonomous);
    }
    if (!(std::abs(st.point.c2) < 1e-12)) throw Error(ErrorCode::NewtonDiverged, "no convergence");
    return {st.z, st.point.c1, 0, it};
}

struct Runner {
    const StepControl& ctl;
    const IntegrateOptions& opt;
    Trajectory traj;
    double s_total = 0;
    double h;
    long steps = 0;

    Runner(const StepControl& c, const IntegrateOptions& o) : ctl(c), opt(o), h(c.h_init) {}

    [[noreturn]] void fail(ErrorCode code, const std::string& what) {
        throw IntegrationError(code, what, traj);
    }

    void record(const AtlasState& st, double s) {
        traj.s.push_back(s);
        traj.states.push_back(st);
        traj.energies.push_back(safe_energy(st.point, st.z, opt.autonomous));
    }

    // Local minimum of |u912| in C91 over the last three states.
    void check_pole() {
        const std::size_t n = traj.states.size();
        if (!opt.detect_poles || n < 2) return;
        const AtlasState& b = traj.states[n - 1];
        const AtlasState& a = traj.states[n - 2];
        if (a.point.chart != ChartId::C91 || b.point.chart != ChartId::C91) return;
        const bool have3 = n >= 3 && traj.states[n - 3].point.chart == ChartId::C91;
        const double ma = std::abs(a.point.c2), mb = std::abs(b.point.c2);
        const bool min_at_a = have3 && ma < 0.1 && ma <= std::abs(traj.states[n - 3].point.c2) && ma < mb;
        if (!min_at_a) return;
        add_pole({traj.states[n - 3], a}, n - 2);
    }

    void add_pole(const std::pair<AtlasState, AtlasState>& seg, std::size_t index) {
        StepControl c = ctl;
        c.rel_tol = std::min(ctl.rel_tol, 1e-13);
        c.abs_tol = std::min(ctl.abs_tol, 1e-15);
        PoleEvent ev;
        try {
            ev = newton_pole(seg, c, opt.autonomous);
        } catch (const Error&) {
            return;  // no convergent pole near this minimum
        }
        ev.step_index = index;
        for (const auto& e : traj.events)
            if (std::abs(e.zeta - ev.zeta) < 1e-6) return;
        traj.events.push_back(ev);
    }

    void run_piece(AtlasState& st, const PathPiece& piece) {
        const Param par{&piece, piece_length(piece)};
        double s = 0;
        const double L = par.length;
        while (s < L) {
            if (++steps > ctl.max_steps) fail(ErrorCode::StepLimitExceeded, "max_steps reached");
            double hh = std::min(h, L - s);
            const bool last = hh >= L - s;
            RawStep r;
            try {
                r = dopri(st.point.chart, {st.point.c1, st.point.c2}, s, hh, [&](double t) { return par.z(t); },
                          [&](double t) { return par.dz(t); }, ctl, opt.autonomous);
            } catch (const Error&) {
                ++traj.rejected_steps;
                h = hh * 0.25;
                if (h < ctl.h_min) fail(ErrorCode::StepUnderflow, "field not evaluable along the step");
                continue;
            }
            if (!(r.err <= 1.0)) {
                ++traj.rejected_steps;
                h = std::isfinite(r.err) ? std::max(0.2, 0.9 * std::pow(r.err, -0.2)) * hh : 0.25 * hh;
                if (h < ctl.h_min) fail(ErrorCode::StepUnderflow, "step size below h_min");
                continue;
            }
            s = last ? L : s + hh;
            st.z = last ? piece_end(piece) : par.z(s);
            st.point.c1 = r.y.x;
            st.point.c2 = r.y.y;
            h = last ? std::max(h, next_h(hh, r.err)) : next_h(hh, r.err);
            record(st, s_total + s);
            check_pole();
            if (near_infinity(st.point, st.z, opt.autonomous, opt.d_min))
                fail(ErrorCode::ApproachedInfinitySet, "|d| below d_min");
            if (opt.switch_charts) {
                const cplx Z = model_Z(st.z, opt.autonomous);
                const ChartId target = choose_chart(st.point, Z);
                if (target != st.point.chart) {
                    try {
                        const ChartPoint q = detail::convert_Z(st.point, target, Z);
                        if (finite(q.c1) && finite(q.c2)) {
                            traj.chart_switches.push_back({traj.states.size() - 1, st.point.chart, target});
                            st.point = q;
                            traj.states.back() = st;
                        }
                    } catch (const Error&) {
                    }
                }
            }
        }
        s_total += L;
    }
};

// Arc pieces bulged radially outward: out along a ray, around at the larger
// radius, back in.
PathSpec bulge(const PathSpec& path, std::size_t index, double factor) {
    PathSpec out;
    for (std::size_t i = 0; i < path.pieces.size(); ++i) {
        const auto* a = std::get_if<Arc>(&path.pieces[i]);
        if (i != index || !a) {
            out.pieces.push_back(path.pieces[i]);
            continue;
        }
        const double R = a->radius * factor;
        const cplx p0 = a->center + std::polar(a->radius, a->arg0);
        const cplx q0 = a->center + std::polar(R, a->arg0);
        const cplx q1 = a->center + std::polar(R, a->arg1);
        const cplx p1 = a->center + std::polar(a->radius, a->arg1);
        out.pieces.push_back(Segment{p0, q0});
        out.pieces.push_back(Arc{a->center, R, a->arg0, a->arg1});
        out.pieces.push_back(Segment{q1, p1});
    }
    return out;
}

}  // namespace

cplx piece_start(const PathPiece& p) {
    if (const auto* g = std::get_if<Segment>(&p)) return g->z0;
    const auto& a = std::get<Arc>(p);
    return a.center + std::polar(a.radius, a.arg0);
}

cplx piece_end(const PathPiece& p) {
    if (const auto* g = std::get_if<Segment>(&p)) return g->z1;
    const auto& a = std::get<Arc>(p);
    return a.center + std::polar(a.radius, a.arg1);
}

double piece_length(const PathPiece& p) {
    if (const auto* g = std::get_if<Segment>(&p)) return std::abs(g->z1 - g->z0);
    const auto& a = std::get<Arc>(p);
    return a.radius * std::abs(a.arg1 - a.arg0);
}

StepResult step(const AtlasState& s, cplx dz, const StepControl& ctl, bool autonomous) {
    const RawStep r = dopri(s.point.chart, {s.point.c1, s.point.c2}, 0.0, 1.0,
                            [&](double t) { return s.z + t * dz; }, [&](double) { return dz; }, ctl, autonomous);
    return {{s.z + dz, {s.point.chart, r.y.x, r.y.y}}, r.err};
}

AtlasState integrate_straight(const AtlasState& s, cplx z_end, const StepControl& ctl, bool autonomous) {
    AtlasState st = s;
    const cplx span = z_end - s.z;
    const double L = std::abs(span);
    if (L == 0) return st;
    const cplx dir = span / L;
    double t = 0, h = std::min(ctl.h_init, L);
    long n = 0;
    while (t < L) {
        if (++n > ctl.max_steps) throw Error(ErrorCode::StepLimitExceeded, "max_steps reached");
        const double hh = std::min(h, L - t);
        RawStep r;
        try {
            r = dopri(st.point.chart, {st.point.c1, st.point.c2}, t, hh, [&](double x) { return s.z + x * dir; },
                      [&](double) { return dir; }, ctl, autonomous);
        } catch (const Error&) {
            h = 0.25 * hh;
            if (h < ctl.h_min) throw Error(ErrorCode::StepUnderflow, "field not evaluable along the step");
            continue;
        }
        if (!(r.err <= 1.0)) {
            h = std::isfinite(r.err) ? std::max(0.2, 0.9 * std::pow(r.err, -0.2)) * hh : 0.25 * hh;
            if (h < ctl.h_min) throw Error(ErrorCode::StepUnderflow, "step size below h_min");
            continue;
        }
        t = hh >= L - t ? L : t + hh;
        st.point.c1 = r.y.x;
        st.point.c2 = r.y.y;
        h = next_h(hh, r.err);
    }
    st.z = z_end;
    return st;
}

Trajectory integrate_path(const AtlasState& init, const PathSpec& path, const StepControl& ctl,
                          const IntegrateOptions& opt) {
    validate(init, path);
    PathSpec current = path;
    for (int attempt = 0;; ++attempt) {
        Runner run(ctl, opt);
        AtlasState st = init;
        run.record(st, 0.0);
        std::size_t piece = 0;
        try {
            for (; piece < current.pieces.size(); ++piece) run.run_piece(st, current.pieces[piece]);
            run.traj.bulges = attempt;
            return std::move(run.traj);
        } catch (const IntegrationError& e) {
            const bool on_arc = piece < current.pieces.size() && std::holds_alternative<Arc>(current.pieces[piece]);
            if (e.code() != ErrorCode::ApproachedInfinitySet || !on_arc || attempt >= opt.bulge_retries) throw;
            current = bulge(current, piece, opt.bulge_factor);
        }
    }
}

AtlasState switch_chart(const AtlasState& s) {
    const cplx Z = boutroux_Z(s.z);
    auto score = [&](const ChartPoint& p) {
        double sc = std::max(std::abs(p.c1), std::abs(p.c2));
        try {
            const Tangent f = detail::field_Z(p, Z);
            if (!finite(f.d1) || !finite(f.d2)) sc += 1e3;
        } catch (const Error&) {
            sc += 1e3;
        }
        return sc;
    };
    const double current = score(s.point);
    // Near the pole line C91 wins outright.
    try {
        const ChartPoint p91 = detail::convert_Z(s.point, ChartId::C91, Z);
        if (std::abs(p91.c2) < 0.3 && std::abs(p91.c1) < 1e3 && finite(p91.c1)) {
            detail::field_Z(p91, Z);
            return {s.z, p91};
        }
    } catch (const Error&) {
    }
    ChartPoint best = s.point;
    double best_score = current;
    bool any = std::isfinite(current);
    for (ChartId c : all_charts()) {
        if (c == s.point.chart) continue;
        try {
            const ChartPoint q = detail::convert_Z(s.point, c, Z);
            if (!finite(q.c1) || !finite(q.c2)) continue;
            const double sc = score(q);
            any = true;
            if (sc < best_score) {
                best_score = sc;
                best = q;
            }
        } catch (const Error&) {
        }
    }
    if (!any) throw Error(ErrorCode::NoValidChart, "point lies on an excluded locus of every chart");
    // Far out in B the hysteresis would keep a badly scaled state.
    const bool far_in_b = s.point.chart == ChartId::B && std::max(std::abs(s.point.c1), std::abs(s.point.c2)) > 1e2;
    if (best.chart != s.point.chart && (far_in_b || best_score < 0.5 * current)) return {s.z, best};
    return s;
}

PoleEvent detect_pole(const std::pair<AtlasState, AtlasState>& segment, const StepControl& ctl) {
    return newton_pole(segment, ctl, false);
}

std::pair<cplx, cplx> state_to_base(const AtlasState& s) { return chart_to_base(s.point, s.z); }

std::string trajectory_csv(const Trajectory& t) {
    std::string out = "s,re_z,im_z,chart,re_c1,im_c1,re_c2,im_c2,re_E,im_E\n";
    char buf[512];
    for (std::size_t i = 0; i < t.states.size(); ++i) {
        const AtlasState& s = t.states[i];
        const cplx E = t.energies[i].E;
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%s,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", t.s[i],
                      s.z.real(), s.z.imag(), chart_name(s.point.chart), s.point.c1.real(), s.point.c1.imag(),
                      s.point.c2.real(), s.point.c2.imag(), E.real(), E.imag());
        out += buf;
    }
    return out;
}

std::string pole_events_json(const std::vector<PoleEvent>& events) {
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (const auto& e : events)
        j.push_back({{"zeta_re", e.zeta.real()},
                     {"zeta_im", e.zeta.imag()},
                     {"a_re", e.a.real()},
                     {"a_im", e.a.imag()},
                     {"step_index", e.step_index}});
    return j.dump(2);
}

}  // namespace okamoto
