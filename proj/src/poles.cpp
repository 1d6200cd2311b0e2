#include "okamoto/poles.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <thread>

#include "c9_formulas.hpp"
#include "json.hpp"
#include "quad.hpp"

namespace okamoto {

namespace {

// Rational constants are divided in T so binary128 keeps them exact enough.
template <class T>
std::array<T, 7> coeffs(const T& zeta, const T& a) {
    auto q = [](double n, double d) { return T(n) / T(d); };
    const T iz = T(1.0) / zeta;
    const T iz2 = iz * iz, iz3 = iz2 * iz, iz4 = iz2 * iz2, iz5 = iz4 * iz, iz6 = iz3 * iz3;
    return {T(1.0),
            -(iz / T(5.0)),
            q(3, 20) * iz2,
            q(-31, 250) * iz3,
            q(19 * 283, 16 * 3125) * iz4 - q(1, 10),
            q(-3 * 11 * 727, 16 * 15625) * iz5 - q(11, 150) * iz,
            q(197 * 443, 64 * 15625) * iz6 + q(29, 600) * iz2 - a / T(1792.0)};
}

template <class T>
T laurent_sum(const std::array<T, 7>& c, const T& s, int order) {
    // Horner on s^2 u = sum c_n s^(n+2).
    T acc(0.0);
    for (int n = order; n >= -2; --n) acc = acc * s + c[static_cast<std::size_t>(n + 2)];
    const T is = T(1.0) / s;
    return acc * is * is;
}

struct QVec {
    QComplex x, y;
};

QVec c91_field(const QComplex& z, const QVec& v) {
    const QComplex Z = QComplex(1.0) / (5.0 * z);
    QComplex n1, n2;
    c9::field91_num(v.x, v.y, Z, n1, n2);
    const QComplex D = c9::d91(v.x, v.y, Z);
    return {n1 / D, n2 / D};
}

// Modified midpoint with n substeps over [z, z + H].
QVec midpoint(const QComplex& z, const QVec& y0, const QComplex& H, int n) {
    const QComplex h = H / double(n);
    QVec f = c91_field(z, y0);
    QVec ym = y0;
    QVec y{y0.x + h * f.x, y0.y + h * f.y};
    for (int k = 1; k < n; ++k) {
        f = c91_field(z + double(k) * h, y);
        const QVec next{ym.x + 2.0 * h * f.x, ym.y + 2.0 * h * f.y};
        ym = y;
        y = next;
    }
    f = c91_field(z + H, y);
    return {0.5 * (ym.x + y.x + h * f.x), 0.5 * (ym.y + y.y + h * f.y)};
}

// Gragg-Bulirsch-Stoer step with the even sequence 2, 4, ..., 2K and
// Aitken-Neville extrapolation in (H/n)^2.
QVec gbs_step(const QComplex& z, const QVec& y0, const QComplex& H) {
    constexpr int K = 8;
    QVec T[K];
    for (int k = 0; k < K; ++k) {
        const int nk = 2 * (k + 1);
        T[k] = midpoint(z, y0, H, nk);
        for (int j = k - 1; j >= 0; --j) {
            const int nj = 2 * (j + 1);
            // (nk / nj)^2 - 1, formed in binary128.
            const QComplex r = QComplex(double(nk * nk - nj * nj)) / QComplex(double(nj * nj));
            T[j] = {T[j + 1].x + (T[j + 1].x - T[j].x) / r, T[j + 1].y + (T[j + 1].y - T[j].y) / r};
        }
        // T[0] now holds the highest-order estimate.
    }
    return T[0];
}

struct QuadRun {
    QVec y;
    QComplex Z;
};

QuadRun integrate_quad(cplx zeta, cplx a, cplx z) {
    const QComplex qz0(zeta), span = QComplex(z) - qz0;
    const double L = std::abs(z - zeta);
    const int steps = std::max(1, static_cast<int>(std::ceil(L / 0.01)));
    const QComplex H = span / double(steps);
    QVec y{QComplex(a), QComplex(0.0)};
    for (int i = 0; i < steps; ++i) y = gbs_step(qz0 + double(i) * H, y, H);
    return {y, QComplex(1.0) / (5.0 * QComplex(z))};
}

// u1 and E from quad C91 coordinates.
void quad_u_E(const QuadRun& r, QComplex& u1, QComplex& u2, QComplex& E) {
    const QComplex& b = r.y.y;
    const QComplex D = c9::d91(r.y.x, b, r.Z);
    u1 = QComplex(1.0) / (b * b * D);
    u2 = QComplex(1.0) / (b * b * b * D);
    E = c9::ew91_num(r.y.x, b, r.Z) / (b * D * D * D);
}

}  // namespace

LaurentCoeffs laurent_coeffs(cplx zeta, cplx a) {
    if (zeta == cplx(0.0)) throw Error(ErrorCode::ZetaZero, "zeta = 0");
    return {coeffs(zeta, a)};
}

cplx laurent_eval(cplx zeta, cplx a, cplx z, int order) {
    if (order < -2 || order > 4) throw Error(ErrorCode::OrderUnavailable, "Laurent order outside [-2, 4]");
    if (z == zeta) throw Error(ErrorCode::AtPole, "z = zeta");
    return laurent_sum(laurent_coeffs(zeta, a).c, z - zeta, order);
}

double laurent_trust_radius(cplx zeta) { return std::min(0.5, std::abs(zeta) / 10.0); }

cplx energy_near_pole(cplx zeta, cplx a, cplx z) {
    if (zeta == cplx(0.0)) throw Error(ErrorCode::ZetaZero, "zeta = 0");
    if (z == zeta) throw Error(ErrorCode::AtPole, "z = zeta");
    const cplx iz = 1.0 / (5.0 * zeta);
    return 4.0 * iz / (z - zeta) + a / 128.0 - 22.0 * iz * iz;
}

PoleOracleSample pole_oracle(cplx zeta, cplx a, cplx z) {
    if (zeta == cplx(0.0)) throw Error(ErrorCode::ZetaZero, "zeta = 0");
    const QuadRun r = integrate_quad(zeta, a, z);
    PoleOracleSample s;
    s.z = z;
    s.c91 = {ChartId::C91, r.y.x.to_double(), r.y.y.to_double()};
    if (z == zeta) {
        const double inf = INFINITY;
        s.u1 = s.u2 = s.E = cplx(inf, 0);
        return s;
    }
    QComplex u1, u2, E;
    quad_u_E(r, u1, u2, E);
    s.u1 = u1.to_double();
    s.u2 = u2.to_double();
    s.E = E.to_double();
    return s;
}

PoleOracleResidual pole_oracle_residual(cplx zeta, cplx a, cplx z, int order) {
    if (z == zeta) throw Error(ErrorCode::AtPole, "z = zeta");
    if (zeta == cplx(0.0)) throw Error(ErrorCode::ZetaZero, "zeta = 0");
    const QuadRun r = integrate_quad(zeta, a, z);
    QComplex u1, u2, E;
    quad_u_E(r, u1, u2, E);
    const QComplex qs = QComplex(z) - QComplex(zeta);
    const QComplex L = laurent_sum(coeffs(QComplex(zeta), QComplex(a)), qs, order);
    const QComplex res = QComplex(4.0) / (5.0 * QComplex(zeta));
    return {(u1 - L).to_double(), (qs * E).to_double(), (E - res / qs).to_double()};
}

namespace {

// Where the ray from p in direction d leaves the rectangle.
cplx ray_exit(cplx p, cplx d, const Rect& r) {
    double t = INFINITY;
    if (d.real() > 0) t = std::min(t, (r.hi.real() - p.real()) / d.real());
    if (d.real() < 0) t = std::min(t, (r.lo.real() - p.real()) / d.real());
    if (d.imag() > 0) t = std::min(t, (r.hi.imag() - p.imag()) / d.imag());
    if (d.imag() < 0) t = std::min(t, (r.lo.imag() - p.imag()) / d.imag());
    return p + std::max(t, 0.0) * d;
}

std::vector<PathSpec> cover_paths(cplx z0, const Rect& r, const PoleFieldOptions& opt) {
    std::vector<PathSpec> paths;
    if (opt.strategy == CoverStrategy::RayFan) {
        for (int k = 0; k < opt.rays; ++k) {
            const cplx d = std::polar(1.0, 2 * pi * k / opt.rays);
            const cplx e = ray_exit(z0, d, r);
            if (std::abs(e - z0) > 1e-12) paths.push_back(PathSpec::segment(z0, e));
        }
        // Circular sweep around the centre, reached by a straight approach.
        const cplx c = 0.5 * (r.lo + r.hi);
        const double R = 0.4 * std::min(r.hi.real() - r.lo.real(), r.hi.imag() - r.lo.imag());
        const double th = std::arg(z0 - c);
        const cplx start = c + std::polar(R, th);
        PathSpec sweep = PathSpec::segment(z0, start);
        sweep.then(Arc{c, R, th, th + 2 * pi});
        paths.push_back(sweep);
    } else {
        // Horizontal passes joined end to end, reached from the seed.
        const int n = std::max(2, opt.rows);
        const double h = (r.hi.imag() - r.lo.imag()) / (n - 1);
        PathSpec p;
        cplx at = z0;
        for (int i = 0; i < n; ++i) {
            const double y = r.lo.imag() + h * i;
            const cplx a(i % 2 == 0 ? r.lo.real() : r.hi.real(), y);
            const cplx b(i % 2 == 0 ? r.hi.real() : r.lo.real(), y);
            if (std::abs(a - at) > 1e-12) p.then(Segment{at, a});
            p.then(Segment{a, b});
            at = b;
        }
        paths.push_back(p);
    }
    return paths;
}

}  // namespace

PoleFieldResult pole_field(const AtlasState& seed, const Rect& region, const PoleFieldOptions& opt) {
    PoleFieldResult res;
    if (region.empty()) return res;
    if (region.contains(0.0)) throw Error(ErrorCode::ConfigError, "region contains z = 0");
    const std::vector<PathSpec> paths = cover_paths(seed.z, region, opt);

    struct Out {
        std::vector<PoleEvent> events;
        std::string warning;
    };
    std::vector<Out> outs(paths.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next++) < paths.size();) {
            try {
                outs[i].events = integrate_path(seed, paths[i], opt.ctl).events;
            } catch (const IntegrationError& e) {
                outs[i].events = e.partial().events;
                outs[i].warning = "path " + std::to_string(i) + ": " + e.what();
            } catch (const Error& e) {
                outs[i].warning = "path " + std::to_string(i) + ": " + e.what();
            }
        }
    };
    const int nt = std::max(1, std::min<int>(opt.threads, static_cast<int>(paths.size())));
    std::vector<std::thread> pool;
    for (int t = 1; t < nt; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    for (const auto& o : outs) {
        if (!o.warning.empty()) res.warnings.push_back(o.warning);
        for (const auto& e : o.events) {
            if (!region.contains(e.zeta)) continue;
            const bool dup = std::any_of(res.events.begin(), res.events.end(), [&](const PoleEvent& f) {
                return std::abs(f.zeta - e.zeta) < opt.dedup_radius;
            });
            if (!dup) res.events.push_back(e);
        }
    }
    std::sort(res.events.begin(), res.events.end(), [](const PoleEvent& a, const PoleEvent& b) {
        if (a.zeta.real() != b.zeta.real()) return a.zeta.real() < b.zeta.real();
        return a.zeta.imag() < b.zeta.imag();
    });
    return res;
}

std::vector<double> nearest_neighbor_spacings(const std::vector<PoleEvent>& events) {
    std::vector<double> out;
    for (std::size_t i = 0; i < events.size(); ++i) {
        double best = INFINITY;
        for (std::size_t j = 0; j < events.size(); ++j)
            if (i != j) best = std::min(best, std::abs(events[i].zeta - events[j].zeta));
        if (std::isfinite(best)) out.push_back(best);
    }
    return out;
}

std::string spacing_histogram_json(const std::vector<double>& spacings, int bins) {
    nlohmann::ordered_json j;
    j["count"] = spacings.size();
    if (spacings.empty()) {
        j["bins"] = nlohmann::ordered_json::array();
        return j.dump(2);
    }
    const auto [mn, mx] = std::minmax_element(spacings.begin(), spacings.end());
    std::vector<double> sorted = spacings;
    std::sort(sorted.begin(), sorted.end());
    j["min"] = *mn;
    j["max"] = *mx;
    j["median"] = sorted[sorted.size() / 2];
    const double w = (*mx - *mn) / bins;
    std::vector<int> counts(static_cast<std::size_t>(bins), 0);
    for (double s : spacings) {
        int b = w > 0 ? static_cast<int>((s - *mn) / w) : 0;
        counts[static_cast<std::size_t>(std::clamp(b, 0, bins - 1))]++;
    }
    auto& arr = j["bins"] = nlohmann::ordered_json::array();
    for (int b = 0; b < bins; ++b)
        arr.push_back({{"lo", *mn + w * b}, {"hi", *mn + w * (b + 1)}, {"count", counts[static_cast<std::size_t>(b)]}});
    return j.dump(2);
}

std::string pole_field_csv(const std::vector<PoleEvent>& events) {
    std::string out = "re_zeta,im_zeta,re_a,im_a\n";
    char buf[160];
    for (const auto& e : events) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", e.zeta.real(), e.zeta.imag(), e.a.real(),
                      e.a.imag());
        out += buf;
    }
    return out;
}

}  // namespace okamoto
