#include <cmath>
#include <iostream>
#include <numbers>
#include <random>

#include "cli/cli.hpp"
#include "okamoto/asymptotics.hpp"
#include "okamoto/elliptic.hpp"
#include "okamoto/poles.hpp"

namespace cli {

using okamoto::cplx;
namespace fs = std::filesystem;

namespace {

// Least-squares slope of y against x.
double slope(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double den = n * sxx - sx * sx;
    return den != 0 ? (n * sxy - sx * sy) / den : std::nan("");
}

json num_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

double angle(const json& piece, const char* key) {
    const std::string k = key;
    if (piece.contains(k + "_pi")) return get_or(piece, (k + "_pi").c_str(), 0.0) * std::numbers::pi;
    return get_or(piece, key, 0.0);
}

okamoto::PathSpec parse_path(const json& j, json& echo) {
    if (!j.is_array() || j.empty()) throw ConfigError("path: expected a nonempty array of pieces");
    okamoto::PathSpec path;
    echo = json::array();
    for (const auto& piece : j) {
        const std::string type = get_or<std::string>(piece, "type", "");
        if (type == "segment") {
            check_keys(piece, {"type", "from", "to"}, "path segment");
            if (!piece.contains("from") || !piece.contains("to")) throw ConfigError("path segment: need from, to");
            const okamoto::Segment s{get_cplx(piece["from"], "from"), get_cplx(piece["to"], "to")};
            path.pieces.emplace_back(s);
            echo.push_back({{"type", "segment"}, {"from", put_cplx(s.z0)}, {"to", put_cplx(s.z1)}});
        } else if (type == "arc") {
            check_keys(piece, {"type", "center", "radius", "arg0", "arg1", "arg0_pi", "arg1_pi"}, "path arc");
            okamoto::Arc a;
            a.center = piece.contains("center") ? get_cplx(piece["center"], "center") : cplx{};
            a.radius = get_or(piece, "radius", 0.0);
            a.arg0 = angle(piece, "arg0");
            a.arg1 = angle(piece, "arg1");
            if (!(a.radius > 0)) throw ConfigError("path arc: radius must be positive");
            path.pieces.emplace_back(a);
            echo.push_back({{"type", "arc"},
                            {"center", put_cplx(a.center)},
                            {"radius", a.radius},
                            {"arg0", a.arg0},
                            {"arg1", a.arg1}});
        } else {
            throw ConfigError("path: piece type must be 'segment' or 'arc'");
        }
    }
    for (std::size_t i = 1; i < path.pieces.size(); ++i)
        if (std::abs(okamoto::piece_end(path.pieces[i - 1]) - okamoto::piece_start(path.pieces[i])) > 1e-12)
            throw ConfigError("path: pieces are not contiguous");
    for (const auto& p : path.pieces)
        if (const auto* s = std::get_if<okamoto::Segment>(&p)) {
            // Closest point of the segment to the origin.
            const cplx d = s->z1 - s->z0;
            const double t = std::clamp(-std::real(std::conj(d) * s->z0) / std::norm(d), 0.0, 1.0);
            if (std::abs(s->z0 + t * d) < 1e-12) throw ConfigError("path: passes through z = 0");
        } else if (const auto* a = std::get_if<okamoto::Arc>(&p)) {
            if (std::abs(a->center) == a->radius) throw ConfigError("path: arc passes through z = 0");
        }
    return path;
}

// Slope of log|d| against log|z| over the states in the near-infinity set.
json repellor_fit(const okamoto::Trajectory& t) {
    std::vector<double> x, y;
    for (const auto& s : t.states) {
        const auto d = okamoto::distance_to_infinity(s.point, s.z);
        const double ad = std::abs(d.d);
        if (!d.near_infinity_set || !(ad > 0) || !std::isfinite(ad)) continue;
        x.push_back(std::log(std::abs(s.z)));
        y.push_back(std::log(ad));
    }
    json j;
    j["samples"] = x.size();
    j["slope"] = x.size() >= 3 ? num_or_null(slope(x, y)) : json(nullptr);
    return j;
}

json trajectory_summary(const okamoto::Trajectory& t) {
    json j;
    j["states"] = t.states.size();
    j["poles"] = t.events.size();
    j["chart_switches"] = t.chart_switches.size();
    j["rejected_steps"] = t.rejected_steps;
    j["bulges"] = t.bulges;
    if (!t.states.empty()) {
        const auto& last = t.states.back();
        j["final"] = start_json(last);
        try {
            const auto [u1, u2] = okamoto::state_to_base(last);
            if (okamoto::finite(u1) && okamoto::finite(u2)) j["final_base"] = {{"u1", put_cplx(u1)}, {"u2", put_cplx(u2)}};
        } catch (const okamoto::Error&) {
        }
    }
    j["log_d_vs_log_z"] = repellor_fit(t);
    return j;
}

void mark_incomplete(const fs::path& dir, const std::string& why) { write_file(dir / "INCOMPLETE", why + "\n"); }

}  // namespace

int cmd_charts_verify(const Globals& g, std::optional<int> samples, const std::string& tamper) {
    const json cfg = load_config(g);
    check_keys(cfg, {"samples", "tolerances"}, "charts-verify config");
    okamoto::ChartVerifyOptions opt;
    opt.samples = samples ? *samples : get_or(cfg, "samples", opt.samples);
    if (opt.samples < 1) throw ConfigError("samples must be >= 1");
    opt.seed = g.seed.value_or(opt.seed);
    if (cfg.contains("tolerances")) {
        const json& t = cfg["tolerances"];
        check_keys(t, {"round_trip", "pushforward", "jacobian", "energy", "difference"}, "tolerances");
        opt.tol_round_trip = get_or(t, "round_trip", opt.tol_round_trip);
        opt.tol_pushforward = get_or(t, "pushforward", opt.tol_pushforward);
        opt.tol_jacobian = get_or(t, "jacobian", opt.tol_jacobian);
        opt.tol_energy = get_or(t, "energy", opt.tol_energy);
        opt.tol_difference = get_or(t, "difference", opt.tol_difference);
    }
    if (!tamper.empty()) {
        try {
            opt.tamper = okamoto::chart_from_name(tamper);
        } catch (const okamoto::Error& e) {
            throw ConfigError(std::string("--tamper: ") + e.what());
        }
    }

    json echo;
    echo["samples"] = opt.samples;
    echo["seed"] = opt.seed;
    echo["tolerances"] = {{"round_trip", opt.tol_round_trip},
                          {"pushforward", opt.tol_pushforward},
                          {"jacobian", opt.tol_jacobian},
                          {"energy", opt.tol_energy},
                          {"difference", opt.tol_difference}};
    if (opt.tamper) echo["tamper"] = okamoto::chart_name(*opt.tamper);

    const fs::path dir = prepare_out(g);
    const auto report = okamoto::verify_charts(opt);
    json summary;
    summary["pass"] = report.pass;
    summary["failing_charts"] = json::array();
    for (const auto& r : report.rows)
        if (!r.pass) {
            summary["failing_charts"].push_back(okamoto::chart_name(r.chart));
            std::cerr << "chart " << okamoto::chart_name(r.chart) << " failed\n";
        }
    write_file(dir / "charts_verify.json", report.to_json() + "\n");
    write_run(dir, "charts-verify", echo, report.pass ? "ok" : "fail", summary);
    return report.pass ? Ok : InvariantFailure;
}

int cmd_integrate(const Globals& g) {
    const json cfg = load_config(g);
    check_keys(cfg, {"start", "path", "step", "options"}, "integrate config");
    if (!cfg.contains("start") || !cfg.contains("path")) throw ConfigError("integrate: 'start' and 'path' are required");
    const okamoto::AtlasState init = parse_start(cfg["start"]);
    json path_echo;
    const okamoto::PathSpec path = parse_path(cfg["path"], path_echo);
    if (std::abs(okamoto::piece_start(path.pieces.front()) - init.z) > 1e-12)
        throw ConfigError("path must start at start.z");
    const okamoto::StepControl ctl = parse_step(cfg.contains("step") ? cfg["step"] : json(), g);
    okamoto::IntegrateOptions opt;
    if (cfg.contains("options")) {
        const json& o = cfg["options"];
        check_keys(o, {"autonomous", "d_min", "detect_poles", "switch_charts", "bulge_retries", "bulge_factor"}, "options");
        opt.autonomous = get_or(o, "autonomous", opt.autonomous);
        opt.d_min = get_or(o, "d_min", opt.d_min);
        opt.detect_poles = get_or(o, "detect_poles", opt.detect_poles);
        opt.switch_charts = get_or(o, "switch_charts", opt.switch_charts);
        opt.bulge_retries = get_or(o, "bulge_retries", opt.bulge_retries);
        opt.bulge_factor = get_or(o, "bulge_factor", opt.bulge_factor);
        if (!(opt.d_min > 0) || opt.bulge_retries < 0 || !(opt.bulge_factor > 1))
            throw ConfigError("options: need d_min > 0, bulge_retries >= 0, bulge_factor > 1");
    }

    json echo;
    echo["start"] = start_json(init);
    echo["path"] = path_echo;
    echo["step"] = step_json(ctl);
    echo["options"] = {{"autonomous", opt.autonomous},
                       {"d_min", opt.d_min},
                       {"detect_poles", opt.detect_poles},
                       {"switch_charts", opt.switch_charts},
                       {"bulge_retries", opt.bulge_retries},
                       {"bulge_factor", opt.bulge_factor}};

    const fs::path dir = prepare_out(g);
    okamoto::Trajectory traj;
    std::string status = "ok";
    int code = Ok;
    json summary;
    try {
        traj = okamoto::integrate_path(init, path, ctl, opt);
    } catch (const okamoto::IntegrationError& e) {
        traj = e.partial();
        status = "partial";
        code = NumericFailure;
        summary["error"] = e.what();
        mark_incomplete(dir, e.what());
        std::cerr << e.what() << '\n';
    }
    json s = trajectory_summary(traj);
    for (auto& [k, v] : s.items()) summary[k] = v;
    write_file(dir / "trajectory.csv", okamoto::trajectory_csv(traj));
    write_file(dir / "poles.json", okamoto::pole_events_json(traj.events) + "\n");
    write_run(dir, "integrate", echo, status, summary);
    return code;
}

int cmd_pole_field(const Globals& g) {
    const json cfg = load_config(g);
    check_keys(cfg, {"seed", "region", "strategy", "rays", "rows", "dedup_radius", "threads", "bins", "step"},
               "pole-field config");
    if (!cfg.contains("seed") || !cfg.contains("region")) throw ConfigError("pole-field: 'seed' and 'region' are required");
    const okamoto::AtlasState seed = parse_start(cfg["seed"]);
    const json& r = cfg["region"];
    check_keys(r, {"lo", "hi"}, "region");
    if (!r.contains("lo") || !r.contains("hi")) throw ConfigError("region: need lo, hi");
    const okamoto::Rect region{get_cplx(r["lo"], "region.lo"), get_cplx(r["hi"], "region.hi")};
    if (region.empty()) throw ConfigError("region is empty");
    if (region.contains(0.0)) throw ConfigError("region contains z = 0");
    okamoto::PoleFieldOptions opt;
    const std::string strategy = get_or<std::string>(cfg, "strategy", "ray_fan");
    if (strategy == "ray_fan")
        opt.strategy = okamoto::CoverStrategy::RayFan;
    else if (strategy == "boustrophedon")
        opt.strategy = okamoto::CoverStrategy::Boustrophedon;
    else
        throw ConfigError("strategy must be 'ray_fan' or 'boustrophedon'");
    opt.rays = get_or(cfg, "rays", opt.rays);
    opt.rows = get_or(cfg, "rows", opt.rows);
    opt.dedup_radius = get_or(cfg, "dedup_radius", opt.dedup_radius);
    opt.threads = g.threads ? *g.threads : get_or(cfg, "threads", opt.threads);
    opt.ctl = parse_step(cfg.contains("step") ? cfg["step"] : json(), g);
    const int bins = get_or(cfg, "bins", 20);
    if (opt.rays < 1 || opt.rows < 1 || opt.threads < 1 || bins < 1 || !(opt.dedup_radius > 0))
        throw ConfigError("pole-field: rays, rows, threads, bins must be >= 1 and dedup_radius > 0");

    json echo;
    echo["seed"] = start_json(seed);
    echo["region"] = {{"lo", put_cplx(region.lo)}, {"hi", put_cplx(region.hi)}};
    echo["strategy"] = strategy;
    echo["rays"] = opt.rays;
    echo["rows"] = opt.rows;
    echo["dedup_radius"] = opt.dedup_radius;
    echo["threads"] = opt.threads;
    echo["bins"] = bins;
    echo["step"] = step_json(opt.ctl);

    const fs::path dir = prepare_out(g);
    okamoto::PoleFieldResult res;
    try {
        res = okamoto::pole_field(seed, region, opt);
    } catch (const okamoto::Error& e) {
        mark_incomplete(dir, e.what());
        write_run(dir, "pole-field", echo, "fail", {{"error", e.what()}});
        std::cerr << e.what() << '\n';
        return NumericFailure;
    }
    const auto spacings = okamoto::nearest_neighbor_spacings(res.events);
    write_file(dir / "poles.csv", okamoto::pole_field_csv(res.events));
    write_file(dir / "spacing_histogram.json", okamoto::spacing_histogram_json(spacings, bins) + "\n");
    json summary;
    summary["poles"] = res.events.size();
    summary["warnings"] = res.warnings;
    write_run(dir, "pole-field", echo, "ok", summary);
    return Ok;
}

int cmd_tritronquee(const Globals& g, std::optional<int> n_max) {
    const json cfg = load_config(g);
    check_keys(cfg, {"n_max", "require_from", "seed_radius", "turn_radius", "C", "step"}, "tritronquee config");
    // Rows below require_from are reported but may go unlocated: the expansion is poor there.
    const int require_from = get_or(cfg, "require_from", 3);
    okamoto::TritronqueeOptions opt;
    opt.n_max = n_max ? *n_max : get_or(cfg, "n_max", opt.n_max);
    opt.seed_radius = get_or(cfg, "seed_radius", opt.seed_radius);
    opt.turn_radius = get_or(cfg, "turn_radius", opt.turn_radius);
    if (cfg.contains("C")) {
        const json& c = cfg["C"];
        if (c.is_string()) {
            const std::string s = c.get<std::string>();
            if (s == "numeric")
                opt.C = okamoto::stokes_constant();
            else if (s == "printed")
                opt.C = okamoto::stokes_constant_printed();
            else
                throw ConfigError("C must be 'numeric', 'printed' or [re, im]");
        } else {
            opt.C = get_cplx(c, "C");
        }
    }
    if (cfg.contains("step") || g.tol) {
        const okamoto::StepControl base = opt.ctl;
        json step = cfg.contains("step") ? cfg["step"] : json::object();
        for (const auto& [k, v] : step_json(base).items())
            if (!step.contains(k)) step[k] = v;
        opt.ctl = parse_step(step, g);
    }
    if (opt.n_max < 1 || opt.n_max > 100) throw ConfigError("n_max must be in [1, 100]");
    if (require_from < 1) throw ConfigError("require_from must be >= 1");
    if (!(opt.seed_radius > opt.turn_radius) || !(opt.turn_radius > 0))
        throw ConfigError("need seed_radius > turn_radius > 0");
    if (opt.C == cplx(0)) throw ConfigError("C must be nonzero");

    json echo;
    echo["n_max"] = opt.n_max;
    echo["require_from"] = require_from;
    echo["seed_radius"] = opt.seed_radius;
    echo["turn_radius"] = opt.turn_radius;
    echo["C"] = put_cplx(opt.C);
    echo["step"] = step_json(opt.ctl);

    const fs::path dir = prepare_out(g);
    okamoto::TritronqueeResult res;
    try {
        res = okamoto::tritronquee_poles(opt);
    } catch (const okamoto::Error& e) {
        mark_incomplete(dir, e.what());
        write_run(dir, "tritronquee", echo, "fail", {{"error", e.what()}});
        std::cerr << e.what() << '\n';
        return NumericFailure;
    }
    write_file(dir / "tritronquee.csv", okamoto::tritronquee_csv(res));

    int located = 0, first_missing = 0;
    std::vector<double> x, y;
    for (const auto& r : res.rows) {
        if (r.found) {
            ++located;
            if (r.n >= 3) {
                x.push_back(std::log(static_cast<double>(r.n)));
                y.push_back(std::log(std::abs(r.located - r.newton)));
            }
        } else if (!first_missing && r.n >= require_from) {
            first_missing = r.n;
        }
    }
    json summary;
    summary["located"] = located;
    summary["requested"] = opt.n_max;
    summary["decay_exponent"] = x.size() >= 3 ? num_or_null(-slope(x, y)) : json(nullptr);
    summary["warnings"] = res.warnings;
    const bool complete = first_missing == 0;
    if (!complete) {
        summary["first_missing_n"] = first_missing;
        mark_incomplete(dir, "pole not located from n = " + std::to_string(first_missing));
    }
    write_run(dir, "tritronquee", echo, complete ? "ok" : "partial", summary);
    return complete ? Ok : NumericFailure;
}

int cmd_periods(const Globals& g) {
    const json cfg = load_config(g);
    check_keys(cfg, {"q", "ring", "asymptotic_order", "grid", "identity_samples"}, "periods config");
    std::vector<cplx> qs;
    json q_echo = json::array();
    if (cfg.contains("q")) {
        if (!cfg["q"].is_array()) throw ConfigError("q: expected an array");
        for (const auto& q : cfg["q"]) qs.push_back(get_cplx(q, "q"));
    }
    json ring_echo;
    if (cfg.contains("ring")) {
        const json& r = cfg["ring"];
        check_keys(r, {"radius", "phases"}, "ring");
        const double radius = get_or(r, "radius", 1000.0);
        const int phases = get_or(r, "phases", 8);
        if (!(radius > 0) || phases < 1) throw ConfigError("ring: need radius > 0, phases >= 1");
        for (int k = 0; k < phases; ++k) qs.push_back(std::polar(radius, 2 * std::numbers::pi * k / phases));
        ring_echo = {{"radius", radius}, {"phases", phases}};
    }
    if (!cfg.contains("q") && !cfg.contains("ring")) {
        for (int k = 0; k < 8; ++k) qs.push_back(std::polar(1000.0, 2 * std::numbers::pi * k / 8));
        ring_echo = {{"radius", 1000.0}, {"phases", 8}};
    }
    for (cplx q : qs) {
        if (okamoto::near_singular_level(q)) throw ConfigError("q is at a singular level");
        q_echo.push_back(put_cplx(q));
    }
    const int order = get_or(cfg, "asymptotic_order", 1);
    if (order < 0 || order > 1) throw ConfigError("asymptotic_order must be 0 or 1");
    const int identity_samples = get_or(cfg, "identity_samples", 200);
    if (identity_samples < 0) throw ConfigError("identity_samples must be >= 0");

    struct Grid {
        std::string basis = "hexagonal";
        cplx q{};
        cplx lo{-1.5, -1.5}, hi{1.5, 1.5};
        int nx = 121, ny = 121;
    };
    std::optional<Grid> grid;
    if (cfg.contains("grid") && !cfg["grid"].is_null()) {
        const json& gj = cfg["grid"];
        check_keys(gj, {"basis", "q", "lo", "hi", "nx", "ny"}, "grid");
        Grid gr;
        gr.basis = get_or<std::string>(gj, "basis", gr.basis);
        if (gr.basis != "hexagonal" && gr.basis != "q") throw ConfigError("grid.basis must be 'hexagonal' or 'q'");
        if (gr.basis == "q") {
            if (!gj.contains("q")) throw ConfigError("grid: basis 'q' needs q");
            gr.q = get_cplx(gj["q"], "grid.q");
            if (okamoto::near_singular_level(gr.q)) throw ConfigError("grid.q is at a singular level");
        }
        if (gj.contains("lo")) gr.lo = get_cplx(gj["lo"], "grid.lo");
        if (gj.contains("hi")) gr.hi = get_cplx(gj["hi"], "grid.hi");
        gr.nx = get_or(gj, "nx", gr.nx);
        gr.ny = get_or(gj, "ny", gr.ny);
        if (gr.nx < 2 || gr.ny < 2 || !(gr.hi.real() > gr.lo.real()) || !(gr.hi.imag() > gr.lo.imag()))
            throw ConfigError("grid: need nx, ny >= 2 and hi above-right of lo");
        grid = gr;
    }

    json echo;
    echo["q"] = q_echo;
    if (!ring_echo.is_null()) echo["ring"] = ring_echo;
    echo["asymptotic_order"] = order;
    echo["identity_samples"] = identity_samples;
    echo["seed"] = g.seed.value_or(1);
    if (grid) {
        echo["grid"] = {{"basis", grid->basis}, {"lo", put_cplx(grid->lo)}, {"hi", put_cplx(grid->hi)},
                        {"nx", grid->nx}, {"ny", grid->ny}};
        if (grid->basis == "q") echo["grid"]["q"] = put_cplx(grid->q);
    }

    const fs::path dir = prepare_out(g);
    std::vector<okamoto::PeriodBasis> numeric, asym;
    json summary;
    double worst_asym = 0, worst_identity = 0;
    std::mt19937_64 rng(g.seed.value_or(1));
    std::uniform_real_distribution<double> unit(-0.5, 0.5);
    try {
        for (cplx q : qs) {
            const auto b = okamoto::period_numeric(q);
            numeric.push_back(b);
            if (std::abs(q) >= 100) {
                const auto a = okamoto::period_basis_asymptotic(q, order);
                asym.push_back(a);
                worst_asym = std::max({worst_asym, std::abs(a.p1 - b.p1) / std::abs(b.p1),
                                       std::abs(a.p2 - b.p2) / std::abs(b.p2)});
            }
            // Identity (wp')^2 = 4 wp^3 + 2 wp + q at random points of the cell.
            for (int k = 0; k < identity_samples; ++k) {
                const cplx z = unit(rng) * b.p1 + unit(rng) * b.p2;
                if (std::min({std::abs(z), std::abs(z - b.p1), std::abs(z + b.p1), std::abs(z - b.p2),
                              std::abs(z + b.p2)}) < 0.05 * std::abs(b.p1))
                    continue;
                const auto [w, dw] = okamoto::weierstrass_p(z, b);
                const double scale = std::max({std::norm(dw), std::abs(4.0 * w * w * w), std::abs(q), 1.0});
                worst_identity = std::max(worst_identity, std::abs(dw * dw - 4.0 * w * w * w - 2.0 * w - q) / scale);
            }
        }
    } catch (const okamoto::Error& e) {
        write_file(dir / "periods.csv", okamoto::period_table_csv(numeric));
        mark_incomplete(dir, e.what());
        write_run(dir, "periods", echo, "fail", {{"error", e.what()}});
        std::cerr << e.what() << '\n';
        return NumericFailure;
    }
    write_file(dir / "periods.csv", okamoto::period_table_csv(numeric));
    write_file(dir / "periods_asymptotic.csv", okamoto::period_table_csv(asym));
    if (grid) {
        const auto basis = grid->basis == "q" ? okamoto::period_numeric(grid->q) : okamoto::hexagonal_basis();
        write_file(dir / "wp_grid.csv", okamoto::wp_grid_csv(basis, grid->lo, grid->hi, grid->nx, grid->ny));
    }
    summary["levels"] = numeric.size();
    summary["max_relative_asymptotic_deviation"] = asym.empty() ? json(nullptr) : json(worst_asym);
    summary["max_identity_residual"] = worst_identity;
    write_run(dir, "periods", echo, "ok", summary);
    return Ok;
}

int cmd_laurent(const Globals& g) {
    const json cfg = load_config(g);
    check_keys(cfg, {"zeta", "a", "order", "r_min", "r_max", "samples", "direction"}, "laurent config");
    const cplx zeta = cfg.contains("zeta") ? get_cplx(cfg["zeta"], "zeta") : cplx(10.0);
    const cplx a = cfg.contains("a") ? get_cplx(cfg["a"], "a") : cplx{};
    const int order = get_or(cfg, "order", 4);
    const double r_min = get_or(cfg, "r_min", 1e-3);
    const double r_max = get_or(cfg, "r_max", 1e-1);
    const int samples = get_or(cfg, "samples", 21);
    const double direction = get_or(cfg, "direction", 0.0);
    if (zeta == cplx(0)) throw ConfigError("zeta must be nonzero");
    if (order < -2 || order > 4) throw ConfigError("order must be in [-2, 4]");
    if (!(r_min > 0) || !(r_max > r_min) || samples < 2) throw ConfigError("need 0 < r_min < r_max, samples >= 2");

    json echo;
    echo["zeta"] = put_cplx(zeta);
    echo["a"] = put_cplx(a);
    echo["order"] = order;
    echo["r_min"] = r_min;
    echo["r_max"] = r_max;
    echo["samples"] = samples;
    echo["direction"] = direction;

    const fs::path dir = prepare_out(g);
    const auto coeffs = okamoto::laurent_coeffs(zeta, a);
    json cj = json::array();
    for (int n = -2; n <= 4; ++n) cj.push_back({{"n", n}, {"c", put_cplx(coeffs[n])}});
    write_file(dir / "laurent_coeffs.json", cj.dump(2) + "\n");

    std::string csv = "re_dz,im_dz,re_u_oracle,im_u_oracle,re_u_laurent,im_u_laurent,abs_err,re_zE,im_zE\n";
    std::vector<double> x, y;
    char buf[512];
    try {
        for (int k = 0; k < samples; ++k) {
            const double r = r_min * std::pow(r_max / r_min, static_cast<double>(k) / (samples - 1));
            const cplx dz = std::polar(r, direction);
            const auto s = okamoto::pole_oracle(zeta, a, zeta + dz);
            const auto res = okamoto::pole_oracle_residual(zeta, a, zeta + dz, order);
            const cplx ul = okamoto::laurent_eval(zeta, a, zeta + dz, order);
            const double err = std::abs(res.laurent_error);
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", dz.real(),
                          dz.imag(), s.u1.real(), s.u1.imag(), ul.real(), ul.imag(), err, res.residue_product.real(),
                          res.residue_product.imag());
            csv += buf;
            if (err > 0) {
                x.push_back(std::log(r));
                y.push_back(std::log(err));
            }
        }
    } catch (const okamoto::Error& e) {
        write_file(dir / "laurent.csv", csv);
        mark_incomplete(dir, e.what());
        write_run(dir, "laurent", echo, "fail", {{"error", e.what()}});
        std::cerr << e.what() << '\n';
        return NumericFailure;
    }
    write_file(dir / "laurent.csv", csv);
    json summary;
    summary["error_exponent"] = x.size() >= 2 ? num_or_null(slope(x, y)) : json(nullptr);
    write_run(dir, "laurent", echo, "ok", summary);
    return Ok;
}

}  // namespace cli
