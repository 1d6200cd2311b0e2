#include <fstream>
#include <sstream>

#include "cli/cli.hpp"

namespace cli {

using okamoto::cplx;

json load_config(const Globals& g) {
    if (g.config_path.empty()) return json::object();
    std::ifstream in(g.config_path);
    if (!in) throw ConfigError("cannot read config " + g.config_path);
    json j;
    try {
        j = json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("config " + g.config_path + ": " + e.what());
    }
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    return j;
}

void check_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
    if (!j.is_object()) throw ConfigError(where + ": expected an object");
    for (const auto& [k, v] : j.items()) {
        bool ok = false;
        for (const char* a : allowed) ok = ok || k == a;
        if (!ok) throw ConfigError(where + ": unknown key '" + k + "'");
    }
}

cplx get_cplx(const json& j, const std::string& where) {
    if (j.is_number()) return j.get<double>();
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return {j[0].get<double>(), j[1].get<double>()};
    throw ConfigError(where + ": expected a number or [re, im]");
}

json put_cplx(cplx z) { return json::array({z.real(), z.imag()}); }

okamoto::StepControl parse_step(const json& j, const Globals& g) {
    okamoto::StepControl c;
    if (!j.is_null()) {
        check_keys(j, {"rel_tol", "abs_tol", "h_init", "h_min", "max_steps"}, "step");
        c.rel_tol = get_or(j, "rel_tol", c.rel_tol);
        c.abs_tol = get_or(j, "abs_tol", c.abs_tol);
        c.h_init = get_or(j, "h_init", c.h_init);
        c.h_min = get_or(j, "h_min", c.h_min);
        c.max_steps = get_or(j, "max_steps", c.max_steps);
    }
    if (g.tol) {
        c.rel_tol = *g.tol;
        c.abs_tol = *g.tol * 1e-2;
    }
    if (!(c.rel_tol > 0) || !(c.abs_tol > 0) || !(c.h_init > 0) || !(c.h_min > 0) || c.max_steps < 1)
        throw ConfigError("step: tolerances and step sizes must be positive");
    return c;
}

json step_json(const okamoto::StepControl& c) {
    return {{"rel_tol", c.rel_tol},
            {"abs_tol", c.abs_tol},
            {"h_init", c.h_init},
            {"h_min", c.h_min},
            {"max_steps", c.max_steps}};
}

okamoto::AtlasState parse_start(const json& j) {
    if (!j.is_object() || !j.contains("z")) throw ConfigError("start: 'z' is required");
    const cplx z = get_cplx(j["z"], "start.z");
    if (z == cplx(0)) throw ConfigError("start.z must be nonzero");
    try {
        if (j.contains("u1") || j.contains("u2")) {
            check_keys(j, {"z", "u1", "u2", "chart"}, "start");
            const auto chart = okamoto::chart_from_name(get_or<std::string>(j, "chart", "B"));
            const cplx u1 = j.contains("u1") ? get_cplx(j["u1"], "start.u1") : cplx{};
            const cplx u2 = j.contains("u2") ? get_cplx(j["u2"], "start.u2") : cplx{};
            return {z, okamoto::base_to_chart(chart, u1, u2, z)};
        }
        check_keys(j, {"z", "chart", "c1", "c2"}, "start");
        okamoto::ChartPoint p;
        p.chart = okamoto::chart_from_name(get_or<std::string>(j, "chart", "B"));
        if (j.contains("c1")) p.c1 = get_cplx(j["c1"], "start.c1");
        if (j.contains("c2")) p.c2 = get_cplx(j["c2"], "start.c2");
        return {z, p};
    } catch (const okamoto::Error& e) {
        throw ConfigError(std::string("start: ") + e.what());
    }
}

json start_json(const okamoto::AtlasState& s) {
    return {{"z", put_cplx(s.z)},
            {"chart", okamoto::chart_name(s.point.chart)},
            {"c1", put_cplx(s.point.c1)},
            {"c2", put_cplx(s.point.c2)}};
}

void write_file(const std::filesystem::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    out << text;
    if (!out) throw std::runtime_error("cannot write " + p.string());
}

std::filesystem::path prepare_out(const Globals& g) {
    std::filesystem::path dir(g.out);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw ConfigError("cannot create output directory " + g.out);
    std::filesystem::remove(dir / "INCOMPLETE", ec);
    return dir;
}

void write_run(const std::filesystem::path& dir, const std::string& command, const json& config,
               const std::string& status, const json& summary) {
    json j;
    j["command"] = command;
    j["config"] = config;
    j["status"] = status;
    j["summary"] = summary;
    write_file(dir / "run.json", j.dump(2) + "\n");
}

}  // namespace cli
