#pragma once

#include <cstdint>
#include <filesystem>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "okamoto/integrator.hpp"

namespace cli {

using json = nlohmann::ordered_json;

enum Exit : int { Ok = 0, InvariantFailure = 1, NumericFailure = 2, ConfigFailure = 64 };

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Globals {
    std::string config_path;
    std::string out = "out";
    std::optional<std::uint64_t> seed;
    std::optional<double> tol;
    std::optional<int> threads;
};

// Loaded config file (empty object without --config).
json load_config(const Globals& g);

// Rejects keys outside `allowed`.
void check_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& where);

okamoto::cplx get_cplx(const json& j, const std::string& where);
json put_cplx(okamoto::cplx z);

template <class T>
T get_or(const json& j, const char* key, T fallback) {
    if (!j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw ConfigError(std::string("bad value for '") + key + "'");
    }
}

okamoto::StepControl parse_step(const json& j, const Globals& g);
json step_json(const okamoto::StepControl& c);

// {"z", "chart", "c1", "c2"} or {"z", "u1", "u2"}.
okamoto::AtlasState parse_start(const json& j);
json start_json(const okamoto::AtlasState& s);

void write_file(const std::filesystem::path& p, const std::string& text);
std::filesystem::path prepare_out(const Globals& g);

// run.json: command, effective config, status and summary.
void write_run(const std::filesystem::path& dir, const std::string& command, const json& config,
               const std::string& status, const json& summary);

int cmd_charts_verify(const Globals& g, std::optional<int> samples, const std::string& tamper);
int cmd_integrate(const Globals& g);
int cmd_pole_field(const Globals& g);
int cmd_tritronquee(const Globals& g, std::optional<int> n_max);
int cmd_periods(const Globals& g);
int cmd_laurent(const Globals& g);

}  // namespace cli
