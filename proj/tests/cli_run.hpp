#pragma once

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

namespace clitest {

namespace fs = std::filesystem;

inline std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

inline nlohmann::json read_json(const fs::path& p) { return nlohmann::json::parse(slurp(p)); }

// Fresh scratch directory under the system temp dir.
inline fs::path scratch(const std::string& name) {
    const fs::path d = fs::temp_directory_path() / ("okamoto_cli_" + name);
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
}

inline std::string config_path(const std::string& name) {
    return std::string(OKAMOTO_SOURCE_DIR) + "/configs/" + name;
}

// Runs the CLI with `args`, stderr to <out>/stderr.txt; returns the exit status.
inline int run(const std::string& args, const fs::path& out) {
    fs::create_directories(out);
    const std::string cmd =
        std::string("\"") + OKAMOTO_CLI_PATH + "\" --out \"" + out.string() + "\" " + args + " 2> \"" +
        (out / "stderr.txt").string() + "\"";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

inline fs::path write_config(const fs::path& dir, const std::string& name, const std::string& text) {
    fs::create_directories(dir);
    const fs::path p = dir / name;
    std::ofstream(p) << text;
    return p;
}

}  // namespace clitest
