#include <iostream>

#include "CLI11.hpp"
#include "cli/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Painleve I in Boutroux coordinates: batch computations with CSV/JSON output"};
    app.require_subcommand(1);
    cli::Globals g;
    app.add_option("--config", g.config_path, "JSON config file")->check(CLI::ExistingFile);
    app.add_option("--out", g.out, "output directory")->capture_default_str();
    app.add_option("--seed", g.seed, "RNG seed");
    app.add_option("--tol", g.tol, "relative step tolerance (absolute is 1e-2 of it)")->check(CLI::PositiveNumber);
    app.add_option("--threads", g.threads, "worker threads")->check(CLI::PositiveNumber);

    std::optional<int> samples, n_max;
    std::string tamper;
    auto* verify = app.add_subcommand("charts-verify", "check chart maps, pushforwards, Jacobians and energies");
    verify->add_option("--samples", samples, "samples per chart");
    verify->add_option("--tamper", tamper)->group("");  // fault injection for testing the verifier
    auto* integrate = app.add_subcommand("integrate", "integrate along a path from a config");
    auto* field = app.add_subcommand("pole-field", "locate poles in a rectangle");
    auto* tri = app.add_subcommand("tritronquee", "predicted vs located poles of the tritronquee solution");
    tri->add_option("--n-max", n_max, "last pole index");
    auto* periods = app.add_subcommand("periods", "period lattices and the wp grid");
    auto* laurent = app.add_subcommand("laurent", "Laurent expansion vs the pole oracle");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return cli::ConfigFailure;
    }

    try {
        if (*verify) return cli::cmd_charts_verify(g, samples, tamper);
        if (*integrate) return cli::cmd_integrate(g);
        if (*field) return cli::cmd_pole_field(g);
        if (*tri) return cli::cmd_tritronquee(g, n_max);
        if (*periods) return cli::cmd_periods(g);
        if (*laurent) return cli::cmd_laurent(g);
    } catch (const cli::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return cli::ConfigFailure;
    } catch (const okamoto::Error& e) {
        std::cerr << e.what() << '\n';
        return e.code() == okamoto::ErrorCode::ConfigError ? cli::ConfigFailure : cli::NumericFailure;
    } catch (const std::exception& e) {
        std::cerr << e.what() << '\n';
        return cli::NumericFailure;
    }
    return cli::ConfigFailure;
}
