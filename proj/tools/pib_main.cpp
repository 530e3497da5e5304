#include "pib/runner.hpp"

#include "CLI11.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    CLI::App app{"Predictive information bottleneck laboratory"};
    app.require_subcommand(1);

    pib::cli::RunOverrides overrides;
    std::string config_path;
    std::string out;
    std::uint64_t seed = 0;
    int threads = 0;

    auto* run = app.add_subcommand("run", "Run an experiment described by a JSON config");
    run->add_option("config", config_path, "Config file")->required();
    run->add_option("--out", out, "Output path (overrides the config's \"output\")");
    run->add_option("--seed", seed, "Seed override");
    run->add_option("--threads", threads, "OpenMP worker count")->check(CLI::PositiveNumber);

    auto* verify = app.add_subcommand("verify", "Run the invariant suite on built-in worlds");
    verify->add_option("--out", out, "Write the report here instead of stdout");
    verify->add_option("--seed", seed, "Seed for random channels and models");
    verify->add_option("--threads", threads, "OpenMP worker count")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : pib::cli::exit_config_error;
    }

    const CLI::App* active = run->parsed() ? run : verify;
    if (active->count("--out") > 0) {
        overrides.out = out;
    }
    if (active->count("--seed") > 0) {
        overrides.seed = seed;
    }
    if (active->count("--threads") > 0) {
        overrides.threads = threads;
    }

    if (run->parsed()) {
        return pib::cli::run(config_path, overrides, std::cout, std::cerr);
    }
    return pib::cli::verify(overrides, std::cout, std::cerr);
}
