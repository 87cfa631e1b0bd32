// Command-line front end; all work happens behind the C API.

#include <cstdint>
#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "twostrain.h"

int main(int argc, char** argv) {
    CLI::App app{"two-strain epidemic model with asymmetric temporary "
                 "immunity and partial cross-immunity"};
    app.require_subcommand(1);

    std::string config;
    std::string out_dir = ".";
    std::uint64_t seed = 0;
    bool reproducible = false;

    const char* names[] = {"simulate", "analyze", "phase", "scan", "fit"};
    const char* blurbs[] = {
        "integrate the full or reduced model and write the trajectory",
        "steady states, reproduction numbers and region classification",
        "nullclines, vector field and switching line of the reduced model",
        "region or invasion-number grid over two parameters",
        "least-squares fit to biweekly strain-split incidence data",
    };
    CLI::Option* seed_opts[5] = {};
    for (int i = 0; i < 5; ++i) {
        CLI::App* sub = app.add_subcommand(names[i], blurbs[i]);
        sub->add_option("--config", config, "run configuration file")
            ->required();
        sub->add_option("--out", out_dir, "output directory");
        seed_opts[i] =
            sub->add_option("--seed", seed, "override the configured seed");
        sub->add_flag("--reproducible", reproducible,
                      "suppress timestamp header lines");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : 2;
    }

    CLI::App* sub = app.get_subcommands().front();
    int index = 0;
    for (int i = 0; i < 5; ++i) {
        if (sub->get_name() == names[i]) {
            index = i;
        }
    }
    const int has_seed = seed_opts[index]->count() > 0 ? 1 : 0;

    const ts_status status =
        ts_run_command(sub->get_name().c_str(), config.c_str(),
                       out_dir.c_str(), seed, has_seed, reproducible ? 1 : 0);
    if (status != TS_OK) {
        std::fprintf(stderr, "error (%s): %s\n", ts_status_name(status),
                     ts_last_error_message());
    }
    return ts_status_exit_code(status);
}
