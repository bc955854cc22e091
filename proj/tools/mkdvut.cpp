// mkdvut: spectra | grcheck | rhsolve | compare | generate

#include <CLI11.hpp>

#include "mkdv/pipeline.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Unified-transform toolkit for mKdV on a finite interval"};
    app.set_version_flag("--version", std::string(MKDV_VERSION));
    app.require_subcommand(1, 1);

    std::string config;
    mkdv::CommandOptions opt;
    std::string out_dir = ".";
    app.add_option("--config", config, "Run configuration (key = value)")->required();
    app.add_option("--out", out_dir, "Output directory");
    app.add_flag("--override-gr", opt.override_gr, "Proceed despite a failing global-relation verdict");
    app.add_flag("--quiet", opt.quiet, "Suppress progress output");
    app.fallthrough();

    for (const char* verb : {"spectra", "grcheck", "rhsolve", "compare", "generate"}) app.add_subcommand(verb);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : mkdv::kExitInput;
    }
    opt.out_dir = out_dir;
    return mkdv::run_command(app.get_subcommands().front()->get_name(), config, opt);
}
