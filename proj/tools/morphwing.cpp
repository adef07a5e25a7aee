#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "morphwing/errors.hpp"
#include "morphwing/run.hpp"

namespace {

struct CommonArgs {
    std::string config_path;
    std::string out_dir;
    std::vector<std::string> sets;
};

void add_common(CLI::App* sub, CommonArgs& args) {
    sub->add_option("--config", args.config_path, "path to the JSON project config")
        ->envname("MORPHWING_CONFIG")
        ->required();
    sub->add_option("--out", args.out_dir, "output directory (overrides output.directory)");
    sub->add_option("--set", args.sets,
                    "override a config leaf, e.g. --set linkage.l1_mm=27.5 (repeatable)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"morphwing: four-bar morphing-wing design and analysis toolkit"};
    app.require_subcommand(1);

    CommonArgs args;
    double phase_deg = 0.0;
    std::uint64_t seed = 0;

    CLI::App* solve = app.add_subcommand("solve", "evaluate one linkage phase");
    add_common(solve, args);
    CLI::Option* phase_opt =
        solve->add_option("--phase", phase_deg, "phase in degrees")->required();

    CLI::App* classify = app.add_subcommand("classify", "Grashof classification report");
    add_common(classify, args);

    CLI::App* sweep = app.add_subcommand("sweep", "sweep the full phase circle");
    add_common(sweep, args);

    CLI::App* calibrate =
        app.add_subcommand("calibrate", "fit the phase mapping to psi1 anchors");
    add_common(calibrate, args);

    CLI::App* synthesize =
        app.add_subcommand("synthesize", "dimensional synthesis against target bands");
    add_common(synthesize, args);
    CLI::Option* seed_opt =
        synthesize->add_option("--seed", seed, "override synthesis.rng_seed");

    CLI::App* states =
        app.add_subcommand("states", "select the three flight states and compare to anchors");
    add_common(states, args);

    CLI::App* report = app.add_subcommand("report", "run every analysis into one directory");
    add_common(report, args);
    CLI::Option* report_phase_opt =
        report->add_option("--phase", phase_deg, "also evaluate one phase");
    CLI::Option* report_seed_opt = report->add_option("--seed", seed, "override synthesis.rng_seed");

    CLI11_PARSE(app, argc, argv);

    try {
        std::vector<morphwing::ConfigOverride> overrides;
        overrides.reserve(args.sets.size());
        for (const auto& s : args.sets) overrides.push_back(morphwing::parse_override(s));

        const morphwing::ProjectConfig config =
            morphwing::load_config(args.config_path, overrides);

        morphwing::RunOptions options;
        for (CLI::App* sub : {solve, classify, sweep, calibrate, synthesize, states, report}) {
            if (sub->parsed()) options.command = sub->get_name();
        }
        if (phase_opt->count() > 0 || report_phase_opt->count() > 0) {
            options.phase_deg = phase_deg;
        }
        if (seed_opt->count() > 0 || report_seed_opt->count() > 0) options.seed = seed;
        if (!args.out_dir.empty()) options.out_dir = args.out_dir;

        const morphwing::RunManifest manifest = morphwing::run_command(options, config);
        std::cout << options.command << ": wrote " << manifest.outputs.size()
                  << " file(s) to "
                  << (options.out_dir ? *options.out_dir : config.output.directory) << "\n";
        return 0;
    } catch (const morphwing::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
