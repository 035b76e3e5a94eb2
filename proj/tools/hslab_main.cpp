// hslab: Hele-Shaw interface laboratory.
//
// Subcommands:
//   run      execute the job described by a config file
//   compare  cross-method comparison over the configured eps schedule
//   verify   asymptotics self-checks (exit 4 when any check fails)
//   plot     render run artifacts as an SVG figure

#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hslab/config.hpp"
#include "hslab/errors.hpp"
#include "hslab/figures.hpp"
#include "hslab/harness.hpp"
#include "hslab/io.hpp"

namespace {

using namespace hslab;

struct CommonFlags {
    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    bool seed_set = false;
    bool quiet = false;
};

void add_common(CLI::App* cmd, CommonFlags& flags, bool config_required) {
    auto* opt = cmd->add_option("--config", flags.config_path, "config file path");
    if (config_required)
        opt->required();
    cmd->add_option("--out", flags.out_dir, "output directory (overrides config)");
    cmd->add_option("--seed", flags.seed, "random seed (overrides config)")
        ->each([&flags](const std::string&) { flags.seed_set = true; });
    cmd->add_flag("--quiet", flags.quiet, "suppress progress output");
}

harness::RunConfig load_with_overrides(const CommonFlags& flags) {
    harness::RunConfig cfg = flags.config_path.empty()
                                 ? harness::RunConfig{}
                                 : harness::load_config(flags.config_path);
    if (!flags.out_dir.empty())
        cfg.output.directory = flags.out_dir;
    if (flags.seed_set)
        cfg.numerics.seed = flags.seed;
    return cfg;
}

int exit_code_for(const Error& e) {
    return e.code() == ErrorCode::ConfigInvalid ? 2 : 3;
}

void note(const CommonFlags& flags, const std::string& line) {
    if (!flags.quiet)
        std::cout << line << "\n";
}

int cmd_run(const CommonFlags& flags) {
    const harness::RunConfig cfg = load_with_overrides(flags);
    note(flags, std::string("running method ") + harness::to_string(cfg.method) +
                    " into " + cfg.output.directory);
    if (cfg.method == harness::Method::Compare) {
        const harness::ComparisonReport rep = harness::compare_methods(cfg);
        for (std::size_t i = 0; i < rep.eps_values.size(); ++i)
            note(flags, "eps " + io::format_double(rep.eps_values[i]) + ": hausdorff " +
                            io::format_double(rep.hausdorff_distances[i]) + " (" +
                            io::format_double(rep.runtimes_seconds[i]) + " s)");
        note(flags, std::string("monotone: ") + (rep.monotone_flag ? "yes" : "no"));
        return rep.monotone_flag ? 0 : 4;
    }
    const harness::RunArtifacts artifacts = harness::run(cfg);
    note(flags, "wrote " + std::to_string(artifacts.files.size()) + " files");
    if (cfg.method == harness::Method::VerifyAsymptotics) {
        const harness::VerifyOutcome outcome = harness::verify_asymptotics(cfg);
        for (const auto& c : outcome.checks)
            note(flags, c.name + ": " + (c.pass ? "pass" : "FAIL"));
        return outcome.all_pass() ? 0 : 4;
    }
    return 0;
}

int cmd_compare(const CommonFlags& flags) {
    harness::RunConfig cfg = load_with_overrides(flags);
    cfg.method = harness::Method::Compare;
    note(flags, "comparing methods into " + cfg.output.directory);
    const harness::ComparisonReport rep = harness::compare_methods(cfg);
    for (std::size_t i = 0; i < rep.eps_values.size(); ++i)
        note(flags, "eps " + io::format_double(rep.eps_values[i]) + ": hausdorff " +
                        io::format_double(rep.hausdorff_distances[i]) + " (" +
                        io::format_double(rep.runtimes_seconds[i]) + " s)");
    note(flags, "sheet run: " + io::format_double(rep.sheet_runtime_seconds) + " s");
    note(flags, std::string("monotone: ") + (rep.monotone_flag ? "yes" : "no"));
    return rep.monotone_flag ? 0 : 4;
}

int cmd_verify(const CommonFlags& flags) {
    harness::RunConfig cfg = load_with_overrides(flags);
    cfg.method = harness::Method::VerifyAsymptotics;
    harness::run(cfg);
    const harness::VerifyOutcome outcome = harness::verify_asymptotics(cfg);
    for (const auto& c : outcome.checks)
        note(flags, c.name + ": " + (c.pass ? "pass" : "FAIL") + " (value " +
                        io::format_double(c.value) + ", bound " +
                        io::format_double(c.bound) + ")");
    if (!outcome.all_pass()) {
        std::cerr << "verification failed\n";
        return 4;
    }
    note(flags, "all checks passed");
    return 0;
}

int cmd_plot(const std::vector<std::string>& artifacts, const std::string& kind,
             const std::string& out_path, bool quiet) {
    figures::emit_figure(artifacts, figures::kind_from_string(kind), out_path);
    if (!quiet)
        std::cout << "wrote " << out_path << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hele-Shaw interface laboratory"};
    app.require_subcommand(1);

    CommonFlags run_flags, compare_flags, verify_flags;
    auto* run_cmd = app.add_subcommand("run", "execute a configured job");
    add_common(run_cmd, run_flags, true);
    auto* compare_cmd = app.add_subcommand("compare", "cross-method comparison");
    add_common(compare_cmd, compare_flags, true);
    auto* verify_cmd = app.add_subcommand("verify", "asymptotics self-checks");
    add_common(verify_cmd, verify_flags, false);

    std::vector<std::string> plot_artifacts;
    std::string plot_kind, plot_out = "figure.svg";
    bool plot_quiet = false;
    auto* plot_cmd = app.add_subcommand("plot", "render artifacts as SVG");
    plot_cmd->add_option("artifacts", plot_artifacts, "artifact files")->required();
    plot_cmd
        ->add_option("--kind", plot_kind,
                     "interface-overlay | field-heatmap | dispersion-curve")
        ->required();
    plot_cmd->add_option("--out", plot_out, "output SVG path");
    plot_cmd->add_flag("--quiet", plot_quiet, "suppress progress output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (run_cmd->parsed())
            return cmd_run(run_flags);
        if (compare_cmd->parsed())
            return cmd_compare(compare_flags);
        if (verify_cmd->parsed())
            return cmd_verify(verify_flags);
        if (plot_cmd->parsed())
            return cmd_plot(plot_artifacts, plot_kind, plot_out, plot_quiet);
    } catch (const hslab::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
