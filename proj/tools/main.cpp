#include "harmspace/errors.hpp"
#include "harmspace/pipeline.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

struct CommonOptions {
    std::string config_path;
    std::string method;
    std::string channels;
    std::string out;
    std::optional<std::uint64_t> seed;
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
    cmd->add_option("--config", opts.config_path, "Run configuration file (key = value lines)");
    cmd->add_option("--method", opts.method, "Override method: FFT, HFFT, HAR or HARH");
    cmd->add_option("--channels", opts.channels, "Override channel set: A1, A2 or A1+A2");
    cmd->add_option("--seed", opts.seed, "Override the master seed");
}

// Config plus command-line overrides. --out replaces the directory the
// subcommand writes into.
harmspace::RunConfig load_config(const CommonOptions& opts, bool out_is_data_dir) {
    harmspace::RunConfig cfg;
    if (!opts.config_path.empty()) cfg = harmspace::parse_config_file(opts.config_path);
    if (!opts.method.empty()) cfg.method = harmspace::method_from_string(opts.method);
    if (!opts.channels.empty()) cfg.channels = harmspace::channel_set_from_string(opts.channels);
    if (opts.seed) cfg.seed = *opts.seed;
    if (!opts.out.empty()) {
        if (out_is_data_dir) cfg.paths.data_dir = opts.out;
        else cfg.paths.out_dir = opts.out;
    }
    cfg.validate();
    return cfg;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"harmspace: harmonic-space vibration features with operating-condition "
                 "adjustment, baselines and the evaluation protocol"};
    app.require_subcommand(1);

    CommonOptions synth_opts;
    auto* synth = app.add_subcommand("synth", "Generate a synthetic bearing dataset");
    add_common(synth, synth_opts);
    synth->add_option("--out", synth_opts.out, "Dataset directory (defaults to paths.data_dir)");

    CommonOptions extract_opts;
    auto* extract = app.add_subcommand("extract", "Extract features for the configured method");
    add_common(extract, extract_opts);
    extract->add_option("--out", extract_opts.out, "Output directory (defaults to paths.out_dir)");

    CommonOptions adjust_opts;
    std::string split_spec;
    bool allow_mixed = false;
    auto* adjust = app.add_subcommand("adjust", "Fit and persist condition-adjustment models");
    add_common(adjust, adjust_opts);
    adjust->add_option("--out", adjust_opts.out, "Output directory (defaults to paths.out_dir)");
    adjust->add_option("--split", split_spec, "Only this split, as BEARING:RPM:NM");
    adjust->add_flag("--allow-mixed-training", allow_mixed,
                     "Fit the adjustment on faulty training rows too");

    CommonOptions eval_opts;
    bool eval_allow_mixed = false;
    auto* eval = app.add_subcommand("eval", "Run the split/PCA/kNN evaluation protocol");
    add_common(eval, eval_opts);
    eval->add_option("--out", eval_opts.out, "Output directory (defaults to paths.out_dir)");
    eval->add_flag("--allow-mixed-training", eval_allow_mixed,
                   "Fit adjustments on faulty training rows too");

    std::vector<std::string> run_dirs;
    auto* report = app.add_subcommand("report", "Combine eval runs into a comparison table");
    report->add_option("run_dirs", run_dirs, "Eval output directories")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help and friends
        app.exit(e);
        return 2;
    }

    try {
        if (synth->parsed()) {
            const auto cfg = load_config(synth_opts, true);
            const auto manifest = harmspace::run_synth(cfg);
            std::cout << "wrote " << manifest.rows.size() << " recordings, manifest at "
                      << (std::filesystem::path(cfg.paths.data_dir) / "manifest.csv").string()
                      << "\n";
        } else if (extract->parsed()) {
            const auto cfg = load_config(extract_opts, false);
            const auto store = harmspace::run_extract(cfg);
            std::cout << "feature store written to " << store.string() << "\n";
        } else if (adjust->parsed()) {
            const auto cfg = load_config(adjust_opts, false);
            const std::optional<std::string> filter =
                split_spec.empty() ? std::nullopt : std::optional<std::string>(split_spec);
            const auto dir = harmspace::run_adjust(cfg, allow_mixed, filter);
            std::cout << "adjustment models written under " << dir.string() << "\n";
        } else if (eval->parsed()) {
            const auto cfg = load_config(eval_opts, false);
            const auto result = harmspace::run_eval(cfg, eval_allow_mixed);
            std::cout << "method " << harmspace::to_string(result.method) << " ("
                      << harmspace::to_string(result.channels) << ")\n"
                      << "  accuracy:   " << result.aggregates.accuracy << "\n"
                      << "  ocid error: " << result.aggregates.ocid_error << "\n"
                      << "reports written under " << harmspace::eval_dir(cfg).string() << "\n";
        } else if (report->parsed()) {
            std::vector<std::filesystem::path> dirs(run_dirs.begin(), run_dirs.end());
            std::cout << harmspace::run_report(dirs);
        }
    } catch (const harmspace::config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const harmspace::data_error& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
