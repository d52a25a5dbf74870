// Command-line front end: seeded Monte-Carlo sweeps, single-trial correlation
// traces and CSV-to-SVG replotting.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <string>

#include "ddomp/dictionary.hpp"
#include "ddomp/harness.hpp"
#include "ddomp/seed.hpp"
#include "ddomp/window.hpp"

namespace fs = std::filesystem;

namespace {

struct CommonOpts {
    std::string config_path;
    std::string out_dir;
    std::string solvers;
    std::uint64_t seed = 0;
    bool seed_set = false;
    int workers = -1;
};

ddomp::ExperimentConfig load_config(const CommonOpts& opts) {
    ddomp::KeyValueConfig file;
    if (!opts.config_path.empty()) file = ddomp::KeyValueConfig::load(opts.config_path);
    // CLI flags override file values
    if (opts.seed_set) file.set("run.seed", std::to_string(opts.seed));
    if (opts.workers >= 0) file.set("run.workers", std::to_string(opts.workers));
    if (!opts.out_dir.empty()) file.set("run.out_dir", opts.out_dir);
    if (!opts.solvers.empty()) file.set("solvers", opts.solvers);
    return ddomp::ExperimentConfig::resolve(file);
}

void write_file(const fs::path& path, const std::function<void(std::ostream&)>& emit) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot write " + path.string());
    emit(os);
    std::cout << "wrote " << path.string() << "\n";
}

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--config", opts.config_path, "key=value config file");
    cmd->add_option("--seed", opts.seed, "master RNG seed (overrides run.seed)")
        ->each([&](const std::string&) { opts.seed_set = true; });
    cmd->add_option("--workers", opts.workers, "worker threads (0 = hardware)");
    cmd->add_option("--out", opts.out_dir, "output directory");
    cmd->add_option("--solver", opts.solvers,
                    "comma list of chains, e.g. da_omp_rcos,omp_rect[@L=256;Lw=64]");
}

int run_sweep_cmd(const CommonOpts& opts) {
    const ddomp::ExperimentConfig cfg = load_config(opts);
    const ddomp::SweepResult result = ddomp::run_sweep(cfg);
    fs::create_directories(cfg.out_dir);
    const fs::path csv = fs::path(cfg.out_dir) / "sweep.csv";
    write_file(csv, [&](std::ostream& os) { ddomp::write_sweep_csv(result, os); });
    // Re-read the CSV so that `sweep` and `replot` emit byte-identical SVGs.
    std::ifstream in(csv);
    const ddomp::SweepResult reread = ddomp::read_sweep_csv(in);
    write_file(fs::path(cfg.out_dir) / "sweep.svg",
               [&](std::ostream& os) { ddomp::write_sweep_svg(reread, os); });
    return 0;
}

int run_trace_cmd(const CommonOpts& opts, bool dump_dict) {
    const ddomp::ExperimentConfig cfg = load_config(opts);
    const ddomp::TraceResult result = ddomp::trace_experiment(cfg);
    fs::create_directories(cfg.out_dir);
    write_file(fs::path(cfg.out_dir) / "trace_correlations.csv", [&](std::ostream& os) {
        ddomp::write_trace_correlations_csv(result, os);
    });
    write_file(fs::path(cfg.out_dir) / "trace_iterations.csv", [&](std::ostream& os) {
        ddomp::write_trace_iterations_csv(result, os);
    });
    for (const ddomp::TraceChain& chain : result.chains)
        std::cout << chain.id << ": Q=" << chain.estimate.Q()
                  << " stop=" << ddomp::to_string(chain.estimate.stop_reason) << "\n";
    if (dump_dict) {
        for (const auto& [id, lw] : {std::pair<std::string, int>{"da_omp_rcos", cfg.L_w},
                                     std::pair<std::string, int>{"da_omp_rect", 0}}) {
            ddomp::DDGridSpec grid{cfg.G_tau, cfg.G_nu, cfg.u_nu};
            ddomp::FrameSpec frame{cfg.L, lw, cfg.ell_max > 0 ? cfg.ell_max : cfg.G_tau};
            const auto window = ddomp::build_window(frame);
            const auto pilot = ddomp::gen_pilot(
                frame.L, ddomp::derive_seed(cfg.seed, ddomp::SeedStream::pilot,
                                            static_cast<std::uint64_t>(frame.L)));
            const auto dict = ddomp::build_dictionary(pilot.x, frame, grid, window,
                                                      cfg.normalize_columns);
            write_file(fs::path(cfg.out_dir) / ("dict_" + id + ".csv"),
                       [&](std::ostream& os) { ddomp::write_dictionary_csv(dict, os); });
        }
    }
    return 0;
}

int run_replot_cmd(const std::string& csv_path, const std::string& out_dir) {
    std::ifstream in(csv_path);
    if (!in) throw std::runtime_error("cannot open " + csv_path);
    const ddomp::SweepResult result = ddomp::read_sweep_csv(in);
    fs::create_directories(out_dir);
    write_file(fs::path(out_dir) / "sweep.svg",
               [&](std::ostream& os) { ddomp::write_sweep_svg(result, os); });
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"delay-Doppler sparse channel estimation experiments"};
    app.require_subcommand(1);

    CommonOpts sweep_opts;
    CLI::App* sweep = app.add_subcommand("sweep", "run a Monte-Carlo sweep");
    add_common(sweep, sweep_opts);

    CommonOpts trace_opts;
    bool dump_dict = false;
    CLI::App* trace = app.add_subcommand("trace", "single-trial correlation dump");
    add_common(trace, trace_opts);
    trace->add_flag("--dump-dict", dump_dict, "also dump the dictionary matrices");

    std::string replot_csv, replot_out = "out";
    CLI::App* replot = app.add_subcommand("replot", "regenerate the plot from a CSV");
    replot->add_option("csv", replot_csv, "sweep.csv produced by `sweep`")->required();
    replot->add_option("--out", replot_out, "output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sweep->parsed()) return run_sweep_cmd(sweep_opts);
        if (trace->parsed()) return run_trace_cmd(trace_opts, dump_dict);
        if (replot->parsed()) return run_replot_cmd(replot_csv, replot_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
