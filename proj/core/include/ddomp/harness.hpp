#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ddomp/channel_sim.hpp"
#include "ddomp/config.hpp"
#include "ddomp/solver.hpp"
#include "ddomp/types.hpp"

namespace ddomp {

enum class SolverAlgo { da_omp, omp };
enum class WindowKind { rcos, rect };

/// One receive-and-solve chain: algorithm + window variant, with optional
/// per-chain frame overrides ("da_omp_rcos@L=256;Lw=64"). The id string is
/// what appears in the output's solver column.
struct ChainSpec {
    std::string id;
    SolverAlgo algo = SolverAlgo::da_omp;
    WindowKind window = WindowKind::rcos;
    int L_override = 0;    ///< 0 = experiment default
    int Lw_override = -1;  ///< -1 = experiment default (rect chains force 0)

    static ChainSpec parse(const std::string& spec);
};

enum class SweepVariable { snr_db, u_nu };

std::string to_string(SweepVariable v);

/// Fully resolved experiment description. `resolved` holds the canonical
/// key=value view embedded in every output; hash() of it is the provenance
/// fingerprint.
struct ExperimentConfig {
    // frame + grid
    int L = 128;
    int L_w = 64;
    int ell_max = 0;  ///< 0 = auto (G_tau)
    int G_tau = 4;
    int G_nu = 16;
    int u_nu = 2;

    ChannelDrawConfig channel;
    double delta_tau_s = 0.0;  ///< optional physical delay resolution

    double snr_db = 20.0;  ///< operating SNR when the sweep variable is not snr_db
    SweepVariable sweep_variable = SweepVariable::snr_db;
    std::vector<double> sweep_values = {0, 5, 10, 15, 20, 25, 30};

    std::vector<ChainSpec> chains;
    std::string omp_rule = "residual_threshold";  ///< or "fixed_paths", "fixed:<K>"
    int solver_cap = 0;
    bool normalize_columns = false;

    long trials = 1000;
    std::uint64_t seed = 1;
    int workers = 0;  ///< 0 = hardware concurrency
    std::string out_dir = "out";

    KeyValueConfig resolved;

    /// Overlays file values with CLI overrides, fills defaults, validates
    /// every sweep point, and rebuilds the canonical `resolved` view.
    static ExperimentConfig resolve(const KeyValueConfig& file);

    void validate() const;
};

struct PointAggregate {
    double sweep_value = 0.0;
    std::string solver;
    double nmse_mean = 0.0;
    double nmse_median = 0.0;
    double nmse_stderr = 0.0;
    long trials = 0;  ///< effective trials (failures excluded)
    double mean_q = 0.0;
};

struct SweepResult {
    std::string sweep_variable;
    std::vector<PointAggregate> rows;  ///< points x chains, point-major
    std::uint64_t seed = 0;
    std::string config_hash;
    KeyValueConfig resolved;

    const PointAggregate* find(double value, const std::string& solver) const;
};

/// Runs the full Monte-Carlo sweep. Deterministic in cfg (including seed),
/// independent of the worker count.
SweepResult run_sweep(const ExperimentConfig& cfg);

/// CSV with the documented schema plus '#'-prefixed resolved-config header.
void write_sweep_csv(const SweepResult& result, std::ostream& os);
SweepResult read_sweep_csv(std::istream& is);

/// Self-contained SVG line plot (log NMSE axis, one series per solver).
void write_sweep_svg(const SweepResult& result, std::ostream& os);

/// Per-window-variant single-trial correlation dump for the adaptive solver.
struct TraceChain {
    std::string id;
    std::vector<VecR> correlations;  ///< |Psi^H r_i| per evaluated iteration
    SparseEstimate estimate;
    int selectable_columns = 0;
};

struct TraceResult {
    std::vector<TraceChain> chains;  ///< rcos variant first, then rect
    KeyValueConfig resolved;
    std::string config_hash;
};

/// Runs one seeded trial with the adaptive solver under the configured
/// raised-cosine window and under the rectangular (L_w = 0) variant and
/// captures every correlation vector.
TraceResult trace_experiment(const ExperimentConfig& cfg);

void write_trace_correlations_csv(const TraceResult& result, std::ostream& os);
void write_trace_iterations_csv(const TraceResult& result, std::ostream& os);

}  // namespace ddomp
