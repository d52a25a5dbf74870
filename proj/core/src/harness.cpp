#include "ddomp/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <memory>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "ddomp/dictionary.hpp"
#include "ddomp/metrics.hpp"
#include "ddomp/operators.hpp"
#include "ddomp/seed.hpp"
#include "ddomp/window.hpp"

namespace ddomp {

namespace {

const std::set<std::string> kKnownKeys = {
    "frame.L", "frame.L_w", "frame.ell_max",
    "grid.G_tau", "grid.G_nu", "grid.u_nu",
    "channel.P_min", "channel.P_max", "channel.gain_model",
    "channel.delay_min", "channel.delay_max",
    "channel.doppler_min", "channel.doppler_max",
    "channel.on_grid_doppler", "channel.delta_tau_s",
    "noise.snr_db",
    "sweep.variable", "sweep.values",
    "solvers", "solver.omp_rule", "solver.cap",
    "dict.normalize_columns",
    "run.trials", "run.seed", "run.workers", "run.out_dir",
};

std::string join_values(const std::vector<double>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += format_double(v[i]);
    }
    return out;
}

// "auto" or integer
int parse_auto_int(const KeyValueConfig& cfg, const std::string& key, int auto_value) {
    const std::string s = cfg.get_string(key, "auto");
    if (s == "auto") return auto_value;
    return static_cast<int>(cfg.get_int(key, auto_value));
}

double parse_auto_double(const KeyValueConfig& cfg, const std::string& key,
                         double auto_value) {
    const std::string s = cfg.get_string(key, "auto");
    if (s == "auto") return auto_value;
    return cfg.get_double(key, auto_value);
}

}  // namespace

ChainSpec ChainSpec::parse(const std::string& spec) {
    ChainSpec c;
    c.id = spec;
    std::string name = spec;
    std::string overrides;
    const auto at = spec.find('@');
    if (at != std::string::npos) {
        name = spec.substr(0, at);
        overrides = spec.substr(at + 1);
    }
    if (name == "da_omp_rcos") {
        c.algo = SolverAlgo::da_omp;
        c.window = WindowKind::rcos;
    } else if (name == "da_omp_rect") {
        c.algo = SolverAlgo::da_omp;
        c.window = WindowKind::rect;
    } else if (name == "omp_rcos") {
        c.algo = SolverAlgo::omp;
        c.window = WindowKind::rcos;
    } else if (name == "omp_rect") {
        c.algo = SolverAlgo::omp;
        c.window = WindowKind::rect;
    } else {
        throw std::invalid_argument("unknown solver chain: " + name);
    }
    std::istringstream ss(overrides);
    std::string tok;
    while (std::getline(ss, tok, ';')) {
        if (tok.empty()) continue;
        const auto eq = tok.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("chain override needs key=value: " + tok);
        const std::string k = tok.substr(0, eq);
        const int v = std::stoi(tok.substr(eq + 1));
        if (k == "L") c.L_override = v;
        else if (k == "Lw") c.Lw_override = v;
        else throw std::invalid_argument("unknown chain override key: " + k);
    }
    return c;
}

std::string to_string(SweepVariable v) {
    return v == SweepVariable::snr_db ? "snr_db" : "u_nu";
}

ExperimentConfig ExperimentConfig::resolve(const KeyValueConfig& file) {
    for (const auto& [k, v] : file.entries())
        if (!kKnownKeys.count(k))
            throw std::invalid_argument("unknown config key: " + k);

    ExperimentConfig cfg;
    cfg.L = static_cast<int>(file.get_int("frame.L", cfg.L));
    cfg.L_w = static_cast<int>(file.get_int("frame.L_w", cfg.L_w));
    cfg.G_tau = static_cast<int>(file.get_int("grid.G_tau", cfg.G_tau));
    cfg.G_nu = static_cast<int>(file.get_int("grid.G_nu", cfg.G_nu));
    cfg.u_nu = static_cast<int>(file.get_int("grid.u_nu", cfg.u_nu));
    cfg.ell_max = parse_auto_int(file, "frame.ell_max", 0);

    cfg.channel.P_min = static_cast<int>(file.get_int("channel.P_min", 5));
    cfg.channel.P_max = static_cast<int>(file.get_int("channel.P_max", 8));
    cfg.channel.gain_model =
        gain_model_from_string(file.get_string("channel.gain_model", "complex_uniform_mag"));
    cfg.channel.delay_min = static_cast<int>(file.get_int("channel.delay_min", 0));
    cfg.channel.delay_max = parse_auto_int(file, "channel.delay_max", -1);
    cfg.channel.doppler_min = file.get_double("channel.doppler_min", 0.0);
    cfg.channel.doppler_max = parse_auto_double(file, "channel.doppler_max", -1.0);
    cfg.channel.on_grid_doppler = file.get_bool("channel.on_grid_doppler", false);
    cfg.delta_tau_s = file.get_double("channel.delta_tau_s", 0.0);

    cfg.snr_db = file.get_double("noise.snr_db", 20.0);

    const std::string var = file.get_string("sweep.variable", "snr_db");
    if (var == "snr_db") cfg.sweep_variable = SweepVariable::snr_db;
    else if (var == "u_nu") cfg.sweep_variable = SweepVariable::u_nu;
    else throw std::invalid_argument("sweep.variable must be snr_db or u_nu");
    cfg.sweep_values = file.get_double_list("sweep.values", cfg.sweep_values);

    const std::string solvers =
        file.get_string("solvers", "da_omp_rcos,da_omp_rect,omp_rcos,omp_rect");
    cfg.chains.clear();
    std::istringstream ss(solvers);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty()) cfg.chains.push_back(ChainSpec::parse(tok));

    cfg.omp_rule = file.get_string("solver.omp_rule", "residual_threshold");
    cfg.solver_cap = static_cast<int>(file.get_int("solver.cap", 0));
    cfg.normalize_columns = file.get_bool("dict.normalize_columns", false);

    cfg.trials = file.get_int("run.trials", 1000);
    cfg.seed = static_cast<std::uint64_t>(file.get_int("run.seed", 1));
    cfg.workers = static_cast<int>(file.get_int("run.workers", 0));
    cfg.out_dir = file.get_string("run.out_dir", "out");

    // canonical view, every key explicit
    KeyValueConfig r;
    r.set("frame.L", std::to_string(cfg.L));
    r.set("frame.L_w", std::to_string(cfg.L_w));
    r.set("frame.ell_max", cfg.ell_max > 0 ? std::to_string(cfg.ell_max) : "auto");
    r.set("grid.G_tau", std::to_string(cfg.G_tau));
    r.set("grid.G_nu", std::to_string(cfg.G_nu));
    r.set("grid.u_nu", std::to_string(cfg.u_nu));
    r.set("channel.P_min", std::to_string(cfg.channel.P_min));
    r.set("channel.P_max", std::to_string(cfg.channel.P_max));
    r.set("channel.gain_model", to_string(cfg.channel.gain_model));
    r.set("channel.delay_min", std::to_string(cfg.channel.delay_min));
    r.set("channel.delay_max",
          cfg.channel.delay_max < 0 ? "auto" : std::to_string(cfg.channel.delay_max));
    r.set("channel.doppler_min", format_double(cfg.channel.doppler_min));
    r.set("channel.doppler_max",
          cfg.channel.doppler_max < 0 ? "auto" : format_double(cfg.channel.doppler_max));
    r.set("channel.on_grid_doppler", cfg.channel.on_grid_doppler ? "true" : "false");
    r.set("channel.delta_tau_s", format_double(cfg.delta_tau_s));
    r.set("noise.snr_db", format_double(cfg.snr_db));
    r.set("sweep.variable", to_string(cfg.sweep_variable));
    r.set("sweep.values", join_values(cfg.sweep_values));
    {
        std::string ids;
        for (std::size_t i = 0; i < cfg.chains.size(); ++i) {
            if (i) ids += ",";
            ids += cfg.chains[i].id;
        }
        r.set("solvers", ids);
    }
    r.set("solver.omp_rule", cfg.omp_rule);
    r.set("solver.cap", std::to_string(cfg.solver_cap));
    r.set("dict.normalize_columns", cfg.normalize_columns ? "true" : "false");
    r.set("run.trials", std::to_string(cfg.trials));
    r.set("run.seed", std::to_string(cfg.seed));
    r.set("run.workers", std::to_string(cfg.workers));
    r.set("run.out_dir", cfg.out_dir);
    cfg.resolved = r;

    cfg.validate();
    return cfg;
}

namespace {

struct GroupSetup {
    FrameSpec frame;
    DDGridSpec grid;
    WindowVector window;
    PilotSequence pilot;
    std::shared_ptr<const WindowedDictionary> dict;
};

struct PointSetup {
    double value = 0.0;
    DDGridSpec grid;
    NoiseConfig noise;
    ChannelDrawConfig chan;
    std::vector<GroupSetup> groups;
    std::vector<int> chain_group;  // chain index -> group index
};

FrameSpec chain_frame(const ExperimentConfig& cfg, const ChainSpec& chain,
                      const DDGridSpec& grid) {
    FrameSpec f;
    f.L = chain.L_override > 0 ? chain.L_override : cfg.L;
    if (chain.window == WindowKind::rect)
        f.L_w = 0;
    else
        f.L_w = chain.Lw_override >= 0 ? chain.Lw_override : cfg.L_w;
    f.ell_max = cfg.ell_max > 0 ? cfg.ell_max : grid.G_tau;
    return f;
}

DDGridSpec point_grid(const ExperimentConfig& cfg, double value) {
    DDGridSpec g{cfg.G_tau, cfg.G_nu, cfg.u_nu};
    if (cfg.sweep_variable == SweepVariable::u_nu) {
        const int u = static_cast<int>(std::lround(value));
        if (u < 1 || std::abs(value - u) > 1e-9)
            throw std::invalid_argument("u_nu sweep values must be positive integers");
        // Scale the Doppler bin count to keep the covered Doppler span fixed.
        g.G_nu = static_cast<int>(std::lround(static_cast<double>(cfg.G_nu) * u / cfg.u_nu));
        g.u_nu = u;
    }
    return g;
}

ChannelDrawConfig point_channel(const ExperimentConfig& cfg, const DDGridSpec& grid) {
    ChannelDrawConfig c = cfg.channel;
    if (c.delay_max < 0) c.delay_max = grid.G_tau - 1;
    if (c.doppler_max < 0.0) c.doppler_max = grid.kappa_max();
    return c;
}

// Dictionary cache across sweep points; dictionaries depend only on
// (pilot, frame, grid, window) and are shared read-only by the workers.
struct DictCache {
    std::map<std::string, GroupSetup> entries;

    const GroupSetup& get(const ExperimentConfig& cfg, const FrameSpec& frame,
                          const DDGridSpec& grid) {
        char key[96];
        std::snprintf(key, sizeof(key), "%d:%d:%d:%d:%d:%d", frame.L, frame.L_w,
                      frame.ell_max, grid.G_tau, grid.G_nu, grid.u_nu);
        auto it = entries.find(key);
        if (it != entries.end()) return it->second;
        GroupSetup g;
        g.frame = frame;
        g.grid = grid;
        g.window = build_window(frame);
        g.pilot = gen_pilot(frame.L, derive_seed(cfg.seed, SeedStream::pilot,
                                                 static_cast<std::uint64_t>(frame.L)));
        g.dict = std::make_shared<WindowedDictionary>(build_dictionary(
            g.pilot.x, frame, grid, g.window, cfg.normalize_columns));
        return entries.emplace(key, std::move(g)).first->second;
    }
};

PointSetup make_point(const ExperimentConfig& cfg, int point_idx, DictCache& cache) {
    PointSetup p;
    p.value = cfg.sweep_values[point_idx];
    p.grid = point_grid(cfg, p.value);
    p.noise.snr_db =
        cfg.sweep_variable == SweepVariable::snr_db ? p.value : cfg.snr_db;
    p.chan = point_channel(cfg, p.grid);

    std::map<std::string, int> group_of;
    for (const ChainSpec& chain : cfg.chains) {
        const FrameSpec frame = chain_frame(cfg, chain, p.grid);
        char key[64];
        std::snprintf(key, sizeof(key), "%d:%d", frame.L, frame.L_w);
        auto it = group_of.find(key);
        if (it == group_of.end()) {
            it = group_of.emplace(key, static_cast<int>(p.groups.size())).first;
            p.groups.push_back(cache.get(cfg, frame, p.grid));
        }
        p.chain_group.push_back(it->second);
    }
    return p;
}

struct TrialOutcome {
    double nmse = std::nan("");
    int q = 0;
    bool ok = false;
};

StoppingRule make_omp_rule(const ExperimentConfig& cfg, const PathSet& paths) {
    if (cfg.omp_rule == "residual_threshold")
        return StoppingRule::residual_threshold(0.0, cfg.solver_cap);
    if (cfg.omp_rule == "fixed_paths")
        return StoppingRule::fixed_iterations(std::max(1, paths.count()), cfg.solver_cap);
    if (cfg.omp_rule.rfind("fixed:", 0) == 0)
        return StoppingRule::fixed_iterations(std::stoi(cfg.omp_rule.substr(6)),
                                              cfg.solver_cap);
    throw std::invalid_argument("unknown solver.omp_rule: " + cfg.omp_rule);
}

void run_trial(const ExperimentConfig& cfg, const PointSetup& p, int point_idx, long t,
               std::vector<std::vector<TrialOutcome>>& out) {
    ChannelDrawConfig chan = p.chan;
    chan.seed = derive_seed(cfg.seed, SeedStream::channel, static_cast<std::uint64_t>(t));
    const PathSet paths = draw_channel(chan, p.grid);

    // One reference channel per distinct pilot length in this point.
    std::map<int, MatC> h_true;
    for (const GroupSetup& g : p.groups)
        if (!h_true.count(g.frame.L))
            h_true.emplace(g.frame.L, channel_matrix(paths, g.frame.L, g.frame.L, 0));

    std::vector<VecC> front_end(p.groups.size());
    for (std::size_t g = 0; g < p.groups.size(); ++g) {
        const std::uint64_t noise_seed =
            derive_seed(cfg.seed, SeedStream::noise,
                        static_cast<std::uint64_t>(point_idx) * 4096 + g,
                        static_cast<std::uint64_t>(t));
        const VecC r = propagate(p.groups[g].pilot, p.groups[g].frame, paths, p.noise,
                                 noise_seed);
        front_end[g] = receiver_front_end(r, p.groups[g].frame, p.groups[g].window);
    }

    for (std::size_t c = 0; c < cfg.chains.size(); ++c) {
        const int g = p.chain_group[c];
        const GroupSetup& group = p.groups[g];
        try {
            SparseEstimate est;
            if (cfg.chains[c].algo == SolverAlgo::da_omp) {
                est = da_omp(*group.dict, front_end[g], cfg.solver_cap);
            } else {
                est = omp_baseline(*group.dict, front_end[g], make_omp_rule(cfg, paths),
                                   p.noise.sigma2());
            }
            const MatC h_est = reconstruct_channel(est, p.grid, group.frame.L);
            out[c][t] = {nmse(h_est, h_true.at(group.frame.L)), est.Q(), true};
        } catch (const std::exception&) {
            out[c][t] = {};  // recorded as a failed trial, not fatal
        }
    }
}

PointAggregate aggregate(const std::string& solver, double value,
                         const std::vector<TrialOutcome>& outcomes) {
    PointAggregate a;
    a.sweep_value = value;
    a.solver = solver;
    std::vector<double> vals;
    double q_sum = 0.0;
    for (const TrialOutcome& o : outcomes) {
        if (!o.ok) continue;
        vals.push_back(o.nmse);
        q_sum += o.q;
    }
    a.trials = static_cast<long>(vals.size());
    if (vals.empty()) return a;
    double sum = 0.0;
    for (double v : vals) sum += v;
    a.nmse_mean = sum / a.trials;
    double ss = 0.0;
    for (double v : vals) ss += (v - a.nmse_mean) * (v - a.nmse_mean);
    a.nmse_stderr = a.trials > 1 ? std::sqrt(ss / (a.trials * (a.trials - 1.0))) : 0.0;
    std::vector<double> sorted = vals;
    std::sort(sorted.begin(), sorted.end());
    a.nmse_median = sorted.size() % 2 == 1
                        ? sorted[sorted.size() / 2]
                        : 0.5 * (sorted[sorted.size() / 2 - 1] + sorted[sorted.size() / 2]);
    a.mean_q = q_sum / a.trials;
    return a;
}

}  // namespace

void ExperimentConfig::validate() const {
    if (trials < 1) throw std::invalid_argument("run.trials must be >= 1");
    if (chains.empty()) throw std::invalid_argument("solvers list is empty");
    if (sweep_values.empty()) throw std::invalid_argument("sweep.values is empty");
    if (channel.P_min < 1 || channel.P_max < channel.P_min)
        throw std::invalid_argument("channel path-count range is empty");
    for (std::size_t i = 0; i < sweep_values.size(); ++i) {
        const DDGridSpec grid = point_grid(*this, sweep_values[i]);
        grid.validate();
        const ChannelDrawConfig chan = point_channel(*this, grid);
        if (chan.delay_max > grid.G_tau - 1 || chan.doppler_max > grid.kappa_max())
            throw std::invalid_argument("channel ranges exceed the grid at sweep point " +
                                        format_double(sweep_values[i]));
        for (const ChainSpec& chain : chains) {
            chain_frame(*this, chain, grid).validate();
            if (chain.algo == SolverAlgo::omp && omp_rule == "residual_threshold") {
                const double snr = sweep_variable == SweepVariable::snr_db
                                       ? sweep_values[i]
                                       : snr_db;
                if (!std::isfinite(snr))
                    throw std::invalid_argument(
                        "residual_threshold OMP requires finite SNR (use fixed:<K> or "
                        "fixed_paths for noiseless runs)");
            }
        }
    }
    if (sweep_variable == SweepVariable::u_nu && channel.doppler_max < 0.0)
        throw std::invalid_argument(
            "u_nu sweeps need an explicit channel.doppler_max so the ensemble is "
            "identical at every point");
}

SweepResult run_sweep(const ExperimentConfig& cfg) {
    cfg.validate();
    SweepResult result;
    result.sweep_variable = to_string(cfg.sweep_variable);
    result.seed = cfg.seed;
    result.resolved = cfg.resolved;
    {
        char buf[24];
        std::snprintf(buf, sizeof(buf), "%016llx",
                      static_cast<unsigned long long>(cfg.resolved.hash()));
        result.config_hash = buf;
    }

    DictCache cache;
    const int n_workers = cfg.workers > 0
                              ? cfg.workers
                              : std::max(1u, std::thread::hardware_concurrency());

    for (int point_idx = 0; point_idx < static_cast<int>(cfg.sweep_values.size());
         ++point_idx) {
        const PointSetup point = make_point(cfg, point_idx, cache);
        std::vector<std::vector<TrialOutcome>> outcomes(
            cfg.chains.size(), std::vector<TrialOutcome>(cfg.trials));

        std::atomic<long> next{0};
        auto work = [&]() {
            while (true) {
                const long t = next.fetch_add(1);
                if (t >= cfg.trials) break;
                run_trial(cfg, point, point_idx, t, outcomes);
            }
        };
        if (n_workers == 1 || cfg.trials == 1) {
            work();
        } else {
            std::vector<std::thread> pool;
            for (int w = 0; w < n_workers; ++w) pool.emplace_back(work);
            for (auto& th : pool) th.join();
        }

        for (std::size_t c = 0; c < cfg.chains.size(); ++c)
            result.rows.push_back(
                aggregate(cfg.chains[c].id, point.value, outcomes[c]));
    }
    return result;
}

const PointAggregate* SweepResult::find(double value, const std::string& solver) const {
    for (const PointAggregate& r : rows)
        if (r.solver == solver && std::abs(r.sweep_value - value) < 1e-9) return &r;
    return nullptr;
}

void write_sweep_csv(const SweepResult& result, std::ostream& os) {
    std::istringstream cfg_lines(result.resolved.serialize());
    std::string line;
    while (std::getline(cfg_lines, line)) os << "# " << line << "\n";
    const double delta_tau = result.resolved.has("channel.delta_tau_s")
                                 ? std::stod(result.resolved.get_string(
                                       "channel.delta_tau_s", "0"))
                                 : 0.0;
    if (delta_tau > 0.0) {
        const double L = std::stod(result.resolved.get_string("frame.L", "0"));
        os << "# physical.delta_nu_hz=" << format_double(1.0 / (L * delta_tau)) << "\n";
        os << "# physical.frame_s=" << format_double(L * delta_tau) << "\n";
    }
    os << "sweep_var,value,solver,nmse_mean,nmse_median,nmse_stderr,trials,mean_Q,seed,"
          "config_hash\n";
    for (const PointAggregate& r : result.rows) {
        os << result.sweep_variable << "," << format_double(r.sweep_value) << ","
           << r.solver << "," << format_double(r.nmse_mean) << ","
           << format_double(r.nmse_median) << "," << format_double(r.nmse_stderr) << ","
           << r.trials << "," << format_double(r.mean_q) << "," << result.seed << ","
           << result.config_hash << "\n";
    }
}

SweepResult read_sweep_csv(std::istream& is) {
    SweepResult result;
    std::string line;
    std::string config_text;
    bool header_seen = false;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::string body = line.substr(line.size() > 1 && line[1] == ' ' ? 2 : 1);
            if (body.rfind("physical.", 0) != 0) config_text += body + "\n";
            continue;
        }
        if (!header_seen) {
            if (line.rfind("sweep_var,", 0) != 0)
                throw std::runtime_error("unexpected CSV header: " + line);
            header_seen = true;
            continue;
        }
        std::istringstream row(line);
        std::string tok;
        std::vector<std::string> cols;
        while (std::getline(row, tok, ',')) cols.push_back(tok);
        if (cols.size() != 10) throw std::runtime_error("malformed CSV row: " + line);
        result.sweep_variable = cols[0];
        PointAggregate a;
        a.sweep_value = std::stod(cols[1]);
        a.solver = cols[2];
        a.nmse_mean = std::stod(cols[3]);
        a.nmse_median = std::stod(cols[4]);
        a.nmse_stderr = std::stod(cols[5]);
        a.trials = std::stol(cols[6]);
        a.mean_q = std::stod(cols[7]);
        result.seed = std::stoull(cols[8]);
        result.config_hash = cols[9];
        result.rows.push_back(a);
    }
    if (!header_seen) throw std::runtime_error("CSV has no header row");
    result.resolved = KeyValueConfig::parse(config_text);
    return result;
}

TraceResult trace_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    TraceResult result;
    result.resolved = cfg.resolved;
    {
        char buf[24];
        std::snprintf(buf, sizeof(buf), "%016llx",
                      static_cast<unsigned long long>(cfg.resolved.hash()));
        result.config_hash = buf;
    }

    const DDGridSpec grid{cfg.G_tau, cfg.G_nu, cfg.u_nu};
    ChannelDrawConfig chan = point_channel(cfg, grid);
    chan.seed = derive_seed(cfg.seed, SeedStream::channel, 0);
    const PathSet paths = draw_channel(chan, grid);
    NoiseConfig noise{cfg.snr_db};

    const std::pair<std::string, int> variants[] = {{"da_omp_rcos", cfg.L_w},
                                                    {"da_omp_rect", 0}};
    int g = 0;
    for (const auto& [id, lw] : variants) {
        FrameSpec frame{cfg.L, lw, cfg.ell_max > 0 ? cfg.ell_max : grid.G_tau};
        frame.validate();
        const WindowVector window = build_window(frame);
        const PilotSequence pilot = gen_pilot(
            frame.L, derive_seed(cfg.seed, SeedStream::pilot,
                                 static_cast<std::uint64_t>(frame.L)));
        const WindowedDictionary dict =
            build_dictionary(pilot.x, frame, grid, window, cfg.normalize_columns);
        const std::uint64_t noise_seed =
            derive_seed(cfg.seed, SeedStream::noise, static_cast<std::uint64_t>(g), 0);
        const VecC r = propagate(pilot, frame, paths, noise, noise_seed);
        const VecC y = receiver_front_end(r, frame, window);

        TraceChain chain;
        chain.id = id;
        chain.selectable_columns = grid.selectable_columns();
        chain.estimate = da_omp(dict, y, cfg.solver_cap, &chain.correlations);
        result.chains.push_back(std::move(chain));
        ++g;
    }
    return result;
}

void write_trace_correlations_csv(const TraceResult& result, std::ostream& os) {
    std::istringstream cfg_lines(result.resolved.serialize());
    std::string line;
    while (std::getline(cfg_lines, line)) os << "# " << line << "\n";
    for (const TraceChain& chain : result.chains)
        os << "# " << chain.id << " stop_reason=" << to_string(chain.estimate.stop_reason)
           << " Q=" << chain.estimate.Q() << "\n";
    os << "solver,iter,column,corr\n";
    char buf[96];
    for (const TraceChain& chain : result.chains) {
        for (std::size_t i = 0; i < chain.correlations.size(); ++i) {
            const VecR& corr = chain.correlations[i];
            for (int d = 0; d < corr.size(); ++d) {
                std::snprintf(buf, sizeof(buf), "%s,%zu,%d,%.12g\n", chain.id.c_str(), i,
                              d, corr[d]);
                os << buf;
            }
        }
    }
}

void write_trace_iterations_csv(const TraceResult& result, std::ostream& os) {
    std::istringstream cfg_lines(result.resolved.serialize());
    std::string line;
    while (std::getline(cfg_lines, line)) os << "# " << line << "\n";
    os << "solver,iter,selected,beta,gamma,residual_norm\n";
    char buf[160];
    for (const TraceChain& chain : result.chains) {
        for (const IterationRecord& t : chain.estimate.trace) {
            std::snprintf(buf, sizeof(buf), "%s,%d,%d,%.12g,%.12g,%.12g\n",
                          chain.id.c_str(), t.iter, t.selected, t.beta, t.gamma,
                          t.residual_norm);
            os << buf;
        }
    }
}

}  // namespace ddomp
