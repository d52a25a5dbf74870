#include "ddomp/channel_sim.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <set>
#include <stdexcept>

#include "ddomp/operators.hpp"

namespace ddomp {

PilotSequence gen_pilot(int L, std::uint64_t seed) {
    if (L < 1) throw std::invalid_argument("gen_pilot: L must be >= 1");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> bit(0, 1);
    PilotSequence p;
    p.seed = seed;
    p.x.resize(L);
    for (int n = 0; n < L; ++n) p.x[n] = bit(rng) ? Complex(1.0, 0.0) : Complex(-1.0, 0.0);
    return p;
}

PathSet draw_channel(const ChannelDrawConfig& cfg, const DDGridSpec& grid) {
    grid.validate();
    const int delay_max = cfg.delay_max < 0 ? grid.G_tau - 1 : cfg.delay_max;
    const double doppler_max = cfg.doppler_max < 0.0 ? grid.kappa_max() : cfg.doppler_max;
    if (cfg.P_min < 1 || cfg.P_max < cfg.P_min)
        throw std::invalid_argument("draw_channel: empty path-count range");
    if (cfg.delay_min < 0 || delay_max > grid.G_tau - 1 || cfg.delay_min > delay_max)
        throw std::invalid_argument("draw_channel: delay range outside grid");
    if (cfg.doppler_min < 0.0 || doppler_max > grid.kappa_max() ||
        cfg.doppler_min > doppler_max)
        throw std::invalid_argument("draw_channel: doppler range outside grid");

    // Distinct (delay, nearest Doppler bin) cells must be able to host P paths.
    const int delay_cells = delay_max - cfg.delay_min + 1;
    const int doppler_cells =
        cfg.on_grid_doppler
            ? static_cast<int>(std::floor(doppler_max)) -
                  static_cast<int>(std::ceil(cfg.doppler_min)) + 1
            : static_cast<int>(std::lround(doppler_max * grid.u_nu)) -
                  static_cast<int>(std::lround(cfg.doppler_min * grid.u_nu)) + 1;
    if (static_cast<long>(delay_cells) * doppler_cells < cfg.P_max)
        throw std::invalid_argument("draw_channel: grid too small for P distinct cells");

    std::mt19937_64 rng(cfg.seed);
    std::uniform_int_distribution<int> p_dist(cfg.P_min, cfg.P_max);
    std::uniform_int_distribution<int> delay_dist(cfg.delay_min, delay_max);
    std::uniform_real_distribution<double> doppler_dist(cfg.doppler_min, doppler_max);
    // On-grid draws use integer kappa: the channel aligns with the natural
    // Doppler resolution, which is the perfectly-aligned (leakage-free) case.
    const int k_min = static_cast<int>(std::ceil(cfg.doppler_min));
    const int k_max = static_cast<int>(std::floor(doppler_max));
    std::uniform_int_distribution<int> k_dist(k_min, k_max);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    const int P = p_dist(rng);
    PathSet out;
    std::set<std::pair<int, int>> cells;
    while (out.count() < P) {
        Path p;
        p.delay = delay_dist(rng);
        p.doppler = cfg.on_grid_doppler ? static_cast<double>(k_dist(rng))
                                        : doppler_dist(rng);
        const int k = static_cast<int>(std::lround(p.doppler * grid.u_nu));
        if (!cells.insert({p.delay, k}).second) continue;  // resample duplicate cell
        switch (cfg.gain_model) {
            case GainModel::complex_uniform_mag: {
                const double g = unit(rng);
                const double theta = 2.0 * std::numbers::pi * unit(rng);
                p.gain = std::polar(g, theta);
                break;
            }
            case GainModel::real_uniform:
                p.gain = Complex(unit(rng), 0.0);
                break;
        }
        out.paths.push_back(p);
    }
    out.validate(grid);
    return out;
}

VecC propagate(const PilotSequence& pilot, const FrameSpec& frame, const PathSet& paths,
               const NoiseConfig& noise, std::uint64_t seed) {
    frame.validate();
    if (pilot.x.size() != frame.L)
        throw std::invalid_argument("propagate: pilot length != frame.L");
    for (const Path& p : paths.paths)
        if (p.delay > frame.ell_max || p.delay < 0)
            throw std::invalid_argument("propagate: path delay exceeds ell_max");

    const int L_cp = frame.cp_len();
    const int L_tot = frame.total_len();
    const VecC xbar = extend_pilot(pilot.x, frame, ExtensionVariant::full);

    VecC r = VecC::Zero(L_tot);
    for (const Path& p : paths.paths) {
        for (int t = 0; t < L_tot; ++t) {
            const int n = t - L_cp;       // absolute time of output sample
            const int mt = t - p.delay;   // frame index of the delayed sample
            if (mt < 0) continue;         // before this frame; discarded region only
            r[t] += p.gain *
                    unit_phase(p.doppler, static_cast<double>(n - p.delay), frame.L) *
                    xbar[mt];
        }
    }

    const double sigma2 = noise.sigma2();
    if (sigma2 > 0.0) {
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> g(0.0, std::sqrt(sigma2 / 2.0));
        for (int t = 0; t < L_tot; ++t) {
            const double re = g(rng);
            const double im = g(rng);
            r[t] += Complex(re, im);
        }
    }
    return r;
}

VecC receiver_front_end(const VecC& r, const FrameSpec& frame, const WindowVector& window) {
    frame.validate();
    const int Lp = frame.window_len();
    if (r.size() != frame.total_len())
        throw std::invalid_argument("receiver_front_end: r length != L_tot");
    if (window.size() != Lp)
        throw std::invalid_argument("receiver_front_end: window length != L'");
    VecC y(Lp);
    for (int m = 0; m < Lp; ++m) y[m] = window.w[m] * r[m + frame.ell_max];
    return y;
}

std::string to_string(GainModel m) {
    return m == GainModel::complex_uniform_mag ? "complex_uniform_mag" : "real_uniform";
}

GainModel gain_model_from_string(const std::string& s) {
    if (s == "complex_uniform_mag") return GainModel::complex_uniform_mag;
    if (s == "real_uniform") return GainModel::real_uniform;
    throw std::invalid_argument("unknown gain model: " + s);
}

}  // namespace ddomp
