#pragma once

#include <cstdint>
#include <limits>
#include <string>

#include "ddomp/types.hpp"

namespace ddomp {

/// Unit-power BPSK pilot, reproducible from its seed.
struct PilotSequence {
    VecC x;
    std::uint64_t seed = 0;
};

enum class GainModel {
    complex_uniform_mag,  ///< g * e^{j theta}, g ~ U(0,1), theta ~ U(0, 2pi)
    real_uniform,         ///< U(0,1) on the real axis
};

/// Random-channel ensemble parameters. Ranges are inclusive and must sit
/// inside the grid handed to draw_channel.
struct ChannelDrawConfig {
    int P_min = 5;
    int P_max = 8;
    GainModel gain_model = GainModel::complex_uniform_mag;
    int delay_min = 0;
    int delay_max = -1;           ///< defaults to G_tau - 1 when negative
    double doppler_min = 0.0;
    double doppler_max = -1.0;    ///< defaults to (G_nu - 1)/u_nu when negative
    bool on_grid_doppler = false; ///< draw integer kappa (perfect grid alignment)
    std::uint64_t seed = 0;
};

/// SNR is defined against the unit pilot power: sigma^2 = 10^{-snr_db/10}.
struct NoiseConfig {
    double snr_db = std::numeric_limits<double>::infinity();

    bool noiseless() const { return !std::isfinite(snr_db); }
    double sigma2() const { return noiseless() ? 0.0 : std::pow(10.0, -snr_db / 10.0); }
};

PilotSequence gen_pilot(int L, std::uint64_t seed);

PathSet draw_channel(const ChannelDrawConfig& cfg, const DDGridSpec& grid);

/// Sample-level frame propagation with true linear delays on the cyclically
/// extended pilot; returns the received frame of length L_tot (time indices
/// n = -L_cp .. L + L_cs - 1) including seeded complex Gaussian noise.
VecC propagate(const PilotSequence& pilot, const FrameSpec& frame, const PathSet& paths,
               const NoiseConfig& noise, std::uint64_t seed);

/// Discards the first ell_max received samples and applies the window:
/// the output covers time indices n in [-L_w/2, L + L_w/2).
VecC receiver_front_end(const VecC& r, const FrameSpec& frame, const WindowVector& window);

std::string to_string(GainModel m);
GainModel gain_model_from_string(const std::string& s);

}  // namespace ddomp
