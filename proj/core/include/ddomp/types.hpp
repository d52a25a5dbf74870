#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace ddomp {

using Complex = std::complex<double>;
using VecC = Eigen::VectorXcd;
using VecR = Eigen::VectorXd;
using MatC = Eigen::MatrixXcd;
using MatR = Eigen::MatrixXd;

/// Pilot frame geometry. Time index n = 0 is the first sample of the core
/// pilot block; the cyclic prefix covers n in [-L_cp, 0) and the cyclic
/// suffix covers n in [L, L + L_cs). After the receiver discards the first
/// ell_max samples, the retained window spans n in [-L_w/2, L + L_w/2).
struct FrameSpec {
    int L = 0;        ///< pilot length in samples
    int L_w = 0;      ///< window roll-off length (even, <= L)
    int ell_max = 0;  ///< maximum delay spread in samples

    int cp_len() const { return ell_max + L_w / 2; }
    int cs_len() const { return L_w / 2; }
    int total_len() const { return L + cp_len() + cs_len(); }
    int window_len() const { return L + L_w; }  // L' = L_tot - ell_max

    /// Throws std::invalid_argument if the geometry is inconsistent.
    void validate() const;
};

/// Delay-Doppler estimation grid. Delay bins are integer sample delays
/// l in [0, G_tau); Doppler bins are k in [0, G_nu) at resolution 1/u_nu,
/// i.e. grid index k represents the normalized Doppler kappa = k / u_nu.
struct DDGridSpec {
    int G_tau = 0;  ///< number of delay bins
    int G_nu = 0;   ///< number of Doppler bins
    int u_nu = 1;   ///< Doppler oversampling factor

    int selectable_columns() const { return G_tau * G_nu; }
    int total_columns() const { return (G_tau + 1) * G_nu; }  // + interference block
    double kappa(int k) const { return static_cast<double>(k) / u_nu; }
    double kappa_max() const { return static_cast<double>(G_nu - 1) / u_nu; }

    void validate() const;
};

/// One propagation path: complex gain, integer delay (samples) and real
/// normalized Doppler shift (possibly fractional).
struct Path {
    Complex gain;
    int delay = 0;
    double doppler = 0.0;
};

/// The true multipath channel.
struct PathSet {
    std::vector<Path> paths;

    int count() const { return static_cast<int>(paths.size()); }
    bool empty() const { return paths.empty(); }

    /// Checks per-path grid bounds and pairwise-distinct (delay, round(u_nu*kappa))
    /// cells. Throws std::invalid_argument on violation.
    void validate(const DDGridSpec& grid) const;
};

/// Real receiver window of length L' with roll-off L_w.
struct WindowVector {
    VecR w;
    int roll_off = 0;

    int size() const { return static_cast<int>(w.size()); }
};

}  // namespace ddomp
