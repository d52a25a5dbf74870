#include "ddomp/window.hpp"

#include <cmath>
#include <numbers>

namespace ddomp {

// The window is the convolution of a length-L rectangle with a normalized
// half-sine pulse c[m] = pi/(2 L_w) * sin(pi m / L_w), m in [0, L_w]. The
// discrete pulse sums to slightly less than 1, so the result is rescaled to
// make the flat top exactly 1. The ramps are evaluated through prefix sums
// of c, which is the same convolution without the O(L * L_w) inner loop.
WindowVector build_window(const FrameSpec& frame) {
    frame.validate();
    const int L = frame.L;
    const int Lw = frame.L_w;
    const int Lp = frame.window_len();

    WindowVector out;
    out.roll_off = Lw;
    if (Lw == 0) {
        out.w = VecR::Ones(Lp);
        return out;
    }

    // Half-sine pulse, mirrored so that c[m] == c[Lw - m] bit-for-bit.
    VecR c(Lw + 1);
    for (int m = 0; m <= Lw / 2; ++m) {
        const double v =
            std::numbers::pi / (2.0 * Lw) * std::sin(std::numbers::pi * m / Lw);
        c[m] = v;
        c[Lw - m] = v;
    }

    // prefix[j] = sum of c[0..j]
    VecR prefix(Lw + 1);
    double acc = 0.0;
    for (int m = 0; m <= Lw; ++m) {
        acc += c[m];
        prefix[m] = acc;
    }
    const double flat = prefix[Lw];

    out.w.resize(Lp);
    for (int n = 0; n < Lp; ++n) {
        const int lo = std::max(0, n - L + 1);
        const int hi = std::min(n, Lw);
        const double raw = prefix[hi] - (lo > 0 ? prefix[lo - 1] : 0.0);
        out.w[n] = raw / flat;
    }
    return out;
}

}  // namespace ddomp
