#include "ddomp/types.hpp"

#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

namespace ddomp {

void FrameSpec::validate() const {
    if (L < 1) throw std::invalid_argument("FrameSpec: L must be >= 1");
    if (L_w < 0 || L_w % 2 != 0)
        throw std::invalid_argument("FrameSpec: L_w must be even and >= 0");
    if (L_w > L) throw std::invalid_argument("FrameSpec: L_w must not exceed L");
    if (ell_max < 0) throw std::invalid_argument("FrameSpec: ell_max must be >= 0");
    // Row selection in the cyclic extensions needs L_cp, L_cs <= L.
    if (cp_len() > L)
        throw std::invalid_argument("FrameSpec: ell_max + L_w/2 must not exceed L");
}

void DDGridSpec::validate() const {
    if (G_tau < 1 || G_nu < 1 || u_nu < 1)
        throw std::invalid_argument("DDGridSpec: G_tau, G_nu, u_nu must all be >= 1");
}

void PathSet::validate(const DDGridSpec& grid) const {
    grid.validate();
    std::set<std::pair<int, int>> cells;
    for (const Path& p : paths) {
        if (p.delay < 0 || p.delay > grid.G_tau - 1)
            throw std::invalid_argument("PathSet: delay " + std::to_string(p.delay) +
                                        " outside [0, G_tau-1]");
        if (p.doppler < 0.0 || p.doppler > grid.kappa_max())
            throw std::invalid_argument("PathSet: doppler " + std::to_string(p.doppler) +
                                        " outside [0, (G_nu-1)/u_nu]");
        const int k = static_cast<int>(std::lround(p.doppler * grid.u_nu));
        if (!cells.insert({p.delay, k}).second)
            throw std::invalid_argument("PathSet: duplicate (delay, doppler) grid cell");
    }
}

}  // namespace ddomp
