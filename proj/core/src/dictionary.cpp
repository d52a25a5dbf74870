#include "ddomp/dictionary.hpp"

#include <ostream>
#include <stdexcept>

#include "ddomp/operators.hpp"
#include "ddomp/seed.hpp"

namespace ddomp {

int column_index(int l, int k, const DDGridSpec& grid) {
    grid.validate();
    if (l < 0 || l > grid.G_tau)
        throw std::out_of_range("column_index: l outside [0, G_tau]");
    if (k < 0 || k >= grid.G_nu)
        throw std::out_of_range("column_index: k outside [0, G_nu)");
    return l * grid.G_nu + k;
}

WindowedDictionary build_dictionary(const VecC& pilot, const FrameSpec& frame,
                                    const DDGridSpec& grid, const WindowVector& window,
                                    bool normalize_columns) {
    frame.validate();
    grid.validate();
    const int L = frame.L;
    const int Lp = frame.window_len();
    const int half_roll = frame.L_w / 2;
    if (pilot.size() != L)
        throw std::invalid_argument("build_dictionary: pilot length != frame.L");
    if (pilot.isZero(0.0))
        throw std::invalid_argument("build_dictionary: pilot must be nonzero");
    if (window.size() != Lp)
        throw std::invalid_argument("build_dictionary: window length != L'");

    WindowedDictionary dict;
    dict.grid = grid;
    dict.frame = frame;
    dict.normalized = normalize_columns;
    dict.pilot_id = fnv1a64(pilot.data(), sizeof(Complex) * pilot.size());
    dict.psi.resize(Lp, grid.total_columns());

    // One pass per delay block: delay the pilot cyclically once, then sweep k.
    for (int l = 0; l <= grid.G_tau; ++l) {
        VecC delayed(Lp);  // pilot delayed by l, sampled on the window support
        for (int m = 0; m < Lp; ++m) {
            int idx = (m - half_roll - l) % L;
            if (idx < 0) idx += L;
            delayed[m] = window.w[m] * pilot[idx];
        }
        for (int k = 0; k < grid.G_nu; ++k) {
            const double kappa = grid.kappa(k);
            auto col = dict.psi.col(column_index(l, k, grid));
            for (int m = 0; m < Lp; ++m)
                col[m] = unit_phase(kappa, static_cast<double>(m - half_roll - l), L) *
                         delayed[m];
            if (normalize_columns) {
                const double nrm = col.norm();
                if (nrm > 0.0) col /= nrm;
            }
        }
    }
    return dict;
}

VecR correlate(const WindowedDictionary& dict, const VecC& residual) {
    if (residual.size() != dict.rows())
        throw std::invalid_argument("correlate: residual length != L'");
    return (dict.psi.adjoint() * residual).cwiseAbs();
}

void write_dictionary_csv(const WindowedDictionary& dict, std::ostream& os) {
    os << "# ddomp dictionary Lprime=" << dict.rows() << " G_tau=" << dict.grid.G_tau
       << " G_nu=" << dict.grid.G_nu << " u_nu=" << dict.grid.u_nu
       << " cols=" << dict.cols() << " pilot_id=" << dict.pilot_id
       << " normalized=" << (dict.normalized ? 1 : 0) << "\n";
    os << "# row-major; each line is one matrix row of re,im pairs\n";
    char buf[64];
    for (int r = 0; r < dict.rows(); ++r) {
        for (int c = 0; c < dict.cols(); ++c) {
            const Complex v = dict.psi(r, c);
            std::snprintf(buf, sizeof(buf), "%.17g,%.17g", v.real(), v.imag());
            os << (c ? "," : "") << buf;
        }
        os << "\n";
    }
}

}  // namespace ddomp
