#include "ddomp/operators.hpp"

#include <stdexcept>

namespace ddomp {

namespace {

// Selected pilot row for each frame row, full extension: time runs
// n = -L_cp .. L + L_cs - 1 and row t picks pilot index ((t - L_cp)) mod L.
int wrap(int i, int n) {
    int r = i % n;
    return r < 0 ? r + n : r;
}

}  // namespace

MatR cyclic_extension(const FrameSpec& frame, ExtensionVariant variant) {
    frame.validate();
    const int L = frame.L;
    const int head = variant == ExtensionVariant::full ? frame.cp_len() : frame.cs_len();
    const int rows = head + L + frame.cs_len();
    MatR t = MatR::Zero(rows, L);
    for (int r = 0; r < rows; ++r) t(r, wrap(r - head, L)) = 1.0;
    return t;
}

VecC extend_pilot(const VecC& x, const FrameSpec& frame, ExtensionVariant variant) {
    frame.validate();
    if (x.size() != frame.L)
        throw std::invalid_argument("extend_pilot: pilot length != frame.L");
    const int head = variant == ExtensionVariant::full ? frame.cp_len() : frame.cs_len();
    const int rows = head + frame.L + frame.cs_len();
    VecC out(rows);
    for (int r = 0; r < rows; ++r) out[r] = x[wrap(r - head, frame.L)];
    return out;
}

MatR permutation_power(int size, int ell) {
    if (size < 1) throw std::invalid_argument("permutation_power: size must be >= 1");
    if (ell < 0 || ell >= size)
        throw std::invalid_argument("permutation_power: require 0 <= ell < size");
    MatR p = MatR::Zero(size, size);
    for (int n = 0; n < size; ++n) p(n, wrap(n - ell, size)) = 1.0;
    return p;
}

MatC doppler_matrix(int size, double kappa, int L, int start_offset) {
    if (size < 1 || L < 1)
        throw std::invalid_argument("doppler_matrix: size and L must be >= 1");
    MatC d = MatC::Zero(size, size);
    for (int n = 0; n < size; ++n)
        d(n, n) = unit_phase(kappa, static_cast<double>(n + start_offset), L);
    return d;
}

MatC component_matrix(int size, int ell, double kappa, int L, int start_offset) {
    if (size < 1 || L < 1)
        throw std::invalid_argument("component_matrix: size and L must be >= 1");
    if (ell < 0 || ell >= size)
        throw std::invalid_argument("component_matrix: require 0 <= ell < size");
    MatC g = MatC::Zero(size, size);
    for (int n = 0; n < size; ++n)
        g(n, wrap(n - ell, size)) =
            unit_phase(kappa, static_cast<double>(n - ell + start_offset), L);
    return g;
}

MatC channel_matrix(const PathSet& paths, int size, int L, int start_offset) {
    MatC h = MatC::Zero(size, size);
    for (const Path& p : paths.paths) {
        for (int n = 0; n < size; ++n)
            h(n, wrap(n - p.delay, size)) +=
                p.gain * unit_phase(p.doppler, static_cast<double>(n - p.delay + start_offset), L);
    }
    return h;
}

}  // namespace ddomp
