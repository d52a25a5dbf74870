#pragma once

#include <numbers>

#include "ddomp/types.hpp"

namespace ddomp {

/// e^{j 2 pi kappa q / L}. Every phase in the toolkit goes through this one
/// expression so that algebraically equal routes agree bit-for-bit.
inline Complex unit_phase(double kappa, double q, int L) {
    return std::polar(1.0, 2.0 * std::numbers::pi * kappa * q / static_cast<double>(L));
}

enum class ExtensionVariant {
    full,            ///< [G_cp; I_L; G_cs], size L_tot x L
    window_trimmed,  ///< [G_w; I_L; G_cs],  size L'    x L
};

/// Row-selection matrix that maps a length-L pilot to its cyclically
/// extended frame (`full`) or to the receiver-window support (`window_trimmed`).
MatR cyclic_extension(const FrameSpec& frame, ExtensionVariant variant);

/// Applies the extension by direct indexing; equals cyclic_extension(...) * x.
VecC extend_pilot(const VecC& x, const FrameSpec& frame, ExtensionVariant variant);

/// ell-step forward cyclic shift: (P v)[n] = v[(n - ell) mod size].
MatR permutation_power(int size, int ell);

/// diag{ e^{j 2 pi (n + start_offset) kappa / L} }, n = 0..size-1.
MatC doppler_matrix(int size, double kappa, int L, int start_offset);

/// Single delay-Doppler shift component: row n carries
/// e^{j 2 pi kappa (n - ell + start_offset) / L} at column (n - ell) mod size.
/// Equals doppler_matrix(size, kappa, L, start_offset - ell) * permutation_power(size, ell);
/// the phase uses the unwrapped index n - ell so that, at size = L and
/// start_offset = 0, applying the matrix to s gives
/// e^{j 2 pi kappa (n - ell) / L} s[(n - ell) mod L] even for fractional kappa.
MatC component_matrix(int size, int ell, double kappa, int L, int start_offset);

/// Superposition of per-path components: H = sum_p h_p * component(ell_p, kappa_p).
MatC channel_matrix(const PathSet& paths, int size, int L, int start_offset);

}  // namespace ddomp
