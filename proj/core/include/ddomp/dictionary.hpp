#pragma once

#include <cstdint>
#include <iosfwd>

#include "ddomp/types.hpp"

namespace ddomp {

/// The windowed block dictionary Psi = [Phi_S Phi_I]. Columns 0..G_tau*G_nu-1
/// (the selectable block, index set I_S) hold windowed delay-Doppler shifted
/// copies of the pilot with delays l in [0, G_tau); the trailing G_nu columns
/// (the interference block, index set I_I) use the out-of-range delay
/// l = G_tau and exist only to measure the leakage floor.
struct WindowedDictionary {
    MatC psi;
    DDGridSpec grid;
    FrameSpec frame;
    std::uint64_t pilot_id = 0;  ///< fingerprint of the generating pilot
    bool normalized = false;     ///< unit-norm columns (off by default)

    int rows() const { return static_cast<int>(psi.rows()); }
    int cols() const { return static_cast<int>(psi.cols()); }
    int selectable_begin() const { return 0; }
    int selectable_end() const { return grid.selectable_columns(); }
    int interference_begin() const { return grid.selectable_columns(); }
    int interference_end() const { return grid.total_columns(); }
};

/// Column index for delay bin l and Doppler bin k: d = l * G_nu + k.
/// l == G_tau addresses the interference block.
int column_index(int l, int k, const DDGridSpec& grid);

/// Builds the dictionary for one (pilot, frame, grid, window) tuple.
///
/// Column (l, k) is the windowed receiver image of the pilot delayed by l
/// samples and Doppler-shifted by kappa = k/u_nu: the delay acts cyclically
/// on the pilot (the cyclic extensions make stream delays circular) and the
/// phase ramp runs over the retained window n in [-L_w/2, L + L_w/2) as
/// e^{j 2 pi kappa (n - l) / L}. This makes a column exactly the noiseless
/// front-end output for a single path at (l, k).
WindowedDictionary build_dictionary(const VecC& pilot, const FrameSpec& frame,
                                    const DDGridSpec& grid, const WindowVector& window,
                                    bool normalize_columns = false);

/// |Psi^H residual| for every column.
VecR correlate(const WindowedDictionary& dict, const VecC& residual);

/// Text dump for offline inspection: '#' header with the geometry, then one
/// matrix row per line as comma-separated re,im pairs (row-major).
void write_dictionary_csv(const WindowedDictionary& dict, std::ostream& os);

}  // namespace ddomp
