#pragma once

#include "ddomp/types.hpp"

namespace ddomp {

/// Builds the length-L' receiver window for `frame`: a raised-cosine taper
/// with L_w-sample half-cosine ramps and a flat top pinned to exactly 1.
/// L_w = 0 degenerates to the all-ones (rectangular) window.
WindowVector build_window(const FrameSpec& frame);

}  // namespace ddomp
