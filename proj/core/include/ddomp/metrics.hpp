#pragma once

#include <stdexcept>

#include "ddomp/types.hpp"

namespace ddomp {

/// ||H_est - H_true||_F^2 / ||H_true||_F^2.
inline double nmse(const MatC& h_est, const MatC& h_true) {
    if (h_est.rows() != h_true.rows() || h_est.cols() != h_true.cols())
        throw std::invalid_argument("nmse: shape mismatch");
    const double denom = h_true.squaredNorm();
    if (denom == 0.0) throw std::invalid_argument("nmse: zero reference channel");
    return (h_est - h_true).squaredNorm() / denom;
}

}  // namespace ddomp
