#include "ddomp/solver.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "ddomp/operators.hpp"

namespace ddomp {

std::string to_string(StopReason r) {
    switch (r) {
        case StopReason::none: return "none";
        case StopReason::interference: return "interference";
        case StopReason::iteration_cap: return "iteration_cap";
        case StopReason::fixed_count: return "fixed_count";
        case StopReason::residual_threshold: return "residual_threshold";
        case StopReason::zero_correlation: return "zero_correlation";
        case StopReason::rank_deficient: return "rank_deficient";
    }
    return "unknown";
}

StoppingRule StoppingRule::interference(int cap) {
    return {Kind::interference_adaptive, 0, 0.0, cap};
}
StoppingRule StoppingRule::fixed_iterations(int k, int cap) {
    return {Kind::fixed_iterations, k, 0.0, cap};
}
StoppingRule StoppingRule::residual_threshold(double tau, int cap) {
    return {Kind::residual_threshold, 0, tau, cap};
}

void StoppingRule::validate() const {
    if (kind == Kind::fixed_iterations && fixed_k < 1)
        throw std::invalid_argument("StoppingRule: fixed_iterations requires K >= 1");
    if (cap < 0) throw std::invalid_argument("StoppingRule: cap must be >= 0");
}

IncrementalQr::IncrementalQr(int rows, int max_cols, double rank_tol)
    : q_(MatC::Zero(rows, max_cols)), r_(MatC::Zero(max_cols, max_cols)),
      rank_tol_(rank_tol) {}

bool IncrementalQr::append(const VecC& col) {
    if (col.size() != q_.rows()) throw std::invalid_argument("IncrementalQr: bad column size");
    if (n_ >= r_.cols()) throw std::logic_error("IncrementalQr: capacity exceeded");
    const double col_norm = col.norm();
    VecC v = col;
    VecC h = VecC::Zero(n_);
    if (n_ > 0) {
        auto q = q_.leftCols(n_);
        VecC h1 = q.adjoint() * v;
        v.noalias() -= q * h1;
        VecC h2 = q.adjoint() * v;  // reorthogonalization pass
        v.noalias() -= q * h2;
        h = h1 + h2;
    }
    const double rem = v.norm();
    if (rem <= rank_tol_ * col_norm) return false;
    q_.col(n_) = v / rem;
    if (n_ > 0) r_.col(n_).head(n_) = h;
    r_(n_, n_) = rem;
    ++n_;
    return true;
}

VecC IncrementalQr::project_residual(const VecC& y) const {
    if (n_ == 0) return y;
    auto q = q_.leftCols(n_);
    return y - q * (q.adjoint() * y);
}

VecC IncrementalQr::solve(const VecC& y) const {
    if (n_ == 0) return VecC();
    auto q = q_.leftCols(n_);
    VecC rhs = q.adjoint() * y;
    return r_.topLeftCorner(n_, n_).triangularView<Eigen::Upper>().solve(rhs);
}

LeastSquaresResult least_squares(const MatC& a, const VecC& y) {
    if (a.rows() != y.size()) throw std::invalid_argument("least_squares: shape mismatch");
    if (a.cols() == 0) return {VecC(), false};
    IncrementalQr qr(static_cast<int>(a.rows()), static_cast<int>(a.cols()));
    for (int c = 0; c < a.cols(); ++c) {
        if (!qr.append(a.col(c))) return {VecC(), true};
    }
    return {qr.solve(y), false};
}

namespace {

int default_cap(const WindowedDictionary& dict) {
    return std::min(dict.rows(), dict.grid.selectable_columns());
}

// argmax over [begin, end); smallest index wins ties (strict > scan).
std::pair<int, double> segment_max(const VecR& v, int begin, int end) {
    int arg = begin;
    double best = v[begin];
    for (int j = begin + 1; j < end; ++j) {
        if (v[j] > best) {
            best = v[j];
            arg = j;
        }
    }
    return {arg, best};
}

}  // namespace

SparseEstimate da_omp(const WindowedDictionary& dict, const VecC& y, int cap,
                      std::vector<VecR>* correlation_log) {
    if (y.size() != dict.rows()) throw std::invalid_argument("da_omp: y length != L'");
    if (cap <= 0) cap = default_cap(dict);

    const int s_begin = dict.selectable_begin();
    const int s_end = dict.selectable_end();
    const int i_end = dict.interference_end();

    SparseEstimate est;
    IncrementalQr qr(dict.rows(), cap);

    VecR corr = correlate(dict, y);
    if (correlation_log) correlation_log->push_back(corr);
    double beta = segment_max(corr, s_begin, s_end).second;
    double gamma = 0.0;

    int iter = 0;
    while (true) {
        if (!(beta > gamma)) {
            est.stop_reason = StopReason::interference;
            break;
        }
        if (est.Q() >= cap) {
            est.stop_reason = StopReason::iteration_cap;
            est.hit_cap = true;
            break;
        }
        const auto [d, beta_sel] = segment_max(corr, s_begin, s_end);
        if (!qr.append(dict.psi.col(d))) {
            est.stop_reason = StopReason::rank_deficient;
            est.rank_flagged = true;
            break;
        }
        est.support.push_back(d);
        const VecC r = qr.project_residual(y);
        const double gamma_entry = gamma;
        corr = correlate(dict, r);
        if (correlation_log) correlation_log->push_back(corr);
        beta = segment_max(corr, s_begin, s_end).second;
        gamma = segment_max(corr, s_end, i_end).second;
        est.trace.push_back({iter, d, beta_sel, gamma_entry, r.norm()});
        ++iter;
    }

    est.final_beta = beta;
    est.final_gamma = gamma;
    if (!est.support.empty()) est.coefficients = qr.solve(y);
    return est;
}

SparseEstimate omp_baseline(const WindowedDictionary& dict, const VecC& y,
                            const StoppingRule& rule, double sigma2) {
    if (y.size() != dict.rows()) throw std::invalid_argument("omp_baseline: y length != L'");
    rule.validate();
    if (rule.kind == StoppingRule::Kind::interference_adaptive)
        return da_omp(dict, y, rule.cap);

    int cap = rule.cap > 0 ? rule.cap : default_cap(dict);
    double threshold = 0.0;
    if (rule.kind == StoppingRule::Kind::residual_threshold) {
        if (rule.tau > 0.0) {
            threshold = rule.tau;
        } else {
            if (sigma2 <= 0.0)
                throw std::invalid_argument(
                    "omp_baseline: residual_threshold needs sigma2 > 0 (or explicit tau)");
            threshold = dict.rows() * sigma2;
        }
    }

    const int s_begin = dict.selectable_begin();
    const int s_end = dict.selectable_end();
    const int i_end = dict.interference_end();

    SparseEstimate est;
    IncrementalQr qr(dict.rows(), cap);
    VecC r = y;
    VecR corr = correlate(dict, r);

    int iter = 0;
    while (true) {
        if (rule.kind == StoppingRule::Kind::residual_threshold &&
            r.squaredNorm() <= threshold) {
            est.stop_reason = StopReason::residual_threshold;
            break;
        }
        if (rule.kind == StoppingRule::Kind::fixed_iterations && est.Q() >= rule.fixed_k) {
            est.stop_reason = StopReason::fixed_count;
            break;
        }
        if (est.Q() >= cap) {
            est.stop_reason = StopReason::iteration_cap;
            est.hit_cap = true;
            break;
        }
        const auto [d, beta] = segment_max(corr, s_begin, s_end);
        if (beta == 0.0) {
            est.stop_reason = StopReason::zero_correlation;
            break;
        }
        if (!qr.append(dict.psi.col(d))) {
            est.stop_reason = StopReason::rank_deficient;
            est.rank_flagged = true;
            break;
        }
        est.support.push_back(d);
        r = qr.project_residual(y);
        // gamma recorded for diagnostics only; it never drives the baseline.
        const double gamma = segment_max(corr, s_end, i_end).second;
        est.trace.push_back({iter, d, beta, gamma, r.norm()});
        corr = correlate(dict, r);
        ++iter;
    }

    est.final_beta = segment_max(corr, s_begin, s_end).second;
    est.final_gamma = segment_max(corr, s_end, i_end).second;
    if (!est.support.empty()) est.coefficients = qr.solve(y);
    return est;
}

MatC reconstruct_channel(const SparseEstimate& est, const DDGridSpec& grid, int L) {
    grid.validate();
    if (L < 1) throw std::invalid_argument("reconstruct_channel: L must be >= 1");
    MatC h = MatC::Zero(L, L);
    for (int q = 0; q < est.Q(); ++q) {
        const int d = est.support[q];
        if (d < 0 || d >= grid.selectable_columns())
            throw std::invalid_argument("reconstruct_channel: support index outside I_S");
        const int l = d / grid.G_nu;
        const double kappa = grid.kappa(d % grid.G_nu);
        const Complex gain = est.coefficients[q];
        for (int n = 0; n < L; ++n) {
            int c = (n - l) % L;
            if (c < 0) c += L;
            h(n, c) += gain * unit_phase(kappa, static_cast<double>(n - l), L);
        }
    }
    return h;
}

void write_trace_csv(const SparseEstimate& est, std::ostream& os) {
    os << "iter,selected,beta,gamma,residual_norm\n";
    char buf[128];
    for (const IterationRecord& t : est.trace) {
        std::snprintf(buf, sizeof(buf), "%d,%d,%.12g,%.12g,%.12g\n", t.iter, t.selected,
                      t.beta, t.gamma, t.residual_norm);
        os << buf;
    }
}

}  // namespace ddomp
