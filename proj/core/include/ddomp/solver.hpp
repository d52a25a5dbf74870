#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ddomp/dictionary.hpp"
#include "ddomp/types.hpp"

namespace ddomp {

enum class StopReason {
    none,                ///< still running (never returned)
    interference,        ///< beta_i <= gamma_i
    iteration_cap,       ///< |support| reached the hard cap
    fixed_count,         ///< fixed-K rule exhausted
    residual_threshold,  ///< ||r||^2 fell below the noise threshold
    zero_correlation,    ///< beta_i == 0, nothing left to select
    rank_deficient,      ///< next atom numerically inside the selected span
};

std::string to_string(StopReason r);

struct IterationRecord {
    int iter = 0;
    int selected = -1;
    double beta = 0.0;           ///< max |psi_j^H r_i| over I_S at selection time
    double gamma = 0.0;          ///< max |psi_j^H r_i| over I_I compared at entry
    double residual_norm = 0.0;  ///< ||r_{i+1}|| after the LS update
};

/// Greedy solver output. support/coefficients hold the last completed
/// least-squares solution; Q == support.size() == completed iterations.
struct SparseEstimate {
    std::vector<int> support;
    VecC coefficients;
    std::vector<IterationRecord> trace;
    StopReason stop_reason = StopReason::none;
    double final_beta = 0.0;
    double final_gamma = 0.0;
    bool hit_cap = false;
    bool rank_flagged = false;

    int Q() const { return static_cast<int>(support.size()); }
};

/// Stopping policy for the baseline OMP. cap <= 0 selects the default hard
/// cap min(L', G_tau * G_nu). For residual_threshold, tau <= 0 derives the
/// threshold from the noise level as L' * sigma^2.
struct StoppingRule {
    enum class Kind { interference_adaptive, fixed_iterations, residual_threshold };

    Kind kind = Kind::interference_adaptive;
    int fixed_k = 0;
    double tau = 0.0;
    int cap = 0;

    static StoppingRule interference(int cap = 0);
    static StoppingRule fixed_iterations(int k, int cap = 0);
    static StoppingRule residual_threshold(double tau = 0.0, int cap = 0);

    void validate() const;
};

/// Incrementally maintained thin QR of the selected columns. Columns are
/// orthogonalized by modified Gram-Schmidt with one reorthogonalization
/// pass; append() refuses columns whose remainder falls below a relative
/// rank tolerance.
class IncrementalQr {
public:
    IncrementalQr(int rows, int max_cols, double rank_tol = 1e-10);

    bool append(const VecC& col);
    int cols() const { return n_; }

    /// y - Q Q^H y: the least-squares residual against the selected span.
    VecC project_residual(const VecC& y) const;

    /// Coefficients of the selected columns: R^{-1} Q^H y.
    VecC solve(const VecC& y) const;

private:
    MatC q_;
    MatC r_;
    int n_ = 0;
    double rank_tol_;
};

struct LeastSquaresResult {
    VecC coefficients;
    bool rank_deficient = false;
};

/// min ||y - A h||_2 via the incremental orthogonal factorization (never the
/// normal equations). Rank deficiency is reported, not thrown.
LeastSquaresResult least_squares(const MatC& a, const VecC& y);

/// Delay-aware OMP: greedy selection restricted to I_S, with the adaptive
/// stopping rule beta_i <= gamma_i where gamma is the maximum correlation
/// of the interference block with the running residual. correlation_log,
/// when non-null, receives |Psi^H r_i| for every evaluated iteration
/// (including i = 0 and the final one).
SparseEstimate da_omp(const WindowedDictionary& dict, const VecC& y, int cap = 0,
                      std::vector<VecR>* correlation_log = nullptr);

/// Standard OMP over I_S only; the interference block never influences
/// selection or stopping. sigma2 feeds the residual-threshold rule.
SparseEstimate omp_baseline(const WindowedDictionary& dict, const VecC& y,
                            const StoppingRule& rule, double sigma2 = 0.0);

/// On-grid channel reconstruction from a solved estimate: the L x L matrix
/// sum_q h_q Gamma(l_q, k_q / u_nu) with time origin n = 0.
MatC reconstruct_channel(const SparseEstimate& est, const DDGridSpec& grid, int L);

/// Per-iteration trace rows as CSV: iter,selected,beta,gamma,residual_norm.
void write_trace_csv(const SparseEstimate& est, std::ostream& os);

}  // namespace ddomp
