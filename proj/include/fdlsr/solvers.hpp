#pragma once

#include <Eigen/Core>

#include <optional>
#include <vector>

namespace fdlsr {

struct SolverConfig {
    double alpha = 1.0;
    double beta = 1e-2;
    double lambda = 1.0;  // 0 degrades the Fisher solver toward plain dragging
    int max_iter = 30;
    double tol = 1e-4;  // stop once ||Q - Q0||_F^2 falls below
    /// When set: run exactly this many sweeps and skip the tol-based stop
    /// (fixed-budget reporting). `converged` then reflects the last sweep.
    std::optional<int> report_iter;

    void validate() const;
};

struct IterationRecord {
    double objective = 0.0;
    double q_delta = 0.0;  // ||Q - Q0||_F^2 of the sweep
    std::optional<double> heldout_accuracy;
};

struct SolverTrace {
    std::vector<IterationRecord> iterations;
    bool converged = false;

    int iterations_run() const { return static_cast<int>(iterations.size()); }
};

struct Projection {
    Eigen::MatrixXd Q;  // c x d
};

/// The learned regression targets: T is the transition matrix, S >= 0 the
/// dragging magnitudes, B the +/-1 dragging directions (+1 on true-class
/// entries). The relaxed labels are H + B .* S.
struct RelaxedTargets {
    Eigen::MatrixXd T;
    Eigen::MatrixXd S;
    Eigen::MatrixXd B;
};

/// Normalized evaluation columns scored against the training gallery after
/// every sweep; fills the optional accuracy column of the trace.
struct Heldout {
    Eigen::MatrixXd features;
    std::vector<int> labels;
};

struct FitResult {
    Projection projection;
    SolverTrace trace;
    RelaxedTargets targets;
};

/// K = X^T (X X^T + beta I)^{-1}, the precomputable factor shared by every
/// projection update on X. Solved via Cholesky with a residual check; throws
/// on numerical failure instead of returning NaNs.
Eigen::MatrixXd ridge_kernel(const Eigen::MatrixXd& X, double beta);

/// B = 2H - 1 for one-hot H: +1 where H is 1, -1 elsewhere.
Eigen::MatrixXd build_direction_matrix(const Eigen::MatrixXd& H);

/// Closed-form transition update with the mean matrices held fixed:
/// (Q X + alpha (H + B .* S) - lambda M + 2 lambda Mhat) / (1 + alpha + 2 lambda).
Eigen::MatrixXd update_t(const Eigen::MatrixXd& Q, const Eigen::MatrixXd& X,
                         const Eigen::MatrixXd& H, const Eigen::MatrixXd& B,
                         const Eigen::MatrixXd& S, const Eigen::MatrixXd& global_mean,
                         const Eigen::MatrixXd& class_means, double alpha, double lambda);

/// Ridge-regression projection onto the current targets: Q = T K.
Projection update_q(const Eigen::MatrixXd& T, const Eigen::MatrixXd& kernel);

/// Entrywise nonnegative dragging solution: S = max(B .* (T - H), 0).
Eigen::MatrixXd update_s(const Eigen::MatrixXd& T, const Eigen::MatrixXd& H,
                         const Eigen::MatrixXd& B);

/// ||QX - T||^2 + alpha ||T - (H + B.*S)||^2 + beta ||Q||^2 + lambda Fisher(T),
/// with the class partition read off the one-hot H.
double objective(const Eigen::MatrixXd& Q, const Eigen::MatrixXd& X,
                 const Eigen::MatrixXd& T, const Eigen::MatrixXd& H,
                 const Eigen::MatrixXd& B, const Eigen::MatrixXd& S,
                 const SolverConfig& cfg);

struct FdlsrState {
    Projection projection;
    RelaxedTargets targets;
    Eigen::MatrixXd kernel;
};

/// Alternation starting point: Q = H K, S = 0, T = H, B = 2H - 1.
FdlsrState fdlsr_init(const Eigen::MatrixXd& X, const Eigen::MatrixXd& H, double beta);

/// Alternating minimization, sweep order T -> Q -> S. The means entering the
/// T-update come from the previous sweep's T (first sweep: from T = H).
/// Stops once ||Q - Q0||_F^2 < cfg.tol or after max_iter sweeps; throws on
/// non-finite iterates, reporting the sweep index.
FitResult fit_fdlsr(const Eigen::MatrixXd& X, const Eigen::MatrixXd& H,
                    const std::vector<int>& partition, const SolverConfig& cfg,
                    const Heldout* heldout = nullptr);

/// Closed-form ridge fit against the strict one-hot targets.
Projection fit_lsr(const Eigen::MatrixXd& X, const Eigen::MatrixXd& H, double beta);

/// Dragging-only baseline. Starts from the ridge fit (the Q-step at S = 0),
/// then alternates exact coordinate minimizers S -> Q, so the objective is
/// non-increasing per sweep. Same stopping rule as fit_fdlsr.
FitResult fit_dlsr(const Eigen::MatrixXd& X, const Eigen::MatrixXd& H, double beta,
                   int max_iter, double tol, const Heldout* heldout = nullptr,
                   std::optional<int> report_iter = std::nullopt);

/// Class index per column of a one-hot label matrix.
std::vector<int> partition_from_labels(const Eigen::MatrixXd& H);

}  // namespace fdlsr
