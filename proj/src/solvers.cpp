#include "fdlsr/solvers.hpp"

#include <Eigen/Cholesky>

#include <cmath>
#include <stdexcept>
#include <string>

#include "fdlsr/classify.hpp"
#include "fdlsr/fisher.hpp"

namespace fdlsr {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

void check_shapes(const Eigen::MatrixXd& X, const Eigen::MatrixXd& H) {
    if (X.cols() != H.cols())
        fail("X has " + std::to_string(X.cols()) + " samples but H has " +
             std::to_string(H.cols()));
    if (X.size() == 0 || H.size() == 0) fail("empty input matrix");
}

void check_finite_sweep(const Eigen::MatrixXd& T, const Eigen::MatrixXd& Q,
                        const Eigen::MatrixXd& S, double obj, int sweep) {
    if (!T.allFinite() || !Q.allFinite() || !S.allFinite() || !std::isfinite(obj))
        throw std::runtime_error("non-finite values at iteration " + std::to_string(sweep));
}

double heldout_accuracy(const Eigen::MatrixXd& Q, const Eigen::MatrixXd& X,
                        const std::vector<int>& partition, const Heldout& heldout) {
    ProjectedGallery gallery{project(Q, X), partition};
    return accuracy(nn_predict(gallery, project(Q, heldout.features)), heldout.labels);
}

}  // namespace

void SolverConfig::validate() const {
    if (!(alpha > 0.0)) fail("alpha must be > 0");
    if (!(beta > 0.0)) fail("beta must be > 0");
    if (!(lambda >= 0.0)) fail("lambda must be >= 0");
    if (max_iter < 1) fail("max_iter must be >= 1");
    if (!(tol > 0.0)) fail("tol must be > 0");
    // volatile stops gcc from branching on the disengaged payload (valgrind)
    volatile int report_check = report_iter.has_value() ? *report_iter : 1;
    if (report_check < 1) fail("report_iter must be >= 1");
}

Eigen::MatrixXd ridge_kernel(const Eigen::MatrixXd& X, double beta) {
    if (!(beta > 0.0)) fail("beta must be > 0");
    Eigen::MatrixXd gram = X * X.transpose();
    gram.diagonal().array() += beta;

    Eigen::LLT<Eigen::MatrixXd> llt(gram);
    if (llt.info() != Eigen::Success)
        throw std::runtime_error("ridge kernel: Cholesky factorization failed");
    Eigen::MatrixXd Kt = llt.solve(X);  // (X X^T + beta I) Kt = X

    const double residual = (gram * Kt - X).norm();
    if (!(residual <= 1e-8 * (1.0 + X.norm())))
        throw std::runtime_error("ridge kernel: solve residual " + std::to_string(residual) +
                                 " exceeds tolerance");
    return Kt.transpose();
}

Eigen::MatrixXd build_direction_matrix(const Eigen::MatrixXd& H) {
    partition_from_labels(H);  // enforces one-hot columns
    return 2.0 * H - Eigen::MatrixXd::Ones(H.rows(), H.cols());
}

Eigen::MatrixXd update_t(const Eigen::MatrixXd& Q, const Eigen::MatrixXd& X,
                         const Eigen::MatrixXd& H, const Eigen::MatrixXd& B,
                         const Eigen::MatrixXd& S, const Eigen::MatrixXd& global_mean,
                         const Eigen::MatrixXd& class_means, double alpha, double lambda) {
    return (Q * X + alpha * (H + B.cwiseProduct(S)) - lambda * global_mean +
            2.0 * lambda * class_means) /
           (1.0 + alpha + 2.0 * lambda);
}

Projection update_q(const Eigen::MatrixXd& T, const Eigen::MatrixXd& kernel) {
    if (T.cols() != kernel.rows())
        fail("kernel built for " + std::to_string(kernel.rows()) + " samples, targets have " +
             std::to_string(T.cols()));
    return Projection{T * kernel};
}

Eigen::MatrixXd update_s(const Eigen::MatrixXd& T, const Eigen::MatrixXd& H,
                         const Eigen::MatrixXd& B) {
    return B.cwiseProduct(T - H).cwiseMax(0.0);
}

double objective(const Eigen::MatrixXd& Q, const Eigen::MatrixXd& X, const Eigen::MatrixXd& T,
                 const Eigen::MatrixXd& H, const Eigen::MatrixXd& B, const Eigen::MatrixXd& S,
                 const SolverConfig& cfg) {
    const double fit = (Q * X - T).squaredNorm();
    const double drag = (T - H - B.cwiseProduct(S)).squaredNorm();
    const double ridge = Q.squaredNorm();
    const double fisher = fisher_value(T, partition_from_labels(H));
    return fit + cfg.alpha * drag + cfg.beta * ridge + cfg.lambda * fisher;
}

FdlsrState fdlsr_init(const Eigen::MatrixXd& X, const Eigen::MatrixXd& H, double beta) {
    check_shapes(X, H);
    FdlsrState state;
    state.kernel = ridge_kernel(X, beta);
    state.projection.Q = H * state.kernel;
    state.targets.T = H;
    state.targets.S = Eigen::MatrixXd::Zero(H.rows(), H.cols());
    state.targets.B = build_direction_matrix(H);
    return state;
}

FitResult fit_fdlsr(const Eigen::MatrixXd& X, const Eigen::MatrixXd& H,
                    const std::vector<int>& partition, const SolverConfig& cfg,
                    const Heldout* heldout) {
    cfg.validate();
    check_shapes(X, H);
    if (partition != partition_from_labels(H)) fail("partition does not match label matrix");

    FdlsrState state = fdlsr_init(X, H, cfg.beta);
    const int budget = cfg.report_iter ? *cfg.report_iter : cfg.max_iter;

    FitResult result;
    for (int sweep = 1; sweep <= budget; ++sweep) {
        const MeanMatrices means = mean_matrices(state.targets.T, partition);  // lagged T
        state.targets.T = update_t(state.projection.Q, X, H, state.targets.B, state.targets.S,
                                   means.global_mean, means.class_means, cfg.alpha, cfg.lambda);
        Projection next = update_q(state.targets.T, state.kernel);
        const double q_delta = (next.Q - state.projection.Q).squaredNorm();
        state.projection = std::move(next);
        state.targets.S = update_s(state.targets.T, H, state.targets.B);

        IterationRecord rec;
        rec.objective = objective(state.projection.Q, X, state.targets.T, H, state.targets.B,
                                  state.targets.S, cfg);
        rec.q_delta = q_delta;
        check_finite_sweep(state.targets.T, state.projection.Q, state.targets.S, rec.objective,
                           sweep);
        if (heldout)
            rec.heldout_accuracy = heldout_accuracy(state.projection.Q, X, partition, *heldout);
        result.trace.iterations.push_back(rec);

        if (!cfg.report_iter && q_delta < cfg.tol) break;
    }

    result.trace.converged = result.trace.iterations.back().q_delta < cfg.tol;
    result.projection = std::move(state.projection);
    result.targets = std::move(state.targets);
    return result;
}

Projection fit_lsr(const Eigen::MatrixXd& X, const Eigen::MatrixXd& H, double beta) {
    check_shapes(X, H);
    return Projection{H * ridge_kernel(X, beta)};
}

FitResult fit_dlsr(const Eigen::MatrixXd& X, const Eigen::MatrixXd& H, double beta, int max_iter,
                   double tol, const Heldout* heldout, std::optional<int> report_iter) {
    if (!(beta > 0.0)) fail("beta must be > 0");
    if (max_iter < 1) fail("max_iter must be >= 1");
    if (!(tol > 0.0)) fail("tol must be > 0");
    volatile int report_check = report_iter.has_value() ? *report_iter : 1;
    if (report_check < 1) fail("report_iter must be >= 1");
    check_shapes(X, H);

    const std::vector<int> partition = partition_from_labels(H);
    const Eigen::MatrixXd kernel = ridge_kernel(X, beta);
    const Eigen::MatrixXd B = build_direction_matrix(H);
    Eigen::MatrixXd Q = H * kernel;
    Eigen::MatrixXd S = Eigen::MatrixXd::Zero(H.rows(), H.cols());
    const int budget = report_iter ? *report_iter : max_iter;

    FitResult result;
    for (int sweep = 1; sweep <= budget; ++sweep) {
        S = update_s(Q * X, H, B);  // max(B .* (QX - H), 0)
        const Eigen::MatrixXd relaxed = H + B.cwiseProduct(S);
        Eigen::MatrixXd next = relaxed * kernel;
        const double q_delta = (next - Q).squaredNorm();
        Q = std::move(next);

        IterationRecord rec;
        rec.objective = (Q * X - relaxed).squaredNorm() + beta * Q.squaredNorm();
        rec.q_delta = q_delta;
        check_finite_sweep(relaxed, Q, S, rec.objective, sweep);
        if (heldout) rec.heldout_accuracy = heldout_accuracy(Q, X, partition, *heldout);
        result.trace.iterations.push_back(rec);

        if (!report_iter && q_delta < tol) break;
    }

    result.trace.converged = result.trace.iterations.back().q_delta < tol;
    result.projection.Q = std::move(Q);
    result.targets.T = H + B.cwiseProduct(S);
    result.targets.S = std::move(S);
    result.targets.B = B;
    return result;
}

std::vector<int> partition_from_labels(const Eigen::MatrixXd& H) {
    if (H.size() == 0) fail("empty label matrix");
    std::vector<int> partition(static_cast<std::size_t>(H.cols()), -1);
    for (Eigen::Index j = 0; j < H.cols(); ++j) {
        for (Eigen::Index i = 0; i < H.rows(); ++i) {
            const double v = H(i, j);
            if (v == 1.0) {
                if (partition[static_cast<std::size_t>(j)] != -1)
                    fail("column " + std::to_string(j) + " has multiple label entries");
                partition[static_cast<std::size_t>(j)] = static_cast<int>(i);
            } else if (v != 0.0) {
                fail("column " + std::to_string(j) + " is not one-hot");
            }
        }
        if (partition[static_cast<std::size_t>(j)] == -1)
            fail("column " + std::to_string(j) + " has no label entry");
    }
    return partition;
}

}  // namespace fdlsr
