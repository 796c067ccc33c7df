#pragma once

#include "fdlsr/dataset.hpp"
#include "fdlsr/solvers.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace fdlsr {

enum class Method { lsr, dlsr, fdlsr };

std::string to_string(Method method);
Method method_from_string(const std::string& name);

/// Uniform front for the three solvers. lsr yields a one-row trace
/// (objective of the ridge problem, q_delta 0).
FitResult fit_method(Method method, const Eigen::MatrixXd& X, const Eigen::MatrixXd& H,
                     const std::vector<int>& partition, const SolverConfig& cfg,
                     const Heldout* heldout = nullptr);

struct TrialReport {
    Method method = Method::fdlsr;
    int k_per_class = 0;
    int repeats = 0;
    std::uint64_t seed = 0;
    std::vector<double> accuracies;  // one entry per repeat
    double mean = 0.0;
    double stddev = 0.0;  // population: divide by repeats
    double train_time_s = 0.0;
    double test_time_s = 0.0;
    SolverConfig config;
    NormScheme normalize = NormScheme::unit_l2;
};

/// Repeated random splits: repeat r splits with mix_seed(seed, r), fits on
/// the train half and scores nearest-neighbor accuracy on the rest. Training
/// time covers label-matrix build and the fit (kernel precompute included);
/// test time covers projection and classification.
TrialReport run_trials(const Dataset& ds, int k_per_class, int repeats, std::uint64_t seed,
                       Method method, const SolverConfig& cfg,
                       NormScheme normalize = NormScheme::unit_l2);

struct GridCell {
    double alpha = 0.0;
    double beta = 0.0;
    double lambda = 0.0;
    TrialReport report;
};

struct GridResult {
    std::vector<GridCell> cells;  // lexicographic in (alpha, beta, lambda)
    std::size_t best_index = 0;   // max mean accuracy, first cell on ties

    const GridCell& best() const { return cells.at(best_index); }
};

/// The six-value candidate set used for every parameter when no explicit
/// grid is supplied: {1e-5, 1e-4, 1e-3, 1e-2, 1e-1, 1}.
std::vector<double> default_grid();

/// Full Cartesian product over (alpha, beta, lambda), each cell evaluated
/// with run_trials. Cells may run on `jobs` threads; results are merged in
/// sorted-key order regardless of completion order.
GridResult grid_search(const Dataset& ds, int k_per_class, int repeats, std::uint64_t seed,
                       std::vector<double> alphas, std::vector<double> betas,
                       std::vector<double> lambdas, Method method = Method::fdlsr,
                       const SolverConfig& base = {},
                       NormScheme normalize = NormScheme::unit_l2, int jobs = 1);

struct MarginStats {
    std::optional<double> min_inter;  // absent when fewer than two classes
    double max_intra = 0.0;
};

/// Minimum inter-class and maximum intra-class Euclidean distance over all
/// column pairs of T.
MarginStats margin_stats(const Eigen::MatrixXd& T, const std::vector<int>& partition);

}  // namespace fdlsr
