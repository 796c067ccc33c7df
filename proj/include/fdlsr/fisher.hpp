#pragma once

#include <Eigen/Core>

#include <vector>

namespace fdlsr {

/// Column-replicated means of a class-partitioned target matrix: column j of
/// class_means is the mean over the class of sample j, every column of
/// global_mean is the mean over all samples.
struct MeanMatrices {
    Eigen::MatrixXd class_means;
    Eigen::MatrixXd global_mean;
};

/// partition[j] = class of column j; throws when a class index in [0, max]
/// has no columns.
MeanMatrices mean_matrices(const Eigen::MatrixXd& T, const std::vector<int>& partition);

/// Within-class scatter minus between-class scatter plus ||T||_F^2, with the
/// between term comparing each class mean against the global-mean column
/// replicated across that class.
double fisher_value(const Eigen::MatrixXd& T, const std::vector<int>& partition);

/// Exact derivative of fisher_value, means recomputed from the given T:
/// 4 T + 2 global_mean - 4 class_means.
Eigen::MatrixXd fisher_gradient(const Eigen::MatrixXd& T, const std::vector<int>& partition);

}  // namespace fdlsr
