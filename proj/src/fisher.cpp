#include "fdlsr/fisher.hpp"

#include <stdexcept>
#include <string>

namespace fdlsr {

namespace {

int checked_num_classes(Eigen::Index cols, const std::vector<int>& partition) {
    if (static_cast<std::size_t>(cols) != partition.size())
        throw std::invalid_argument("partition length (" + std::to_string(partition.size()) +
                                    ") and column count (" + std::to_string(cols) + ") disagree");
    if (partition.empty()) throw std::invalid_argument("partition is empty");
    int num_classes = 0;
    for (int c : partition) {
        if (c < 0) throw std::invalid_argument("negative class index");
        num_classes = std::max(num_classes, c + 1);
    }
    return num_classes;
}

}  // namespace

MeanMatrices mean_matrices(const Eigen::MatrixXd& T, const std::vector<int>& partition) {
    const int num_classes = checked_num_classes(T.cols(), partition);

    Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(T.rows(), num_classes);
    std::vector<int> counts(static_cast<std::size_t>(num_classes), 0);
    for (Eigen::Index j = 0; j < T.cols(); ++j) {
        sums.col(partition[static_cast<std::size_t>(j)]) += T.col(j);
        ++counts[static_cast<std::size_t>(partition[static_cast<std::size_t>(j)])];
    }
    for (int c = 0; c < num_classes; ++c) {
        if (counts[static_cast<std::size_t>(c)] == 0)
            throw std::invalid_argument("class " + std::to_string(c) + " has no columns");
        sums.col(c) /= static_cast<double>(counts[static_cast<std::size_t>(c)]);
    }

    MeanMatrices means;
    means.class_means.resize(T.rows(), T.cols());
    for (Eigen::Index j = 0; j < T.cols(); ++j)
        means.class_means.col(j) = sums.col(partition[static_cast<std::size_t>(j)]);
    means.global_mean = T.rowwise().mean().replicate(1, T.cols());
    return means;
}

double fisher_value(const Eigen::MatrixXd& T, const std::vector<int>& partition) {
    const MeanMatrices means = mean_matrices(T, partition);
    const double within = (T - means.class_means).squaredNorm();
    const double between = (means.class_means - means.global_mean).squaredNorm();
    return within - between + T.squaredNorm();
}

Eigen::MatrixXd fisher_gradient(const Eigen::MatrixXd& T, const std::vector<int>& partition) {
    const MeanMatrices means = mean_matrices(T, partition);
    return 4.0 * T + 2.0 * means.global_mean - 4.0 * means.class_means;
}

}  // namespace fdlsr
