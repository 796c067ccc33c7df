#pragma once

#include <Eigen/Core>

#include <vector>

namespace fdlsr {

struct ProjectedGallery {
    Eigen::MatrixXd features;  // one column per reference sample
    std::vector<int> labels;
};

/// Shape-checked product Q * X.
Eigen::MatrixXd project(const Eigen::MatrixXd& Q, const Eigen::MatrixXd& X);

/// Label of the Euclidean-nearest gallery column per probe; exact ties go to
/// the lowest gallery index.
std::vector<int> nn_predict(const ProjectedGallery& gallery, const Eigen::MatrixXd& probes);

/// Fraction of exact matches; lengths must agree and be nonzero.
double accuracy(const std::vector<int>& predicted, const std::vector<int>& truth);

}  // namespace fdlsr
