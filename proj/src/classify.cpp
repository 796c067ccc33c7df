#include "fdlsr/classify.hpp"

#include <limits>
#include <stdexcept>
#include <string>

namespace fdlsr {

Eigen::MatrixXd project(const Eigen::MatrixXd& Q, const Eigen::MatrixXd& X) {
    if (Q.cols() != X.rows())
        throw std::invalid_argument("projection expects " + std::to_string(Q.cols()) +
                                    "-dimensional samples, got " + std::to_string(X.rows()));
    return Q * X;
}

std::vector<int> nn_predict(const ProjectedGallery& gallery, const Eigen::MatrixXd& probes) {
    if (gallery.features.cols() == 0) throw std::invalid_argument("empty gallery");
    if (static_cast<std::size_t>(gallery.features.cols()) != gallery.labels.size())
        throw std::invalid_argument("gallery features and labels disagree");
    if (probes.rows() != gallery.features.rows())
        throw std::invalid_argument("probe dimensionality " + std::to_string(probes.rows()) +
                                    " does not match gallery " +
                                    std::to_string(gallery.features.rows()));

    std::vector<int> predicted(static_cast<std::size_t>(probes.cols()));
    for (Eigen::Index p = 0; p < probes.cols(); ++p) {
        double best = std::numeric_limits<double>::infinity();
        Eigen::Index best_idx = 0;
        for (Eigen::Index g = 0; g < gallery.features.cols(); ++g) {
            const double dist = (gallery.features.col(g) - probes.col(p)).squaredNorm();
            if (dist < best) {  // strict keeps the lowest index on ties
                best = dist;
                best_idx = g;
            }
        }
        predicted[static_cast<std::size_t>(p)] = gallery.labels[static_cast<std::size_t>(best_idx)];
    }
    return predicted;
}

double accuracy(const std::vector<int>& predicted, const std::vector<int>& truth) {
    if (predicted.size() != truth.size())
        throw std::invalid_argument("prediction and truth lengths disagree");
    if (predicted.empty()) throw std::invalid_argument("empty prediction list");
    std::size_t hits = 0;
    for (std::size_t i = 0; i < predicted.size(); ++i)
        if (predicted[i] == truth[i]) ++hits;
    return static_cast<double>(hits) / static_cast<double>(predicted.size());
}

}  // namespace fdlsr
