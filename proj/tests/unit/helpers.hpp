#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace testutil {

inline Eigen::MatrixXd uniform_matrix(int rows, int cols, std::uint64_t seed, double lo = -1.0,
                                      double hi = 1.0) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(lo, hi);
    Eigen::MatrixXd m(rows, cols);
    for (int j = 0; j < cols; ++j)
        for (int i = 0; i < rows; ++i) m(i, j) = u(rng);
    return m;
}

/// Every class in [0, classes) occupied at least once; remainder random.
inline std::vector<int> random_partition(int n, int classes, std::uint64_t seed) {
    if (n < classes) throw std::invalid_argument("need n >= classes");
    std::mt19937_64 rng(seed);
    std::vector<int> part(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j)
        part[static_cast<std::size_t>(j)] =
            j < classes ? j : static_cast<int>(rng() % static_cast<std::uint64_t>(classes));
    for (std::size_t i = part.size(); i > 1; --i)
        std::swap(part[i - 1], part[static_cast<std::size_t>(rng() % i)]);
    return part;
}

inline Eigen::MatrixXd one_hot(const std::vector<int>& partition, int classes) {
    Eigen::MatrixXd H =
        Eigen::MatrixXd::Zero(classes, static_cast<Eigen::Index>(partition.size()));
    for (std::size_t j = 0; j < partition.size(); ++j)
        H(partition[j], static_cast<Eigen::Index>(j)) = 1.0;
    return H;
}

/// Unique scratch directory, removed on destruction.
struct TempDir {
    std::filesystem::path path;

    TempDir() {
        std::string tmpl =
            (std::filesystem::temp_directory_path() / "fdlsr-test-XXXXXX").string();
        if (!mkdtemp(tmpl.data())) throw std::runtime_error("mkdtemp failed");
        path = tmpl;
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    std::string file(const std::string& name) const { return (path / name).string(); }
};

}  // namespace testutil
