#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <string>
#include <vector>

namespace fdlsr {

/// Labeled feature matrix with samples stored as columns.
struct Dataset {
    Eigen::MatrixXd features;              // d x n
    std::vector<int> labels;               // n entries in [0, c)
    std::vector<std::string> label_names;  // c names, first-appearance order

    int dim() const { return static_cast<int>(features.rows()); }
    int num_samples() const { return static_cast<int>(features.cols()); }
    int num_classes() const { return static_cast<int>(label_names.size()); }
    std::vector<int> class_counts() const;

    /// Throws std::invalid_argument when labels and features disagree. With
    /// require_nonempty_classes every class index must occur at least once
    /// (relaxed for evaluation-only splits that may exhaust a class).
    void validate(bool require_nonempty_classes = true) const;
};

struct CsvOptions {
    bool skip_header = false;
};

/// Rows are samples: first column the label (integer or string, mapped to
/// dense indices in first-appearance order), remaining columns features.
/// Ragged rows, empty files and non-numeric cells raise with the 1-based
/// line number.
Dataset load_csv(const std::string& path, const CsvOptions& options = {});
void save_csv(const Dataset& ds, const std::string& path);

/// Scales every nonzero column to unit Euclidean norm; zero columns stay zero.
Eigen::MatrixXd normalize_columns(Eigen::MatrixXd features);
Dataset normalize_columns(Dataset ds);

enum class NormScheme { none, unit_l2, zscore };

std::string to_string(NormScheme scheme);
NormScheme norm_scheme_from_string(const std::string& name);

/// Sample normalization fitted on training columns and replayed on probes.
/// unit_l2 and none are stateless; zscore keeps per-feature mean and scale.
struct Normalizer {
    NormScheme scheme = NormScheme::unit_l2;
    Eigen::VectorXd mean;
    Eigen::VectorXd scale;

    static Normalizer fit(const Eigen::MatrixXd& features, NormScheme scheme);
    Eigen::MatrixXd apply(Eigen::MatrixXd features) const;
};

/// One-hot c x n target matrix; column j has a single 1 in row labels[j].
Eigen::MatrixXd build_label_matrix(const Dataset& ds);

struct Split {
    Dataset train;
    Dataset test;
};

/// Draws exactly k columns per class into train (the remainder into test),
/// deterministically for a given seed. Column order within each part follows
/// the original dataset.
Split split_per_class(const Dataset& ds, int k_per_class, std::uint64_t seed);

/// Matrix with i.i.d. standard-normal entries, drawn column by column.
Eigen::MatrixXd gaussian_matrix(int rows, int cols, std::uint64_t seed);

Dataset apply_projection(const Dataset& ds, const Eigen::MatrixXd& projection);
Dataset random_projection(const Dataset& ds, int target_dim, std::uint64_t seed);

/// Gaussian clusters, one per class: column = class center + spread * noise.
/// Centers are themselves standard-normal draws, so `spread` controls overlap.
Dataset synth_blobs(int classes, int per_class, int dim, double spread,
                    std::uint64_t seed);

/// splitmix64-style mix of (seed, stream); stream r yields the split seed of
/// repeat r, so extending a run never disturbs earlier repeats.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace fdlsr
