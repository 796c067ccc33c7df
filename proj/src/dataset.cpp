#include "fdlsr/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace fdlsr {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

// Deterministic Fisher-Yates, independent of std::shuffle's unspecified order.
void shuffle_indices(std::vector<int>& idx, std::mt19937_64& rng) {
    for (std::size_t i = idx.size(); i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(rng() % i);
        std::swap(idx[i - 1], idx[j]);
    }
}

Dataset take_columns(const Dataset& ds, const std::vector<int>& cols) {
    Dataset out;
    out.features.resize(ds.features.rows(), static_cast<Eigen::Index>(cols.size()));
    out.labels.reserve(cols.size());
    for (std::size_t i = 0; i < cols.size(); ++i) {
        out.features.col(static_cast<Eigen::Index>(i)) = ds.features.col(cols[i]);
        out.labels.push_back(ds.labels[static_cast<std::size_t>(cols[i])]);
    }
    out.label_names = ds.label_names;
    return out;
}

}  // namespace

std::vector<int> Dataset::class_counts() const {
    std::vector<int> counts(label_names.size(), 0);
    for (int label : labels) {
        if (label < 0 || label >= static_cast<int>(counts.size()))
            fail("label index " + std::to_string(label) + " out of range");
        ++counts[static_cast<std::size_t>(label)];
    }
    return counts;
}

void Dataset::validate(bool require_nonempty_classes) const {
    if (static_cast<std::size_t>(features.cols()) != labels.size())
        fail("feature columns (" + std::to_string(features.cols()) + ") and labels (" +
             std::to_string(labels.size()) + ") disagree");
    const auto counts = class_counts();  // also range-checks labels
    if (require_nonempty_classes) {
        for (std::size_t i = 0; i < counts.size(); ++i) {
            if (counts[i] == 0) fail("class " + std::to_string(i) + " has no samples");
        }
    }
    if (!features.allFinite()) fail("dataset contains non-finite features");
}

Dataset load_csv(const std::string& path, const CsvOptions& options) {
    std::ifstream in(path);
    if (!in) fail("cannot open '" + path + "'");

    Dataset ds;
    std::unordered_map<std::string, int> name_to_index;
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t line_no = 0;
    std::size_t arity = 0;  // tokens per row, fixed by the first data row

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (options.skip_header && line_no == 1) continue;
        if (line.empty()) continue;

        std::vector<std::string> tokens;
        std::stringstream ss(line);
        std::string tok;
        while (std::getline(ss, tok, ',')) tokens.push_back(tok);
        if (!line.empty() && line.back() == ',') tokens.push_back("");

        if (arity == 0) {
            arity = tokens.size();
            if (arity < 2) fail("row " + std::to_string(line_no) + ": need a label and at least one feature");
        } else if (tokens.size() != arity) {
            fail("row " + std::to_string(line_no) + ": expected " + std::to_string(arity) +
                 " cells, got " + std::to_string(tokens.size()));
        }

        auto [it, inserted] =
            name_to_index.try_emplace(tokens[0], static_cast<int>(ds.label_names.size()));
        if (inserted) ds.label_names.push_back(tokens[0]);
        ds.labels.push_back(it->second);

        std::vector<double> values(arity - 1);
        for (std::size_t j = 1; j < arity; ++j) {
            const std::string& cell = tokens[j];
            double v = 0.0;
            const char* begin = cell.data();
            const char* end = begin + cell.size();
            auto res = std::from_chars(begin, end, v);
            if (res.ec != std::errc{} || res.ptr != end)
                fail("row " + std::to_string(line_no) + ": non-numeric feature cell '" + cell + "'");
            values[j - 1] = v;
        }
        rows.push_back(std::move(values));
    }

    if (rows.empty()) fail("'" + path + "' contains no data rows");

    const auto n = static_cast<Eigen::Index>(rows.size());
    const auto d = static_cast<Eigen::Index>(arity - 1);
    ds.features.resize(d, n);
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index i = 0; i < d; ++i)
            ds.features(i, j) = rows[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];

    ds.validate();
    return ds;
}

void save_csv(const Dataset& ds, const std::string& path) {
    ds.validate(false);
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    char buf[64];
    for (int j = 0; j < ds.num_samples(); ++j) {
        out << ds.label_names[static_cast<std::size_t>(ds.labels[static_cast<std::size_t>(j)])];
        for (int i = 0; i < ds.dim(); ++i) {
            std::snprintf(buf, sizeof(buf), "%.17g", ds.features(i, j));
            out << ',' << buf;
        }
        out << '\n';
    }
    if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

Eigen::MatrixXd normalize_columns(Eigen::MatrixXd features) {
    for (Eigen::Index j = 0; j < features.cols(); ++j) {
        const double norm = features.col(j).norm();
        if (norm > 0.0) features.col(j) /= norm;
    }
    return features;
}

Dataset normalize_columns(Dataset ds) {
    ds.features = normalize_columns(std::move(ds.features));
    return ds;
}

std::string to_string(NormScheme scheme) {
    switch (scheme) {
        case NormScheme::none: return "none";
        case NormScheme::unit_l2: return "unit_l2";
        case NormScheme::zscore: return "zscore";
    }
    fail("unknown normalization scheme");
}

NormScheme norm_scheme_from_string(const std::string& name) {
    if (name == "none") return NormScheme::none;
    if (name == "unit_l2" || name == "l2") return NormScheme::unit_l2;
    if (name == "zscore") return NormScheme::zscore;
    fail("unknown normalization scheme '" + name + "'");
}

Normalizer Normalizer::fit(const Eigen::MatrixXd& features, NormScheme scheme) {
    Normalizer norm;
    norm.scheme = scheme;
    if (scheme == NormScheme::zscore) {
        if (features.cols() == 0) fail("cannot fit zscore statistics on an empty matrix");
        norm.mean = features.rowwise().mean();
        Eigen::MatrixXd centered = features.colwise() - norm.mean;
        norm.scale = (centered.array().square().rowwise().sum() /
                      static_cast<double>(features.cols()))
                         .sqrt()
                         .matrix();
        for (Eigen::Index i = 0; i < norm.scale.size(); ++i) {
            if (norm.scale(i) == 0.0) norm.scale(i) = 1.0;  // constant feature stays put
        }
    }
    return norm;
}

Eigen::MatrixXd Normalizer::apply(Eigen::MatrixXd features) const {
    switch (scheme) {
        case NormScheme::none: return features;
        case NormScheme::unit_l2: return normalize_columns(std::move(features));
        case NormScheme::zscore:
            if (features.rows() != mean.size())
                fail("zscore statistics fitted on a different dimensionality");
            return ((features.colwise() - mean).array().colwise() / scale.array()).matrix();
    }
    fail("unknown normalization scheme");
}

Eigen::MatrixXd build_label_matrix(const Dataset& ds) {
    ds.validate();
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(ds.num_classes(), ds.num_samples());
    for (int j = 0; j < ds.num_samples(); ++j)
        H(ds.labels[static_cast<std::size_t>(j)], j) = 1.0;
    return H;
}

Split split_per_class(const Dataset& ds, int k_per_class, std::uint64_t seed) {
    ds.validate();
    if (k_per_class < 1) fail("k_per_class must be >= 1");
    const auto counts = ds.class_counts();
    for (std::size_t i = 0; i < counts.size(); ++i) {
        if (counts[i] < k_per_class)
            fail("class " + std::to_string(i) + " has " + std::to_string(counts[i]) +
                 " samples, fewer than k_per_class = " + std::to_string(k_per_class));
    }

    std::vector<std::vector<int>> by_class(counts.size());
    for (int j = 0; j < ds.num_samples(); ++j)
        by_class[static_cast<std::size_t>(ds.labels[static_cast<std::size_t>(j)])].push_back(j);

    std::mt19937_64 rng(seed);
    std::vector<int> train_cols, test_cols;
    for (auto& members : by_class) {
        shuffle_indices(members, rng);
        for (std::size_t i = 0; i < members.size(); ++i) {
            (i < static_cast<std::size_t>(k_per_class) ? train_cols : test_cols)
                .push_back(members[i]);
        }
    }
    std::sort(train_cols.begin(), train_cols.end());
    std::sort(test_cols.begin(), test_cols.end());

    Split split{take_columns(ds, train_cols), take_columns(ds, test_cols)};
    split.train.validate();
    split.test.validate(false);
    return split;
}

Eigen::MatrixXd gaussian_matrix(int rows, int cols, std::uint64_t seed) {
    if (rows < 1 || cols < 1) fail("gaussian_matrix needs positive dimensions");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXd R(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
        for (Eigen::Index i = 0; i < rows; ++i) R(i, j) = gauss(rng);
    return R;
}

Dataset apply_projection(const Dataset& ds, const Eigen::MatrixXd& projection) {
    if (projection.cols() != ds.features.rows())
        fail("projection expects " + std::to_string(projection.cols()) +
             "-dimensional samples, dataset has " + std::to_string(ds.features.rows()));
    Dataset out = ds;
    out.features = projection * ds.features;
    return out;
}

Dataset random_projection(const Dataset& ds, int target_dim, std::uint64_t seed) {
    if (target_dim < 1) fail("target_dim must be >= 1");
    return apply_projection(ds, gaussian_matrix(target_dim, ds.dim(), seed));
}

Dataset synth_blobs(int classes, int per_class, int dim, double spread, std::uint64_t seed) {
    if (classes < 1 || per_class < 1 || dim < 1) fail("synth_blobs needs positive sizes");
    if (!(spread > 0.0)) fail("spread must be > 0");

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);

    Eigen::MatrixXd centers(dim, classes);
    for (Eigen::Index j = 0; j < classes; ++j)
        for (Eigen::Index i = 0; i < dim; ++i) centers(i, j) = gauss(rng);

    Dataset ds;
    ds.features.resize(dim, static_cast<Eigen::Index>(classes) * per_class);
    ds.labels.reserve(static_cast<std::size_t>(classes) * static_cast<std::size_t>(per_class));
    for (int c = 0; c < classes; ++c) {
        ds.label_names.push_back(std::to_string(c));
        for (int s = 0; s < per_class; ++s) {
            const Eigen::Index col = static_cast<Eigen::Index>(c) * per_class + s;
            for (Eigen::Index i = 0; i < dim; ++i)
                ds.features(i, col) = centers(i, c) + spread * gauss(rng);
            ds.labels.push_back(c);
        }
    }
    return ds;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace fdlsr
