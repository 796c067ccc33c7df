#include "fdlsr/eval.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "fdlsr/classify.hpp"

namespace fdlsr {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

std::string to_string(Method method) {
    switch (method) {
        case Method::lsr: return "lsr";
        case Method::dlsr: return "dlsr";
        case Method::fdlsr: return "fdlsr";
    }
    throw std::invalid_argument("unknown method");
}

Method method_from_string(const std::string& name) {
    if (name == "lsr") return Method::lsr;
    if (name == "dlsr") return Method::dlsr;
    if (name == "fdlsr") return Method::fdlsr;
    throw std::invalid_argument("unknown method '" + name + "'");
}

FitResult fit_method(Method method, const Eigen::MatrixXd& X, const Eigen::MatrixXd& H,
                     const std::vector<int>& partition, const SolverConfig& cfg,
                     const Heldout* heldout) {
    switch (method) {
        case Method::lsr: {
            FitResult result;
            result.projection = fit_lsr(X, H, cfg.beta);
            result.targets.T = H;
            result.targets.S = Eigen::MatrixXd::Zero(H.rows(), H.cols());
            result.targets.B = build_direction_matrix(H);
            IterationRecord rec;
            rec.objective = (result.projection.Q * X - H).squaredNorm() +
                            cfg.beta * result.projection.Q.squaredNorm();
            rec.q_delta = 0.0;
            if (heldout) {
                ProjectedGallery gallery{project(result.projection.Q, X), partition};
                rec.heldout_accuracy = accuracy(
                    nn_predict(gallery, project(result.projection.Q, heldout->features)),
                    heldout->labels);
            }
            result.trace.iterations.push_back(rec);
            result.trace.converged = true;
            return result;
        }
        case Method::dlsr:
            return fit_dlsr(X, H, cfg.beta, cfg.max_iter, cfg.tol, heldout, cfg.report_iter);
        case Method::fdlsr: return fit_fdlsr(X, H, partition, cfg, heldout);
    }
    throw std::invalid_argument("unknown method");
}

TrialReport run_trials(const Dataset& ds, int k_per_class, int repeats, std::uint64_t seed,
                       Method method, const SolverConfig& cfg, NormScheme normalize) {
    if (repeats < 1) throw std::invalid_argument("repeats must be >= 1");
    cfg.validate();
    ds.validate();

    TrialReport report;
    report.method = method;
    report.k_per_class = k_per_class;
    report.repeats = repeats;
    report.seed = seed;
    report.config = cfg;
    report.normalize = normalize;

    for (int r = 0; r < repeats; ++r) {
        try {
            const Split split = split_per_class(ds, k_per_class, mix_seed(seed, static_cast<std::uint64_t>(r)));
            const Normalizer norm = Normalizer::fit(split.train.features, normalize);
            const Eigen::MatrixXd train = norm.apply(split.train.features);
            const Eigen::MatrixXd test = norm.apply(split.test.features);

            const auto train_start = Clock::now();
            const Eigen::MatrixXd H = build_label_matrix(split.train);
            const FitResult fit = fit_method(method, train, H, split.train.labels, cfg);
            report.train_time_s += seconds_since(train_start);

            const auto test_start = Clock::now();
            const ProjectedGallery gallery{project(fit.projection.Q, train), split.train.labels};
            const std::vector<int> predicted =
                nn_predict(gallery, project(fit.projection.Q, test));
            const double acc = accuracy(predicted, split.test.labels);
            report.test_time_s += seconds_since(test_start);

            report.accuracies.push_back(acc);
        } catch (const std::exception& e) {
            throw std::runtime_error("repeat " + std::to_string(r) + ": " + e.what());
        }
    }

    double sum = 0.0;
    for (double a : report.accuracies) sum += a;
    report.mean = sum / static_cast<double>(repeats);
    double sq = 0.0;
    for (double a : report.accuracies) sq += (a - report.mean) * (a - report.mean);
    report.stddev = std::sqrt(sq / static_cast<double>(repeats));
    return report;
}

std::vector<double> default_grid() { return {1e-5, 1e-4, 1e-3, 1e-2, 1e-1, 1.0}; }

GridResult grid_search(const Dataset& ds, int k_per_class, int repeats, std::uint64_t seed,
                       std::vector<double> alphas, std::vector<double> betas,
                       std::vector<double> lambdas, Method method, const SolverConfig& base,
                       NormScheme normalize, int jobs) {
    if (alphas.empty() || betas.empty() || lambdas.empty())
        throw std::invalid_argument("grid axes must be non-empty");
    if (jobs < 1) throw std::invalid_argument("jobs must be >= 1");
    std::sort(alphas.begin(), alphas.end());
    std::sort(betas.begin(), betas.end());
    std::sort(lambdas.begin(), lambdas.end());

    GridResult result;
    for (double a : alphas)
        for (double b : betas)
            for (double l : lambdas) result.cells.push_back(GridCell{a, b, l, {}});

    auto run_cell = [&](GridCell& cell) {
        SolverConfig cfg = base;
        cfg.alpha = cell.alpha;
        cfg.beta = cell.beta;
        cfg.lambda = cell.lambda;
        cell.report = run_trials(ds, k_per_class, repeats, seed, method, cfg, normalize);
    };

    const int workers = std::min<int>(jobs, static_cast<int>(result.cells.size()));
    if (workers <= 1) {
        for (GridCell& cell : result.cells) run_cell(cell);
    } else {
        std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (std::size_t i = static_cast<std::size_t>(w); i < result.cells.size();
                         i += static_cast<std::size_t>(workers))
                        run_cell(result.cells[i]);
                } catch (...) {
                    errors[static_cast<std::size_t>(w)] = std::current_exception();
                }
            });
        }
        for (std::thread& t : pool) t.join();
        for (const std::exception_ptr& err : errors)
            if (err) std::rethrow_exception(err);
    }

    result.best_index = 0;
    for (std::size_t i = 1; i < result.cells.size(); ++i)
        if (result.cells[i].report.mean > result.cells[result.best_index].report.mean)
            result.best_index = i;
    return result;
}

MarginStats margin_stats(const Eigen::MatrixXd& T, const std::vector<int>& partition) {
    if (static_cast<std::size_t>(T.cols()) != partition.size())
        throw std::invalid_argument("partition length and column count disagree");
    if (partition.empty()) throw std::invalid_argument("empty partition");

    MarginStats stats;
    bool inter_seen = false;
    double min_inter = 0.0;
    for (Eigen::Index i = 0; i < T.cols(); ++i) {
        for (Eigen::Index j = i + 1; j < T.cols(); ++j) {
            const double dist = (T.col(i) - T.col(j)).norm();
            if (partition[static_cast<std::size_t>(i)] == partition[static_cast<std::size_t>(j)]) {
                stats.max_intra = std::max(stats.max_intra, dist);
            } else if (!inter_seen || dist < min_inter) {
                inter_seen = true;
                min_inter = dist;
            }
        }
    }
    if (inter_seen) stats.min_inter = min_inter;
    return stats;
}

}  // namespace fdlsr
