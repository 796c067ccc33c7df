#include "fdlsr/solvers.hpp"

#include <cmath>
#include <limits>
#include <random>

#include "doctest.h"
#include "fdlsr/classify.hpp"
#include "fdlsr/dataset.hpp"
#include "fdlsr/eval.hpp"
#include "fdlsr/fisher.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace fdlsr;

namespace {

struct Instance {
    Eigen::MatrixXd X;
    Eigen::MatrixXd H;
    std::vector<int> partition;
};

Instance random_instance(int c, int n, int d, std::uint64_t seed) {
    Instance inst;
    inst.X = testutil::uniform_matrix(d, n, seed);
    inst.partition = testutil::random_partition(n, c, seed + 1);
    inst.H = testutil::one_hot(inst.partition, c);
    return inst;
}

// Class-indicator features plus small noise: the dragging step has nothing to
// gain, so DLSR stays at the ridge fit and the large-alpha Fisher-free solver
// must land on the same point.
Instance near_fixed_point_instance(std::uint64_t seed) {
    Instance inst;
    inst.partition = {0, 0, 1, 1, 2, 2};
    inst.H = testutil::one_hot(inst.partition, 3);
    inst.X = inst.H + 1e-3 * testutil::uniform_matrix(3, 6, seed);
    return inst;
}

}  // namespace

TEST_CASE("solver config validation") {
    SolverConfig cfg;
    CHECK(cfg.alpha == 1.0);
    CHECK(cfg.beta == 1e-2);
    CHECK(cfg.lambda == 1.0);
    CHECK(cfg.max_iter == 30);
    CHECK(cfg.tol == 1e-4);
    CHECK_NOTHROW(cfg.validate());

    cfg.lambda = 0.0;  // explicitly allowed: plain dragging limit
    CHECK_NOTHROW(cfg.validate());

    SUBCASE("rejects out-of-range fields") {
        SolverConfig bad;
        bad.alpha = 0.0;
        CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
        bad = SolverConfig{};
        bad.beta = -1.0;
        CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
        bad = SolverConfig{};
        bad.lambda = -0.1;
        CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
        bad = SolverConfig{};
        bad.max_iter = 0;
        CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
        bad = SolverConfig{};
        bad.tol = 0.0;
        CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
        bad = SolverConfig{};
        bad.report_iter = 0;
        CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    }
}

TEST_CASE("ridge_kernel closed form") {
    SUBCASE("identity features") {
        const Eigen::MatrixXd X = Eigen::MatrixXd::Identity(4, 4);
        const Eigen::MatrixXd K = ridge_kernel(X, 1.0);
        CHECK((K - 0.5 * Eigen::MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-14);
    }
    SUBCASE("zero features") {
        const Eigen::MatrixXd K = ridge_kernel(Eigen::MatrixXd::Zero(3, 5), 0.5);
        CHECK(K.rows() == 5);
        CHECK(K.cols() == 3);
        CHECK(K.cwiseAbs().maxCoeff() == 0.0);
    }
    SUBCASE("matches an independent dense solve") {
        const Eigen::MatrixXd X = testutil::uniform_matrix(5, 8, 77);
        const Eigen::MatrixXd K = ridge_kernel(X, 0.01);
        Eigen::MatrixXd gram = X * X.transpose();
        gram.diagonal().array() += 0.01;
        const Eigen::MatrixXd expected = oracles::solve_gauss(gram, X).transpose();
        CHECK((K - expected).cwiseAbs().maxCoeff() < 1e-9);
    }
    SUBCASE("wide and tall inputs both solve in feature space") {
        for (auto [d, n] : {std::pair{3, 12}, std::pair{12, 3}}) {
            const Eigen::MatrixXd X = testutil::uniform_matrix(d, n, 50 + d);
            const Eigen::MatrixXd K = ridge_kernel(X, 1e-3);
            Eigen::MatrixXd gram = X * X.transpose();
            gram.diagonal().array() += 1e-3;
            CHECK((gram * K.transpose() - X).norm() <= 1e-8 * (1.0 + X.norm()));
        }
    }
    SUBCASE("invalid beta rejected") {
        CHECK_THROWS_AS(ridge_kernel(Eigen::MatrixXd::Identity(2, 2), 0.0),
                        std::invalid_argument);
    }
}

TEST_CASE("build_direction_matrix flips zeros to minus one") {
    Eigen::MatrixXd H(3, 4);
    H << 1, 0, 0, 0,  //
        0, 0, 1, 0,   //
        0, 1, 0, 1;
    const Eigen::MatrixXd B = build_direction_matrix(H);
    CHECK(B(0, 0) == 1.0);
    CHECK(B(2, 1) == 1.0);
    CHECK(B(1, 2) == 1.0);
    CHECK(B(2, 3) == 1.0);
    CHECK(((B.array() == 1.0) || (B.array() == -1.0)).all());
    CHECK((B.cwiseProduct(B).array() == 1.0).all());
    CHECK((B - (2.0 * H - Eigen::MatrixXd::Ones(3, 4))).cwiseAbs().maxCoeff() == 0.0);

    SUBCASE("single entry") {
        Eigen::MatrixXd one(1, 1);
        one << 1.0;
        CHECK(build_direction_matrix(one)(0, 0) == 1.0);
    }
    SUBCASE("non-one-hot input rejected") {
        Eigen::MatrixXd bad = H;
        bad(0, 1) = 1.0;  // two ones in column 1
        CHECK_THROWS_AS(build_direction_matrix(bad), std::invalid_argument);
        bad = H;
        bad(2, 1) = 0.5;
        CHECK_THROWS_AS(build_direction_matrix(bad), std::invalid_argument);
        bad = H;
        bad(2, 1) = 0.0;  // empty column
        CHECK_THROWS_AS(build_direction_matrix(bad), std::invalid_argument);
    }
}

TEST_CASE("update_t closed form") {
    const Instance inst = random_instance(3, 8, 5, 31);
    const Eigen::MatrixXd Q = testutil::uniform_matrix(3, 5, 32);
    const Eigen::MatrixXd S =
        testutil::uniform_matrix(3, 8, 33, 0.0, 1.0);
    const Eigen::MatrixXd B = build_direction_matrix(inst.H);
    const MeanMatrices means = mean_matrices(inst.H, inst.partition);

    SUBCASE("lambda zero, alpha one halves the two driving terms") {
        const Eigen::MatrixXd T = update_t(Q, inst.X, inst.H, B, S, means.global_mean,
                                           means.class_means, 1.0, 0.0);
        const Eigen::MatrixXd expected =
            (Q * inst.X + inst.H + B.cwiseProduct(S)) / 2.0;
        CHECK((T - expected).cwiseAbs().maxCoeff() < 1e-14);
    }
    SUBCASE("huge alpha pins T to the relaxed labels") {
        const Eigen::MatrixXd zero = Eigen::MatrixXd::Zero(3, 8);
        const Eigen::MatrixXd T = update_t(Q, inst.X, inst.H, B, zero, means.global_mean,
                                           means.class_means, 1e8, 0.0);
        CHECK((T - inst.H).cwiseAbs().maxCoeff() < 1e-6);
    }
    SUBCASE("satisfies the lagged-mean stationarity condition") {
        const double alpha = 0.7, lambda = 1.3;
        const Eigen::MatrixXd T = update_t(Q, inst.X, inst.H, B, S, means.global_mean,
                                           means.class_means, alpha, lambda);
        // derivative with the means frozen:
        //   2(T - QX) + 2 alpha (T - H - B.*S) + lambda (4T + 2M - 4Mhat)
        const Eigen::MatrixXd residual =
            2.0 * (T - Q * inst.X) + 2.0 * alpha * (T - inst.H - B.cwiseProduct(S)) +
            lambda * (4.0 * T + 2.0 * means.global_mean - 4.0 * means.class_means);
        CHECK(residual.cwiseAbs().maxCoeff() <= 1e-10);
    }
}

TEST_CASE("update_q closed form and optimality") {
    SUBCASE("zero targets give zero projection") {
        const Eigen::MatrixXd X = testutil::uniform_matrix(4, 6, 41);
        const Eigen::MatrixXd K = ridge_kernel(X, 0.1);
        const Projection Q = update_q(Eigen::MatrixXd::Zero(2, 6), K);
        CHECK(Q.Q.cwiseAbs().maxCoeff() == 0.0);
    }
    SUBCASE("identity features halve the targets") {
        const Eigen::MatrixXd X = Eigen::MatrixXd::Identity(5, 5);
        const Eigen::MatrixXd T = testutil::uniform_matrix(3, 5, 42);
        const Projection Q = update_q(T, ridge_kernel(X, 1.0));
        CHECK((Q.Q - T / 2.0).cwiseAbs().maxCoeff() < 1e-12);
    }
    SUBCASE("stationarity residual within solver tolerance") {
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            const Eigen::MatrixXd X = testutil::uniform_matrix(5, 9, 400 + seed);
            const Eigen::MatrixXd T = testutil::uniform_matrix(3, 9, 500 + seed);
            const double beta = 0.01;
            const Projection Q = update_q(T, ridge_kernel(X, beta));
            const double residual =
                (Q.Q * X * X.transpose() - T * X.transpose() + beta * Q.Q).norm();
            CHECK(residual <= 1e-8 * (1.0 + T.norm() * X.norm()));
        }
    }
    SUBCASE("beats random perturbations") {
        const Eigen::MatrixXd X = testutil::uniform_matrix(4, 7, 43);
        const Eigen::MatrixXd T = testutil::uniform_matrix(2, 7, 44);
        const double beta = 0.05;
        const Projection Q = update_q(T, ridge_kernel(X, beta));
        const auto ridge_objective = [&](const Eigen::MatrixXd& M) {
            return (M * X - T).squaredNorm() + beta * M.squaredNorm();
        };
        const double at_solution = ridge_objective(Q.Q);
        std::mt19937_64 rng(45);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        for (int trial = 0; trial < 1000; ++trial) {
            Eigen::MatrixXd delta(2, 4);
            for (int j = 0; j < 4; ++j)
                for (int i = 0; i < 2; ++i) delta(i, j) = u(rng);
            const double scale = trial % 2 == 0 ? 1e-3 : 1e-1;
            CHECK(at_solution <= ridge_objective(Q.Q + scale * delta) + 1e-12);
        }
    }
}

TEST_CASE("update_s clamps the dragging magnitudes") {
    SUBCASE("hand values") {
        Eigen::MatrixXd T(1, 2), H(1, 2), B(1, 2);
        T << 1.5, 1.5;
        H << 1.0, 1.0;
        B << 1.0, -1.0;
        const Eigen::MatrixXd S = update_s(T, H, B);
        CHECK(S(0, 0) == 0.5);  // pulled further along +1
        CHECK(S(0, 1) == 0.0);  // wrong direction clamps to zero
    }
    SUBCASE("exact targets give zero slack") {
        const Instance inst = random_instance(3, 6, 4, 51);
        const Eigen::MatrixXd B = build_direction_matrix(inst.H);
        CHECK(update_s(inst.H, inst.H, B).cwiseAbs().maxCoeff() == 0.0);
    }
    SUBCASE("every entry matches the brute-force grid minimizer") {
        std::mt19937_64 rng(52);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        for (int trial = 0; trial < 2000; ++trial) {
            Eigen::MatrixXd T(1, 1), H(1, 1), B(1, 1);
            T(0, 0) = u(rng);
            H(0, 0) = rng() % 2 ? 1.0 : 0.0;
            B(0, 0) = 2.0 * H(0, 0) - 1.0;
            const double s = update_s(T, H, B)(0, 0);
            const double brute =
                oracles::brute_s_entry(T(0, 0), H(0, 0), B(0, 0), 2.0, 1e-3);
            CHECK(std::abs(s - brute) <= 1e-3 + 1e-12);
            CHECK(s >= 0.0);
        }
    }
}

TEST_CASE("objective composes the four terms") {
    const Instance inst = random_instance(3, 7, 4, 61);
    const Eigen::MatrixXd B = build_direction_matrix(inst.H);
    SolverConfig cfg;
    cfg.alpha = 0.8;
    cfg.beta = 0.02;
    cfg.lambda = 1.4;

    SUBCASE("zero projection with exact targets leaves n plus the Fisher term") {
        const Eigen::MatrixXd Q = Eigen::MatrixXd::Zero(3, 4);
        const Eigen::MatrixXd S = Eigen::MatrixXd::Zero(3, 7);
        const double value = objective(Q, inst.X, inst.H, inst.H, B, S, cfg);
        const double expected = 7.0 + cfg.lambda * fisher_value(inst.H, inst.partition);
        CHECK(value == doctest::Approx(expected).epsilon(1e-12));
    }
    SUBCASE("agrees with the scalar-loop oracle") {
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            const Instance rnd = random_instance(4, 9, 5, 600 + seed);
            const Eigen::MatrixXd Q = testutil::uniform_matrix(4, 5, 700 + seed);
            const Eigen::MatrixXd T = testutil::uniform_matrix(4, 9, 800 + seed);
            const Eigen::MatrixXd S = testutil::uniform_matrix(4, 9, 900 + seed, 0.0, 1.0);
            const Eigen::MatrixXd D = build_direction_matrix(rnd.H);
            const double got = objective(Q, rnd.X, T, rnd.H, D, S, cfg);
            const double want = oracles::scalar_objective(Q, rnd.X, T, rnd.H, D, S, cfg.alpha,
                                                          cfg.beta, cfg.lambda);
            CHECK(got == doctest::Approx(want).epsilon(1e-10));
        }
    }
}

TEST_CASE("fdlsr_init follows the published starting point") {
    const Instance inst = random_instance(3, 8, 5, 71);
    const double beta = 0.01;
    const FdlsrState state = fdlsr_init(inst.X, inst.H, beta);

    Eigen::MatrixXd gram = inst.X * inst.X.transpose();
    gram.diagonal().array() += beta;
    const Eigen::MatrixXd K_oracle = oracles::solve_gauss(gram, inst.X).transpose();
    const Eigen::MatrixXd Q_oracle = oracles::matmul_loops(inst.H, K_oracle);

    CHECK((state.projection.Q - Q_oracle).cwiseAbs().maxCoeff() < 1e-9);
    CHECK((state.targets.T - inst.H).cwiseAbs().maxCoeff() == 0.0);
    CHECK(state.targets.S.cwiseAbs().maxCoeff() == 0.0);
    CHECK((state.targets.B - (2.0 * inst.H - Eigen::MatrixXd::Ones(3, 8)))
              .cwiseAbs()
              .maxCoeff() == 0.0);
}

TEST_CASE("fit_fdlsr stopping behavior") {
    const Instance inst = random_instance(3, 9, 6, 81);

    SUBCASE("huge tolerance stops after one sweep") {
        SolverConfig cfg;
        cfg.tol = 1e9;
        const FitResult result = fit_fdlsr(inst.X, inst.H, inst.partition, cfg);
        CHECK(result.trace.iterations_run() == 1);
        CHECK(result.trace.converged);
    }
    SUBCASE("report_iter forces a fixed budget") {
        SolverConfig cfg;
        cfg.tol = 1e9;  // would stop immediately without the budget override
        cfg.report_iter = 7;
        const FitResult result = fit_fdlsr(inst.X, inst.H, inst.partition, cfg);
        CHECK(result.trace.iterations_run() == 7);
    }
    SUBCASE("max_iter caps the sweep count") {
        SolverConfig cfg;
        cfg.tol = 1e-300;
        cfg.max_iter = 4;
        const FitResult result = fit_fdlsr(inst.X, inst.H, inst.partition, cfg);
        CHECK(result.trace.iterations_run() == 4);
        CHECK_FALSE(result.trace.converged);
    }
    SUBCASE("mismatched partition rejected") {
        std::vector<int> wrong = inst.partition;
        wrong[0] = (wrong[0] + 1) % 3;
        SolverConfig cfg;
        CHECK_THROWS_AS(fit_fdlsr(inst.X, inst.H, wrong, cfg), std::invalid_argument);
    }
}

TEST_CASE("fit_fdlsr converges on separable blobs") {
    const Dataset blobs = normalize_columns(synth_blobs(5, 10, 20, 0.5, 7));
    const Eigen::MatrixXd H = build_label_matrix(blobs);
    SolverConfig cfg;
    cfg.max_iter = 50;

    const FitResult result = fit_fdlsr(blobs.features, H, blobs.labels, cfg);
    CHECK(result.trace.converged);
    CHECK(result.trace.iterations.back().objective <=
          result.trace.iterations.front().objective);
    CHECK(result.projection.Q.rows() == 5);
    CHECK(result.projection.Q.cols() == 20);
}

TEST_CASE("fisher weight widens the learned margins") {
    int lambda_wins = 0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Dataset blobs = normalize_columns(synth_blobs(4, 8, 10, 1.2, 300 + seed));
        const Eigen::MatrixXd H = build_label_matrix(blobs);
        SolverConfig with;
        with.lambda = 0.1;
        SolverConfig without;
        without.lambda = 0.0;
        const FitResult a = fit_fdlsr(blobs.features, H, blobs.labels, with);
        const FitResult b = fit_fdlsr(blobs.features, H, blobs.labels, without);
        const MarginStats ma = margin_stats(a.targets.T, blobs.labels);
        const MarginStats mb = margin_stats(b.targets.T, blobs.labels);
        REQUIRE(ma.min_inter.has_value());
        REQUIRE(mb.min_inter.has_value());
        if (*ma.min_inter > *mb.min_inter) ++lambda_wins;
    }
    CHECK(lambda_wins > 5);  // majority across seeds
}

TEST_CASE("fit_fdlsr invariants") {
    const Instance inst = random_instance(4, 12, 6, 91);
    SolverConfig cfg;
    cfg.max_iter = 20;

    SUBCASE("slack stays nonnegative at every sweep") {
        for (int budget = 1; budget <= 5; ++budget) {
            SolverConfig fixed = cfg;
            fixed.report_iter = budget;
            const FitResult result = fit_fdlsr(inst.X, inst.H, inst.partition, fixed);
            CHECK(result.targets.S.minCoeff() >= 0.0);
        }
    }
    SUBCASE("relaxed labels keep inter-class margins") {
        const FitResult result = fit_fdlsr(inst.X, inst.H, inst.partition, cfg);
        const Eigen::MatrixXd relaxed =
            inst.H + result.targets.B.cwiseProduct(result.targets.S);
        const MarginStats stats = margin_stats(relaxed, inst.partition);
        REQUIRE(stats.min_inter.has_value());
        CHECK(*stats.min_inter >= std::sqrt(2.0) - 1e-9);
    }
    SUBCASE("identical runs are bitwise identical") {
        const FitResult a = fit_fdlsr(inst.X, inst.H, inst.partition, cfg);
        const FitResult b = fit_fdlsr(inst.X, inst.H, inst.partition, cfg);
        REQUIRE(a.trace.iterations_run() == b.trace.iterations_run());
        for (int i = 0; i < a.trace.iterations_run(); ++i) {
            CHECK(a.trace.iterations[static_cast<std::size_t>(i)].objective ==
                  b.trace.iterations[static_cast<std::size_t>(i)].objective);
            CHECK(a.trace.iterations[static_cast<std::size_t>(i)].q_delta ==
                  b.trace.iterations[static_cast<std::size_t>(i)].q_delta);
        }
        CHECK((a.projection.Q.array() == b.projection.Q.array()).all());
    }
    SUBCASE("q_delta entries are nonnegative") {
        const FitResult result = fit_fdlsr(inst.X, inst.H, inst.partition, cfg);
        for (const IterationRecord& rec : result.trace.iterations) CHECK(rec.q_delta >= 0.0);
    }
    SUBCASE("non-finite configurations are reported with the sweep index") {
        SolverConfig poison = cfg;
        poison.alpha = std::numeric_limits<double>::infinity();
        CHECK_THROWS_WITH_AS(fit_fdlsr(inst.X, inst.H, inst.partition, poison),
                             doctest::Contains("iteration 1"), std::runtime_error);
    }
}

TEST_CASE("fit_fdlsr tracks held-out accuracy when asked") {
    const Dataset blobs = normalize_columns(synth_blobs(3, 10, 8, 0.4, 57));
    const Split split = split_per_class(blobs, 6, 3);
    const Eigen::MatrixXd H = build_label_matrix(split.train);
    const Heldout heldout{split.test.features, split.test.labels};
    SolverConfig cfg;
    cfg.report_iter = 5;

    const FitResult result =
        fit_fdlsr(split.train.features, H, split.train.labels, cfg, &heldout);
    REQUIRE(result.trace.iterations_run() == 5);
    for (const IterationRecord& rec : result.trace.iterations) {
        REQUIRE(rec.heldout_accuracy.has_value());
        CHECK(*rec.heldout_accuracy >= 0.0);
        CHECK(*rec.heldout_accuracy <= 1.0);
    }
}

TEST_CASE("fit_lsr closed form") {
    SUBCASE("identity features halve the labels") {
        const std::vector<int> partition{0, 1, 2, 0};
        const Eigen::MatrixXd H = testutil::one_hot(partition, 3);
        Eigen::MatrixXd X = Eigen::MatrixXd::Identity(4, 4);
        const Projection Q = fit_lsr(X, H, 1.0);
        CHECK((Q.Q - H / 2.0).cwiseAbs().maxCoeff() < 1e-12);
    }
    SUBCASE("satisfies ridge stationarity with one-hot targets") {
        const Instance inst = random_instance(3, 10, 5, 101);
        const double beta = 0.01;
        const Projection Q = fit_lsr(inst.X, inst.H, beta);
        const double residual =
            (Q.Q * inst.X * inst.X.transpose() - inst.H * inst.X.transpose() + beta * Q.Q)
                .norm();
        CHECK(residual <= 1e-8 * (1.0 + inst.H.norm() * inst.X.norm()));
    }
    SUBCASE("improves on the zero projection") {
        const Instance inst = random_instance(4, 11, 6, 102);
        const double beta = 0.01;
        const Projection Q = fit_lsr(inst.X, inst.H, beta);
        const double at_fit =
            (Q.Q * inst.X - inst.H).squaredNorm() + beta * Q.Q.squaredNorm();
        CHECK(at_fit <= static_cast<double>(inst.X.cols()));  // value at Q = 0 is n
    }
}

TEST_CASE("fit_dlsr alternation") {
    const Instance inst = random_instance(3, 9, 5, 111);
    const double beta = 0.01;

    SUBCASE("first sweep starts from the ridge fit") {
        const Projection lsr = fit_lsr(inst.X, inst.H, beta);
        const Eigen::MatrixXd B = build_direction_matrix(inst.H);
        const Eigen::MatrixXd expected_s = update_s(lsr.Q * inst.X, inst.H, B);

        const FitResult result =
            fit_dlsr(inst.X, inst.H, beta, 30, 1e-4, nullptr, 1);
        CHECK((result.targets.S - expected_s).cwiseAbs().maxCoeff() < 1e-12);
    }
    SUBCASE("objective sequence is non-increasing across random instances") {
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            const Instance rnd = random_instance(3, 8 + static_cast<int>(seed % 5), 4,
                                                 1000 + seed);
            const FitResult result = fit_dlsr(rnd.X, rnd.H, 0.05, 25, 1e-12);
            for (std::size_t i = 1; i < result.trace.iterations.size(); ++i)
                CHECK(result.trace.iterations[i].objective <=
                      result.trace.iterations[i - 1].objective + 1e-12);
        }
    }
    SUBCASE("separable blobs reach perfect training accuracy") {
        const Dataset blobs = normalize_columns(synth_blobs(4, 6, 10, 1e-4, 23));
        const Eigen::MatrixXd H = build_label_matrix(blobs);
        const FitResult result = fit_dlsr(blobs.features, H, 0.01, 30, 1e-4);
        const ProjectedGallery gallery{project(result.projection.Q, blobs.features),
                                       blobs.labels};
        const std::vector<int> predicted =
            nn_predict(gallery, project(result.projection.Q, blobs.features));
        CHECK(accuracy(predicted, blobs.labels) == 1.0);
    }
    SUBCASE("parameter validation") {
        CHECK_THROWS_AS(fit_dlsr(inst.X, inst.H, 0.0, 10, 1e-4), std::invalid_argument);
        CHECK_THROWS_AS(fit_dlsr(inst.X, inst.H, 0.1, 0, 1e-4), std::invalid_argument);
        CHECK_THROWS_AS(fit_dlsr(inst.X, inst.H, 0.1, 10, 0.0), std::invalid_argument);
    }
}

TEST_CASE("large-alpha Fisher-free runs land on the dragging fixed point") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const Instance inst = near_fixed_point_instance(2000 + seed);
        const double beta = 0.01;

        SolverConfig cfg;
        cfg.lambda = 0.0;
        cfg.alpha = 1e6;
        cfg.max_iter = 100;
        const FitResult fdlsr = fit_fdlsr(inst.X, inst.H, inst.partition, cfg);
        const FitResult dlsr = fit_dlsr(inst.X, inst.H, beta, 100, 1e-4);

        CHECK((fdlsr.projection.Q - dlsr.projection.Q).norm() <= 1e-3);
    }
}
