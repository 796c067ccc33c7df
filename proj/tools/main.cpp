#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "fdlsr/classify.hpp"
#include "fdlsr/dataset.hpp"
#include "fdlsr/eval.hpp"
#include "fdlsr/model_io.hpp"
#include "fdlsr/solvers.hpp"

namespace {

using nlohmann::json;

#ifndef FDLSR_VERSION
#define FDLSR_VERSION "0.0.0"
#endif

std::string utc_now() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct SolverFlags {
    double alpha = 1.0;
    double beta = 1e-2;
    double lambda = 1.0;
    int max_iter = 30;
    double tol = 1e-4;
    int report_iter = 0;
    CLI::Option* report_opt = nullptr;

    void attach(CLI::App* cmd) {
        cmd->add_option("--alpha", alpha, "Dragging weight")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        cmd->add_option("--beta", beta, "Ridge weight")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        cmd->add_option("--lambda", lambda, "Fisher weight (0 disables the Fisher term)")
            ->check(CLI::NonNegativeNumber)
            ->capture_default_str();
        cmd->add_option("--max-iter", max_iter, "Sweep limit")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        cmd->add_option("--tol", tol, "Stop once the squared projection change falls below")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        report_opt = cmd->add_option("--report-iter", report_iter,
                                     "Run exactly this many sweeps (disables --tol early stop)")
                         ->check(CLI::PositiveNumber);
    }

    fdlsr::SolverConfig config() const {
        fdlsr::SolverConfig cfg;
        cfg.alpha = alpha;
        cfg.beta = beta;
        cfg.lambda = lambda;
        cfg.max_iter = max_iter;
        cfg.tol = tol;
        if (report_opt && report_opt->count()) cfg.report_iter = report_iter;
        return cfg;
    }
};

json config_json(const fdlsr::SolverConfig& cfg) {
    json j{{"alpha", cfg.alpha},
           {"beta", cfg.beta},
           {"lambda", cfg.lambda},
           {"max_iter", cfg.max_iter},
           {"tol", cfg.tol}};
    if (cfg.report_iter) j["report_iter"] = *cfg.report_iter;
    return j;
}

json manifest_json(const std::string& command, int argc, char** argv,
                   const std::string& started, const std::string& finished) {
    json args = json::array();
    for (int i = 0; i < argc; ++i) args.push_back(argv[i]);
    return json{{"command", command},
                {"args", args},
                {"tool_version", FDLSR_VERSION},
                {"started_at", started},
                {"finished_at", finished}};
}

json trial_json(const fdlsr::TrialReport& report) {
    return json{{"method", fdlsr::to_string(report.method)},
                {"k_per_class", report.k_per_class},
                {"repeats", report.repeats},
                {"seed", report.seed},
                {"normalize", fdlsr::to_string(report.normalize)},
                {"accuracies", report.accuracies},
                {"mean", report.mean},
                {"std", report.stddev},
                {"std_definition", "population"},
                {"train_time_s", report.train_time_s},
                {"test_time_s", report.test_time_s},
                {"config", config_json(report.config)}};
}

void write_output(const std::string& path, const std::string& content) {
    if (path == "-") {
        std::cout << content << '\n';
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << content << '\n';
    if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

void write_trace_csv(const std::string& path, const fdlsr::SolverTrace& trace) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    const bool heldout = !trace.iterations.empty() &&
                         trace.iterations.front().heldout_accuracy.has_value();
    out << "iter,objective,q_delta" << (heldout ? ",heldout_acc" : "") << '\n';
    for (std::size_t i = 0; i < trace.iterations.size(); ++i) {
        const fdlsr::IterationRecord& rec = trace.iterations[i];
        out << (i + 1) << ',' << fmt_double(rec.objective) << ',' << fmt_double(rec.q_delta);
        if (heldout) out << ',' << fmt_double(rec.heldout_accuracy.value_or(0.0));
        out << '\n';
    }
    if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Least squares regression classifiers with relaxed, Fisher-regularized "
                 "targets"};
    app.require_subcommand(1);
    app.set_version_flag("--version", FDLSR_VERSION);

    // ---- train ----------------------------------------------------------
    CLI::App* train = app.add_subcommand("train", "Fit a projection and export model + trace");
    std::string train_data, train_method = "fdlsr", train_norm = "unit_l2";
    std::string model_out = "model.fdlsr", trace_out = "trace.csv", train_manifest;
    std::uint64_t train_seed = 0;
    int train_per_class = 0;
    bool train_skip_header = false;
    SolverFlags train_flags;
    train->add_option("--data", train_data, "Dataset CSV (label in the first column)")
        ->required();
    train->add_option("--method", train_method, "lsr, dlsr or fdlsr")
        ->check(CLI::IsMember({"lsr", "dlsr", "fdlsr"}))
        ->capture_default_str();
    train_flags.attach(train);
    train->add_option("--normalize", train_norm, "none, unit_l2 or zscore")
        ->check(CLI::IsMember({"none", "unit_l2", "zscore"}))
        ->capture_default_str();
    train->add_option("--seed", train_seed, "Split seed when --train-per-class is used")
        ->capture_default_str();
    CLI::Option* tpc_opt =
        train
            ->add_option("--train-per-class", train_per_class,
                         "Hold out everything beyond this many samples per class and track "
                         "held-out accuracy per sweep")
            ->check(CLI::PositiveNumber);
    train->add_flag("--skip-header", train_skip_header, "Skip one CSV header line");
    train->add_option("--model-out", model_out, "Model file path")->capture_default_str();
    train->add_option("--trace-out", trace_out, "Trace CSV path")->capture_default_str();
    train->add_option("--manifest-out", train_manifest,
                      "Manifest path (default: <model-out>.manifest.json)");

    // ---- eval -----------------------------------------------------------
    CLI::App* eval = app.add_subcommand("eval", "Repeated random splits, accuracy mean and std");
    std::string eval_data, eval_method = "fdlsr", eval_norm = "unit_l2", eval_out = "-";
    std::uint64_t eval_seed = 0;
    int eval_k = 0, eval_repeats = 10;
    bool eval_skip_header = false;
    SolverFlags eval_flags;
    eval->add_option("--data", eval_data, "Dataset CSV")->required();
    eval->add_option("--k", eval_k, "Training samples per class")
        ->required()
        ->check(CLI::PositiveNumber);
    eval->add_option("--repeats", eval_repeats, "Number of random splits")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    eval->add_option("--seed", eval_seed, "Base seed; repeat r derives its own split seed")
        ->capture_default_str();
    eval->add_option("--method", eval_method, "lsr, dlsr or fdlsr")
        ->check(CLI::IsMember({"lsr", "dlsr", "fdlsr"}))
        ->capture_default_str();
    eval_flags.attach(eval);
    eval->add_option("--normalize", eval_norm, "none, unit_l2 or zscore")
        ->check(CLI::IsMember({"none", "unit_l2", "zscore"}))
        ->capture_default_str();
    eval->add_flag("--skip-header", eval_skip_header, "Skip one CSV header line");
    eval->add_option("--out", eval_out, "Report path, - for stdout")->capture_default_str();

    // ---- gridsearch -----------------------------------------------------
    CLI::App* grid = app.add_subcommand(
        "gridsearch", "Cross-validate (alpha, beta, lambda) over a candidate set");
    std::string grid_data, grid_method = "fdlsr", grid_norm = "unit_l2", grid_out = "-";
    std::uint64_t grid_seed = 0;
    int grid_k = 0, grid_repeats = 10, grid_jobs = 1;
    bool grid_skip_header = false;
    std::vector<double> grid_all, grid_alpha, grid_beta, grid_lambda;
    SolverFlags grid_flags;
    grid->add_option("--data", grid_data, "Dataset CSV")->required();
    grid->add_option("--k", grid_k, "Training samples per class")
        ->required()
        ->check(CLI::PositiveNumber);
    grid->add_option("--repeats", grid_repeats, "Splits per cell")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    grid->add_option("--seed", grid_seed, "Base seed shared by every cell")
        ->capture_default_str();
    grid->add_option("--method", grid_method, "lsr, dlsr or fdlsr")
        ->check(CLI::IsMember({"lsr", "dlsr", "fdlsr"}))
        ->capture_default_str();
    grid->add_option("--grid", grid_all,
                     "Comma-separated candidate values applied to alpha, beta and lambda "
                     "(default 1e-5,1e-4,1e-3,1e-2,1e-1,1)")
        ->delimiter(',');
    grid->add_option("--grid-alpha", grid_alpha, "Candidate alphas (overrides --grid)")
        ->delimiter(',');
    grid->add_option("--grid-beta", grid_beta, "Candidate betas (overrides --grid)")
        ->delimiter(',');
    grid->add_option("--grid-lambda", grid_lambda, "Candidate lambdas (overrides --grid)")
        ->delimiter(',');
    grid->add_option("--jobs", grid_jobs, "Worker threads for grid cells")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    grid_flags.attach(grid);
    grid->add_option("--normalize", grid_norm, "none, unit_l2 or zscore")
        ->check(CLI::IsMember({"none", "unit_l2", "zscore"}))
        ->capture_default_str();
    grid->add_flag("--skip-header", grid_skip_header, "Skip one CSV header line");
    grid->add_option("--out", grid_out, "Report path, - for stdout")->capture_default_str();

    // ---- synth ----------------------------------------------------------
    CLI::App* synth = app.add_subcommand("synth", "Generate a Gaussian-blob dataset CSV");
    std::string synth_out;
    std::uint64_t synth_seed = 0;
    int synth_classes = 0, synth_per_class = 0, synth_dim = 0;
    double synth_spread = 1.0;
    synth->add_option("--classes", synth_classes, "Number of classes")
        ->required()
        ->check(CLI::PositiveNumber);
    synth->add_option("--per-class", synth_per_class, "Samples per class")
        ->required()
        ->check(CLI::PositiveNumber);
    synth->add_option("--dim", synth_dim, "Feature dimensionality")
        ->required()
        ->check(CLI::PositiveNumber);
    synth->add_option("--spread", synth_spread, "Noise scale around each class center")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    synth->add_option("--seed", synth_seed, "Generator seed")->capture_default_str();
    synth->add_option("--out", synth_out, "Output CSV path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;  // usage errors
    }

    try {
        const std::string started = utc_now();

        if (train->parsed()) {
            fdlsr::CsvOptions csv;
            csv.skip_header = train_skip_header;
            const fdlsr::Dataset full = fdlsr::load_csv(train_data, csv);
            const fdlsr::SolverConfig cfg = train_flags.config();
            const fdlsr::Method method = fdlsr::method_from_string(train_method);
            const fdlsr::NormScheme scheme = fdlsr::norm_scheme_from_string(train_norm);

            fdlsr::Dataset train_ds;
            fdlsr::Heldout heldout;
            const bool has_heldout = tpc_opt->count() > 0;
            if (has_heldout) {
                const fdlsr::Split split =
                    fdlsr::split_per_class(full, train_per_class, train_seed);
                train_ds = split.train;
                heldout.features = split.test.features;
                heldout.labels = split.test.labels;
            } else {
                train_ds = full;
            }

            const fdlsr::Normalizer norm =
                fdlsr::Normalizer::fit(train_ds.features, scheme);
            const Eigen::MatrixXd X = norm.apply(train_ds.features);
            if (has_heldout) heldout.features = norm.apply(heldout.features);
            const Eigen::MatrixXd H = fdlsr::build_label_matrix(train_ds);

            const fdlsr::FitResult fit = fdlsr::fit_method(
                method, X, H, train_ds.labels, cfg, has_heldout ? &heldout : nullptr);

            fdlsr::ModelFile model;
            model.method = method;
            model.config = cfg;
            model.normalizer = norm;
            model.label_names = train_ds.label_names;
            model.Q = fit.projection.Q;
            fdlsr::save_model(model, model_out);
            write_trace_csv(trace_out, fit.trace);

            json manifest = manifest_json("train", argc, argv, started, utc_now());
            manifest["dataset"] = train_data;
            manifest["seed"] = train_seed;
            manifest["method"] = train_method;
            manifest["normalize"] = train_norm;
            manifest["config"] = config_json(cfg);
            manifest["outputs"] = json{{"model", model_out}, {"trace", trace_out}};
            const std::string manifest_path =
                train_manifest.empty() ? model_out + ".manifest.json" : train_manifest;
            write_output(manifest_path, manifest.dump(2));

            std::cout << "model: " << model_out << "\ntrace: " << trace_out
                      << "\niterations: " << fit.trace.iterations_run()
                      << "\nconverged: " << (fit.trace.converged ? "true" : "false") << '\n';
            return 0;
        }

        if (eval->parsed()) {
            fdlsr::CsvOptions csv;
            csv.skip_header = eval_skip_header;
            const fdlsr::Dataset ds = fdlsr::load_csv(eval_data, csv);
            const fdlsr::TrialReport report = fdlsr::run_trials(
                ds, eval_k, eval_repeats, eval_seed, fdlsr::method_from_string(eval_method),
                eval_flags.config(), fdlsr::norm_scheme_from_string(eval_norm));

            json out = trial_json(report);
            json manifest = manifest_json("eval", argc, argv, started, utc_now());
            manifest["dataset"] = eval_data;
            manifest["seed"] = eval_seed;
            out["manifest"] = manifest;
            write_output(eval_out, out.dump(2));
            return 0;
        }

        if (grid->parsed()) {
            fdlsr::CsvOptions csv;
            csv.skip_header = grid_skip_header;
            const fdlsr::Dataset ds = fdlsr::load_csv(grid_data, csv);
            const std::vector<double> shared =
                grid_all.empty() ? fdlsr::default_grid() : grid_all;
            const fdlsr::GridResult result = fdlsr::grid_search(
                ds, grid_k, grid_repeats, grid_seed,
                grid_alpha.empty() ? shared : grid_alpha,
                grid_beta.empty() ? shared : grid_beta,
                grid_lambda.empty() ? shared : grid_lambda,
                fdlsr::method_from_string(grid_method), grid_flags.config(),
                fdlsr::norm_scheme_from_string(grid_norm), grid_jobs);

            json cells = json::array();
            for (const fdlsr::GridCell& cell : result.cells) {
                json c = trial_json(cell.report);
                c["alpha"] = cell.alpha;
                c["beta"] = cell.beta;
                c["lambda"] = cell.lambda;
                cells.push_back(std::move(c));
            }
            json out{{"method", grid_method},
                     {"k_per_class", grid_k},
                     {"repeats", grid_repeats},
                     {"seed", grid_seed},
                     {"normalize", grid_norm},
                     {"jobs", grid_jobs},
                     {"cells", std::move(cells)},
                     {"best_index", result.best_index}};
            json best = trial_json(result.best().report);
            best["alpha"] = result.best().alpha;
            best["beta"] = result.best().beta;
            best["lambda"] = result.best().lambda;
            out["best"] = std::move(best);
            json manifest = manifest_json("gridsearch", argc, argv, started, utc_now());
            manifest["dataset"] = grid_data;
            manifest["seed"] = grid_seed;
            out["manifest"] = manifest;
            write_output(grid_out, out.dump(2));
            return 0;
        }

        if (synth->parsed()) {
            const fdlsr::Dataset ds = fdlsr::synth_blobs(synth_classes, synth_per_class,
                                                         synth_dim, synth_spread, synth_seed);
            fdlsr::save_csv(ds, synth_out);
            json manifest = manifest_json("synth", argc, argv, started, utc_now());
            manifest["seed"] = synth_seed;
            manifest["outputs"] = json{{"csv", synth_out}};
            write_output(synth_out + ".manifest.json", manifest.dump(2));
            std::cout << "wrote " << ds.num_samples() << " samples to " << synth_out << '\n';
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
