// Python surface over the C++ core. Matrices cross the boundary as numpy
// arrays (samples in columns, matching the C++ convention).

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fdlsr/classify.hpp"
#include "fdlsr/dataset.hpp"
#include "fdlsr/eval.hpp"
#include "fdlsr/fisher.hpp"
#include "fdlsr/model_io.hpp"
#include "fdlsr/solvers.hpp"

namespace py = pybind11;
using namespace fdlsr;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Discriminative least squares regression with Fisher-regularized targets";
#ifdef FDLSR_VERSION
    m.attr("__version__") = FDLSR_VERSION;
#endif

    // ---- dataset ---------------------------------------------------------

    py::class_<Dataset>(m, "Dataset")
        .def(py::init<>())
        .def(py::init([](Eigen::MatrixXd features, std::vector<int> labels,
                         std::vector<std::string> label_names) {
                 Dataset ds{std::move(features), std::move(labels), std::move(label_names)};
                 ds.validate();
                 return ds;
             }),
             py::arg("features"), py::arg("labels"), py::arg("label_names"))
        .def_readwrite("features", &Dataset::features)
        .def_readwrite("labels", &Dataset::labels)
        .def_readwrite("label_names", &Dataset::label_names)
        .def_property_readonly("dim", &Dataset::dim)
        .def_property_readonly("num_samples", &Dataset::num_samples)
        .def_property_readonly("num_classes", &Dataset::num_classes)
        .def("class_counts", &Dataset::class_counts)
        .def("validate", &Dataset::validate, py::arg("require_nonempty_classes") = true)
        .def("__repr__", [](const Dataset& ds) {
            return "Dataset(dim=" + std::to_string(ds.dim()) +
                   ", samples=" + std::to_string(ds.num_samples()) +
                   ", classes=" + std::to_string(ds.num_classes()) + ")";
        });

    m.def(
        "load_csv",
        [](const std::string& path, bool skip_header) {
            return load_csv(path, CsvOptions{skip_header});
        },
        py::arg("path"), py::arg("skip_header") = false);
    m.def("save_csv", &save_csv, py::arg("dataset"), py::arg("path"));

    m.def("normalize_columns",
          py::overload_cast<Eigen::MatrixXd>(&normalize_columns), py::arg("features"));
    m.def("normalize_columns", py::overload_cast<Dataset>(&normalize_columns),
          py::arg("dataset"));

    py::enum_<NormScheme>(m, "NormScheme")
        .value("none", NormScheme::none)
        .value("unit_l2", NormScheme::unit_l2)
        .value("zscore", NormScheme::zscore);

    py::class_<Normalizer>(m, "Normalizer")
        .def_static("fit", &Normalizer::fit, py::arg("features"), py::arg("scheme"))
        .def("apply", &Normalizer::apply, py::arg("features"))
        .def_readonly("scheme", &Normalizer::scheme)
        .def_readonly("mean", &Normalizer::mean)
        .def_readonly("scale", &Normalizer::scale);

    m.def("build_label_matrix", &build_label_matrix, py::arg("dataset"));

    py::class_<Split>(m, "Split")
        .def_readonly("train", &Split::train)
        .def_readonly("test", &Split::test);
    m.def("split_per_class", &split_per_class, py::arg("dataset"), py::arg("k_per_class"),
          py::arg("seed"));

    m.def("gaussian_matrix", &gaussian_matrix, py::arg("rows"), py::arg("cols"),
          py::arg("seed"));
    m.def("apply_projection", &apply_projection, py::arg("dataset"), py::arg("projection"));
    m.def("random_projection", &random_projection, py::arg("dataset"), py::arg("target_dim"),
          py::arg("seed"));
    m.def("synth_blobs", &synth_blobs, py::arg("classes"), py::arg("per_class"),
          py::arg("dim"), py::arg("spread"), py::arg("seed"));
    m.def("mix_seed", &mix_seed, py::arg("seed"), py::arg("stream"));

    // ---- fisher ----------------------------------------------------------

    py::class_<MeanMatrices>(m, "MeanMatrices")
        .def_readonly("class_means", &MeanMatrices::class_means)
        .def_readonly("global_mean", &MeanMatrices::global_mean);
    m.def("mean_matrices", &mean_matrices, py::arg("T"), py::arg("partition"));
    m.def("fisher_value", &fisher_value, py::arg("T"), py::arg("partition"));
    m.def("fisher_gradient", &fisher_gradient, py::arg("T"), py::arg("partition"));

    // ---- solvers ---------------------------------------------------------

    py::class_<SolverConfig>(m, "SolverConfig")
        .def(py::init<>())
        .def_readwrite("alpha", &SolverConfig::alpha)
        .def_readwrite("beta", &SolverConfig::beta)
        .def_readwrite("lambda_", &SolverConfig::lambda)
        .def_readwrite("max_iter", &SolverConfig::max_iter)
        .def_readwrite("tol", &SolverConfig::tol)
        .def_readwrite("report_iter", &SolverConfig::report_iter)
        .def("validate", &SolverConfig::validate);

    py::class_<IterationRecord>(m, "IterationRecord")
        .def_readonly("objective", &IterationRecord::objective)
        .def_readonly("q_delta", &IterationRecord::q_delta)
        .def_readonly("heldout_accuracy", &IterationRecord::heldout_accuracy);

    py::class_<SolverTrace>(m, "SolverTrace")
        .def_readonly("iterations", &SolverTrace::iterations)
        .def_readonly("converged", &SolverTrace::converged)
        .def("iterations_run", &SolverTrace::iterations_run);

    py::class_<Projection>(m, "Projection").def_readonly("Q", &Projection::Q);

    py::class_<RelaxedTargets>(m, "RelaxedTargets")
        .def_readonly("T", &RelaxedTargets::T)
        .def_readonly("S", &RelaxedTargets::S)
        .def_readonly("B", &RelaxedTargets::B);

    py::class_<Heldout>(m, "Heldout")
        .def(py::init([](Eigen::MatrixXd features, std::vector<int> labels) {
                 return Heldout{std::move(features), std::move(labels)};
             }),
             py::arg("features"), py::arg("labels"))
        .def_readwrite("features", &Heldout::features)
        .def_readwrite("labels", &Heldout::labels);

    py::class_<FitResult>(m, "FitResult")
        .def_readonly("projection", &FitResult::projection)
        .def_readonly("trace", &FitResult::trace)
        .def_readonly("targets", &FitResult::targets);

    m.def("ridge_kernel", &ridge_kernel, py::arg("X"), py::arg("beta"));
    m.def("build_direction_matrix", &build_direction_matrix, py::arg("H"));
    m.def("update_t", &update_t, py::arg("Q"), py::arg("X"), py::arg("H"), py::arg("B"),
          py::arg("S"), py::arg("global_mean"), py::arg("class_means"), py::arg("alpha"),
          py::arg("lambda_"));
    m.def("update_q", &update_q, py::arg("T"), py::arg("kernel"));
    m.def("update_s", &update_s, py::arg("T"), py::arg("H"), py::arg("B"));
    m.def("objective", &objective, py::arg("Q"), py::arg("X"), py::arg("T"), py::arg("H"),
          py::arg("B"), py::arg("S"), py::arg("config"));

    py::class_<FdlsrState>(m, "FdlsrState")
        .def_readonly("projection", &FdlsrState::projection)
        .def_readonly("targets", &FdlsrState::targets)
        .def_readonly("kernel", &FdlsrState::kernel);
    m.def("fdlsr_init", &fdlsr_init, py::arg("X"), py::arg("H"), py::arg("beta"));

    m.def("fit_fdlsr", &fit_fdlsr, py::arg("X"), py::arg("H"), py::arg("partition"),
          py::arg("config"), py::arg("heldout") = nullptr);
    m.def("fit_lsr", &fit_lsr, py::arg("X"), py::arg("H"), py::arg("beta"));
    m.def("fit_dlsr", &fit_dlsr, py::arg("X"), py::arg("H"), py::arg("beta"),
          py::arg("max_iter"), py::arg("tol"), py::arg("heldout") = nullptr,
          py::arg("report_iter") = std::optional<int>{});
    m.def("partition_from_labels", &partition_from_labels, py::arg("H"));

    // ---- classify --------------------------------------------------------

    py::class_<ProjectedGallery>(m, "ProjectedGallery")
        .def(py::init([](Eigen::MatrixXd features, std::vector<int> labels) {
                 return ProjectedGallery{std::move(features), std::move(labels)};
             }),
             py::arg("features"), py::arg("labels"))
        .def_readwrite("features", &ProjectedGallery::features)
        .def_readwrite("labels", &ProjectedGallery::labels);

    m.def("project", &project, py::arg("Q"), py::arg("X"));
    m.def("nn_predict", &nn_predict, py::arg("gallery"), py::arg("probes"));
    m.def("accuracy", &accuracy, py::arg("predicted"), py::arg("truth"));

    // ---- evaluation ------------------------------------------------------

    py::enum_<Method>(m, "Method")
        .value("lsr", Method::lsr)
        .value("dlsr", Method::dlsr)
        .value("fdlsr", Method::fdlsr);
    m.def("method_from_string", &method_from_string, py::arg("name"));

    m.def("fit_method", &fit_method, py::arg("method"), py::arg("X"), py::arg("H"),
          py::arg("partition"), py::arg("config"), py::arg("heldout") = nullptr);

    py::class_<TrialReport>(m, "TrialReport")
        .def_readonly("method", &TrialReport::method)
        .def_readonly("k_per_class", &TrialReport::k_per_class)
        .def_readonly("repeats", &TrialReport::repeats)
        .def_readonly("seed", &TrialReport::seed)
        .def_readonly("accuracies", &TrialReport::accuracies)
        .def_readonly("mean", &TrialReport::mean)
        .def_readonly("stddev", &TrialReport::stddev)
        .def_readonly("train_time_s", &TrialReport::train_time_s)
        .def_readonly("test_time_s", &TrialReport::test_time_s)
        .def_readonly("config", &TrialReport::config)
        .def_readonly("normalize", &TrialReport::normalize);

    m.def("run_trials", &run_trials, py::arg("dataset"), py::arg("k_per_class"),
          py::arg("repeats"), py::arg("seed"), py::arg("method"), py::arg("config"),
          py::arg("normalize") = NormScheme::unit_l2);

    py::class_<GridCell>(m, "GridCell")
        .def_readonly("alpha", &GridCell::alpha)
        .def_readonly("beta", &GridCell::beta)
        .def_readonly("lambda_", &GridCell::lambda)
        .def_readonly("report", &GridCell::report);

    py::class_<GridResult>(m, "GridResult")
        .def_readonly("cells", &GridResult::cells)
        .def_readonly("best_index", &GridResult::best_index)
        .def("best", &GridResult::best, py::return_value_policy::reference_internal);

    m.def("default_grid", &default_grid);
    m.def("grid_search", &grid_search, py::arg("dataset"), py::arg("k_per_class"),
          py::arg("repeats"), py::arg("seed"), py::arg("alphas"), py::arg("betas"),
          py::arg("lambdas"), py::arg("method") = Method::fdlsr,
          py::arg("base") = SolverConfig{}, py::arg("normalize") = NormScheme::unit_l2,
          py::arg("jobs") = 1);

    py::class_<MarginStats>(m, "MarginStats")
        .def_readonly("min_inter", &MarginStats::min_inter)
        .def_readonly("max_intra", &MarginStats::max_intra);
    m.def("margin_stats", &margin_stats, py::arg("T"), py::arg("partition"));

    // ---- model files -----------------------------------------------------

    py::class_<ModelFile>(m, "ModelFile")
        .def(py::init<>())
        .def_readwrite("method", &ModelFile::method)
        .def_readwrite("config", &ModelFile::config)
        .def_readwrite("normalizer", &ModelFile::normalizer)
        .def_readwrite("label_names", &ModelFile::label_names)
        .def_readwrite("Q", &ModelFile::Q);
    m.def("save_model", &save_model, py::arg("model"), py::arg("path"));
    m.def("load_model", &load_model, py::arg("path"));
}
