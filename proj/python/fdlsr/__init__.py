"""Discriminative least squares regression with Fisher-regularized targets."""

from ._core import (
    Dataset,
    FdlsrState,
    FitResult,
    GridCell,
    GridResult,
    Heldout,
    IterationRecord,
    MarginStats,
    MeanMatrices,
    Method,
    ModelFile,
    NormScheme,
    Normalizer,
    ProjectedGallery,
    Projection,
    RelaxedTargets,
    SolverConfig,
    SolverTrace,
    Split,
    TrialReport,
    accuracy,
    apply_projection,
    build_direction_matrix,
    build_label_matrix,
    default_grid,
    fdlsr_init,
    fisher_gradient,
    fisher_value,
    fit_dlsr,
    fit_fdlsr,
    fit_lsr,
    fit_method,
    gaussian_matrix,
    grid_search,
    load_csv,
    load_model,
    margin_stats,
    mean_matrices,
    method_from_string,
    mix_seed,
    nn_predict,
    normalize_columns,
    objective,
    partition_from_labels,
    project,
    random_projection,
    ridge_kernel,
    run_trials,
    save_csv,
    save_model,
    split_per_class,
    synth_blobs,
    update_q,
    update_s,
    update_t,
)

__version__ = getattr(__import__("fdlsr._core", fromlist=["__version__"]), "__version__", "0.1.0")

__all__ = [name for name in dir() if not name.startswith("_")]
