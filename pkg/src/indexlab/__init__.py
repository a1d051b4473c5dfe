"""Composite index construction and regression analysis toolkit.

Builds weighted composite indices from published component weights and
reproduces a complete published regression analysis: descriptive statistics,
Shapiro-Wilk normality, simple/multiple/stepwise least squares with
Durbin-Watson and collinearity diagnostics, principal component analysis,
correlation matrices, and a golden-diff harness against the published tables.
"""
from ._version import __version__
from .correlation import (
    CorrelationMatrix,
    CorrelationResult,
    correlation_matrix,
    pearson,
    significance_stars,
)
from .dataset import (
    DIMENSIONS,
    IDESI,
    PILLARS,
    SII,
    CountryRecord,
    Dataset,
    Series,
    bundled_table_a1,
    emit_dataset,
    parse_dataset,
    select,
)
from .descriptive import (
    DescriptiveStats,
    NormalityResult,
    boxplot_outliers,
    describe,
    shapiro_wilk,
    tukey_hinges,
)
from .distributions import (
    PValue,
    chi2_tail_p,
    f_tail_p,
    normal_cdf,
    normal_quantile,
    regularized_beta,
    regularized_gamma_q,
    t_two_tailed_p,
)
from .errors import (
    ColumnLookupError,
    DatasetParseError,
    DefinitionError,
    DegenerateDataError,
    DomainError,
    IndexLabError,
    InsufficientDataError,
    NotFittedError,
    SingularDesignError,
    ValidationError,
)
from .golden import CellResult, GoldenCell, GoldenDiff, diff_golden, golden_cells, render_diff
from .index_engine import (
    IndexComponent,
    IndexDefinition,
    IndexScore,
    compute_composite,
    compute_idesi,
    compute_sii_from_pillars,
    min_max_normalize,
    parse_definition,
    preset,
    preset_names,
    rank,
)
from .pca import HypothesisTestResult, PcaResult, bartlett_sphericity, eigen_symmetric, kmo, run_pca
from .regression import (
    OLS,
    AnovaBlock,
    CasewiseDiagnostics,
    CollinearityReport,
    DurbinWatsonResult,
    LinearModelFit,
    StepwiseOLS,
    StepwiseStep,
    anova,
    casewise_diagnostics,
    collinearity,
    durbin_watson,
    fit_ols,
    null_model,
    predict,
    stepwise_fit,
)
from .report import (
    ReportBundle,
    emit,
    figure_file_text,
    predict_country,
    prediction_record,
    reproduce_all,
    validate_schema,
    write_figures,
)

__all__ = [
    "__version__",
    "AnovaBlock",
    "CasewiseDiagnostics",
    "CellResult",
    "CollinearityReport",
    "ColumnLookupError",
    "CorrelationMatrix",
    "CorrelationResult",
    "CountryRecord",
    "Dataset",
    "DatasetParseError",
    "DefinitionError",
    "DegenerateDataError",
    "DescriptiveStats",
    "DIMENSIONS",
    "DomainError",
    "DurbinWatsonResult",
    "GoldenCell",
    "GoldenDiff",
    "HypothesisTestResult",
    "IDESI",
    "IndexComponent",
    "IndexDefinition",
    "IndexLabError",
    "IndexScore",
    "InsufficientDataError",
    "LinearModelFit",
    "NormalityResult",
    "NotFittedError",
    "OLS",
    "PcaResult",
    "PILLARS",
    "PValue",
    "ReportBundle",
    "Series",
    "SII",
    "SingularDesignError",
    "StepwiseOLS",
    "StepwiseStep",
    "ValidationError",
    "anova",
    "bartlett_sphericity",
    "boxplot_outliers",
    "bundled_table_a1",
    "casewise_diagnostics",
    "chi2_tail_p",
    "collinearity",
    "compute_composite",
    "compute_idesi",
    "compute_sii_from_pillars",
    "correlation_matrix",
    "describe",
    "diff_golden",
    "durbin_watson",
    "emit",
    "emit_dataset",
    "eigen_symmetric",
    "f_tail_p",
    "figure_file_text",
    "fit_ols",
    "golden_cells",
    "kmo",
    "min_max_normalize",
    "normal_cdf",
    "normal_quantile",
    "null_model",
    "parse_dataset",
    "parse_definition",
    "pearson",
    "predict",
    "predict_country",
    "prediction_record",
    "preset",
    "preset_names",
    "rank",
    "regularized_beta",
    "regularized_gamma_q",
    "render_diff",
    "reproduce_all",
    "run_pca",
    "select",
    "shapiro_wilk",
    "significance_stars",
    "stepwise_fit",
    "t_two_tailed_p",
    "tukey_hinges",
    "validate_schema",
    "write_figures",
]
