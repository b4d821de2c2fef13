"""Bayesian nonparametric model checking.

Given data and a parametric family, the check contrasts how concentrated
the Cramér–von Mises distance between a Dirichlet process and the fitted
model is a priori versus a posteriori. A relative belief ratio above 1
at distance zero is evidence the model holds; the strength calibrates it.
"""

from .distributions import (
    Cauchy,
    ContinuousDistribution,
    Exponential,
    Normal,
    NormalMixture,
    StudentT,
    Uniform,
    parse_distribution,
)
from .cvm import cvm_discrete, cvm_numeric, d_min
from .dp import (
    BaseMeasure,
    ContinuousBase,
    DiscreteMeasure,
    DpParams,
    PosteriorMixture,
    posterior_params,
    sample_base,
    sample_dp,
)
from .engine import (
    CheckConfig,
    RBReport,
    RBSummary,
    prior_quantile_grid,
    rb_summary,
    run_check,
    sample_distances,
)
from .errors import (
    ConfigError,
    DataError,
    DegeneracyError,
    DomainError,
    DpCheckError,
)
from .models import FAMILY_TAGS, FittedModel, ParametricFamily, fit
from .rng import RngStream, derive_seed
from .scenarios import (
    ResultRecord,
    Scenario,
    ScenarioSummary,
    load_scenarios,
    run_scenario,
    summarize,
    table_scenarios,
)
from .special import gamma_co_quantile

__version__ = "0.1.0"

__all__ = [
    "BaseMeasure",
    "Cauchy",
    "CheckConfig",
    "ConfigError",
    "ContinuousBase",
    "ContinuousDistribution",
    "DataError",
    "DegeneracyError",
    "DiscreteMeasure",
    "DomainError",
    "DpCheckError",
    "DpParams",
    "Exponential",
    "FAMILY_TAGS",
    "FittedModel",
    "Normal",
    "NormalMixture",
    "ParametricFamily",
    "PosteriorMixture",
    "RBReport",
    "RBSummary",
    "ResultRecord",
    "RngStream",
    "Scenario",
    "ScenarioSummary",
    "StudentT",
    "Uniform",
    "__version__",
    "cvm_discrete",
    "cvm_numeric",
    "d_min",
    "derive_seed",
    "fit",
    "gamma_co_quantile",
    "load_scenarios",
    "parse_distribution",
    "posterior_params",
    "prior_quantile_grid",
    "rb_summary",
    "run_check",
    "run_scenario",
    "sample_base",
    "sample_dp",
    "sample_distances",
    "summarize",
    "table_scenarios",
]
