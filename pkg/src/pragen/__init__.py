"""Feasibility-aware instance generator for gender-separated ward planning."""

from pragen.feasibility import (
    CapacityFamily,
    Census,
    FeasibilityVerdict,
    Method,
    WardConfig,
    classify,
    frobenius_unique_pair,
    is_feasible,
    subset_sum_oracle,
)
from pragen.distributions import (
    DEFAULT_AGE_SPEC,
    DEFAULT_LOR_SPEC,
    DEFAULT_LOS_SPEC,
    DEFAULT_RATES,
    Empirical,
    EmpiricalTable,
    LogNormalSpec,
    RatePolynomial,
    Uniform,
    fit_rate_from_classes,
    load_empirical_table,
    sample_age,
    sample_lognormal,
    sample_lor,
    sample_los,
)
from pragen.model import (
    Gender,
    Horizon,
    Instance,
    Patient,
    SchemaError,
    census_of,
    daily_census,
    deserialize,
    load_factor,
    serialize,
    validate,
)
from pragen.generator import (
    ConfigError,
    GeneratorConfig,
    build_pool,
    config_digest,
    config_from_dict,
    config_to_dict,
    generate,
    mean_los_of,
    pool_size,
    select_from_pool,
    validate_config,
)

__version__ = "0.1.0"
