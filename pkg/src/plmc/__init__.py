"""plmc: power-law multigraphs, a MAX-CUT algorithm ladder, and reduction gadgets."""

from .errors import (
    ContractError,
    DomainError,
    GraphFormatError,
    InfeasibleReductionError,
    OracleSizeError,
    PlmcError,
    RangeError,
    ResourceLimitError,
)
from .plgmath import (
    FunctionalSpec,
    GwBoundInputs,
    IntervalBounds,
    PowerLawParams,
    SplitParams,
    core_strength_bound,
    degree_count,
    edge_count_estimate,
    functional_conditions_check,
    functional_x,
    gw_ratio_bound,
    hardness_ratio,
    interval_size_bounds,
    interval_size_exact,
    interval_volume_bounds,
    interval_volume_exact,
    max_degree,
    node_count_estimate,
    split_params,
    tau,
    zeta,
)

__version__ = "0.1.0"

__all__ = [
    "ContractError",
    "DomainError",
    "FunctionalSpec",
    "GraphFormatError",
    "GwBoundInputs",
    "InfeasibleReductionError",
    "IntervalBounds",
    "OracleSizeError",
    "PlmcError",
    "PowerLawParams",
    "RangeError",
    "ResourceLimitError",
    "SplitParams",
    "core_strength_bound",
    "degree_count",
    "edge_count_estimate",
    "functional_conditions_check",
    "functional_x",
    "gw_ratio_bound",
    "hardness_ratio",
    "interval_size_bounds",
    "interval_size_exact",
    "interval_volume_bounds",
    "interval_volume_exact",
    "max_degree",
    "node_count_estimate",
    "split_params",
    "tau",
    "zeta",
]
