"""Evaluation metrics, synthetic task generation and statistics for AI agents.

The heavy lifting lives in the compiled ``_core`` extension; this package
re-exports it.
"""

from ._core import (
    AgentMetricsError,
    adaptability,
    aix,
    analyze,
    bie,
    chi_square,
    cohens_d,
    default_config,
    evaluate,
    fleiss_kappa,
    krippendorff_alpha,
    oas,
    one_way_anova,
    overall,
    pearson,
    rater_weighted_score,
    roi,
    simulate,
    studentized_range_quantile,
    studentized_range_sf,
    tdi_normalize,
    tukey_hsd,
    wilson_interval,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
