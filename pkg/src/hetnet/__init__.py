"""Load-aware cell association in K-tier heterogeneous cellular networks.

Analytic pipeline (coverage / SINR distributions, load distributions, tier
association fixed point, ergodic rate) plus a Monte Carlo stochastic-geometry
simulator with the load-aware scheme and classical baselines.
"""

__version__ = "0.1.0"

from .model import (
    AssociationScheme,
    AssociationVariant,
    ModelValidationError,
    NetworkModel,
    RateMetric,
    TierParams,
    dbm_to_watts,
    validate,
)

__all__ = [
    "AssociationScheme",
    "AssociationVariant",
    "ModelValidationError",
    "NetworkModel",
    "RateMetric",
    "TierParams",
    "dbm_to_watts",
    "validate",
    "__version__",
]
