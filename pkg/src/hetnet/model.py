"""Network model types, unit handling, and validation.

Internal units are SI throughout: densities in 1/m^2, powers in W,
bandwidths in Hz. Configuration files use operator-friendly units
(1/km^2, dBm, MHz); the conversion happens exactly once at ingestion.
Rates are carried in nats/s (natural-log Shannon rate); divide by ln 2
for bits/s.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Sequence

PER_KM2_TO_PER_M2 = 1e-6
MHZ_TO_HZ = 1e6

#: Shape/rate constant of the gamma approximation to the normalized
#: Voronoi cell-area distribution of a planar Poisson process.
DEFAULT_CELL_AREA_SHAPE = 3.575


def dbm_to_watts(p_dbm: float) -> float:
    """Convert a power level from dBm to watts: 10^((p_dbm - 30) / 10)."""
    return 10.0 ** ((p_dbm - 30.0) / 10.0)


def watts_to_dbm(p_w: float) -> float:
    """Inverse of :func:`dbm_to_watts` (p_w must be positive)."""
    return 30.0 + 10.0 * math.log10(p_w)


@dataclass(frozen=True)
class TierParams:
    """Parameters of one BS tier.

    density: BS intensity [1/m^2]
    tx_power: transmit power [W], identical for all BSs of the tier
    bandwidth: tier bandwidth [Hz], shared equally among associated users
    cre_bias: linear bias factor used only by the CRE baseline
    """

    density: float
    tx_power: float
    bandwidth: float
    cre_bias: float = 1.0

    @classmethod
    def from_config_units(
        cls,
        density_per_km2: float,
        power_dbm: float,
        bandwidth_mhz: float,
        cre_bias: float = 1.0,
    ) -> "TierParams":
        """Build a tier from config-file units (1/km^2, dBm, MHz)."""
        return cls(
            density=density_per_km2 * PER_KM2_TO_PER_M2,
            tx_power=dbm_to_watts(power_dbm),
            bandwidth=bandwidth_mhz * MHZ_TO_HZ,
            cre_bias=cre_bias,
        )


@dataclass(frozen=True)
class NetworkModel:
    """A K-tier downlink network with PPP-distributed BSs and users.

    tiers: ordered tier parameters, K >= 1
    alpha: path-loss exponent (> 2, required for the interference
        integral to converge)
    noise_power: AWGN power sigma^2 [W]; 0 selects the
        interference-limited regime
    mu_density: user intensity [1/m^2]
    cell_area_shape: gamma shape/rate constant of the normalized
        Voronoi-cell-area approximation
    """

    tiers: tuple[TierParams, ...]
    alpha: float
    noise_power: float
    mu_density: float
    cell_area_shape: float = DEFAULT_CELL_AREA_SHAPE

    @property
    def n_tiers(self) -> int:
        return len(self.tiers)

    def with_bandwidths(self, bandwidths_hz: Sequence[float]) -> "NetworkModel":
        """Copy of the model with per-tier bandwidths replaced [Hz]."""
        if len(bandwidths_hz) != self.n_tiers:
            raise ValueError(
                f"expected {self.n_tiers} bandwidths, got {len(bandwidths_hz)}"
            )
        tiers = tuple(
            replace(t, bandwidth=float(b)) for t, b in zip(self.tiers, bandwidths_hz)
        )
        return replace(self, tiers=tiers)


class AssociationVariant(Enum):
    """Cell association rules implemented by the simulator."""

    PROPOSED = "proposed"  # load-aware: max B/(N+1) * ln(1+SINR)
    CRE = "cre"  # biased mean received power
    MAX_RSS = "max_rss"  # unbiased mean received power
    MAX_SINR = "max_sinr"  # instantaneous SINR
    NEAREST_BS = "nearest"  # smallest distance over all tiers


class RateMetric(Enum):
    """How the per-user rate is accounted.

    FULL_BAND charges the whole tier bandwidth to the user;
    EQUAL_SHARE divides the bandwidth by the serving BS's final load.
    """

    FULL_BAND = "full_band"
    EQUAL_SHARE = "equal_share"


@dataclass(frozen=True)
class AssociationScheme:
    variant: AssociationVariant
    rate_metric: RateMetric = RateMetric.FULL_BAND
    # CRE normally ranks by fading-averaged received power; set True to
    # include the instantaneous fading draw in the ranking.
    cre_with_fading: bool = False


@dataclass(frozen=True)
class ValidationIssue:
    """One violated model invariant."""

    code: str
    message: str

    def __str__(self) -> str:  # pragma: no cover - repr convenience
        return f"{self.code}: {self.message}"


class ModelValidationError(ValueError):
    """Raised by :func:`validate`; carries every violation found."""

    def __init__(self, issues: Sequence[ValidationIssue]):
        self.issues = tuple(issues)
        super().__init__("; ".join(str(i) for i in self.issues))


def validation_issues(model: NetworkModel) -> list[ValidationIssue]:
    """Collect all invariant violations (tier indices reported 1-based)."""
    issues: list[ValidationIssue] = []
    if model.n_tiers < 1:
        issues.append(ValidationIssue("EmptyTiers", "at least one tier is required"))
    if not (model.alpha > 2.0):
        issues.append(
            ValidationIssue(
                "InvalidAlpha",
                f"path-loss exponent must exceed 2, got {model.alpha}",
            )
        )
    if model.noise_power < 0:
        issues.append(
            ValidationIssue(
                "NegativeNoise", f"noise power must be >= 0, got {model.noise_power}"
            )
        )
    if not (model.mu_density > 0):
        issues.append(
            ValidationIssue(
                "NonPositiveMuDensity",
                f"user density must be positive, got {model.mu_density}",
            )
        )
    if not (model.cell_area_shape > 0):
        issues.append(
            ValidationIssue(
                "NonPositiveCellAreaShape",
                f"cell-area shape constant must be positive, got {model.cell_area_shape}",
            )
        )
    for idx, tier in enumerate(model.tiers, start=1):
        if not (tier.density > 0):
            issues.append(
                ValidationIssue(
                    "NonPositiveDensity",
                    f"tier {idx}: BS density must be positive, got {tier.density}",
                )
            )
        if not (tier.tx_power > 0):
            issues.append(
                ValidationIssue(
                    "NonPositivePower",
                    f"tier {idx}: transmit power must be positive, got {tier.tx_power}",
                )
            )
        if not (tier.bandwidth > 0):
            issues.append(
                ValidationIssue(
                    "NonPositiveBandwidth",
                    f"tier {idx}: bandwidth must be positive, got {tier.bandwidth}",
                )
            )
        if not (tier.cre_bias > 0):
            issues.append(
                ValidationIssue(
                    "NonPositiveCreBias",
                    f"tier {idx}: CRE bias must be positive, got {tier.cre_bias}",
                )
            )
    return issues


def validate(model: NetworkModel) -> NetworkModel:
    """Return the model unchanged if every invariant holds.

    Raises ModelValidationError listing *all* violations, not just the
    first, so a sweep script's config mistakes surface in one pass.
    """
    issues = validation_issues(model)
    if issues:
        raise ModelValidationError(issues)
    return model
