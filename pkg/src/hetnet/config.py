"""TOML configuration ingestion for network models.

Schema (units are operator-facing; converted to SI exactly once here)::

    [network]
    alpha = 4.0                 # path-loss exponent, > 2
    noise_dbm = "zero"          # "zero" or a noise power in dBm
    mu_density_per_km2 = 10.0   # user intensity
    cell_area_shape = 3.575     # optional

    [[tier]]                    # repeated, ordered; tier 1 first
    density_per_km2 = 0.2
    power_dbm = 53.0
    bandwidth_mhz = 15.0
    cre_bias = 1.0              # optional

Unknown keys anywhere are a hard error: a typo in a sweep script must
fail loudly, not silently fall back to a default.
"""

from __future__ import annotations

import sys
from typing import Any, Mapping

if sys.version_info >= (3, 11):
    import tomllib
else:  # pragma: no cover - version shim
    import tomli as tomllib

from .model import NetworkModel, TierParams, dbm_to_watts, validate

#: Named three-tier spectrum allocations [MHz]. The name orders tiers by
#: descending bandwidth, e.g. "B3>B2>B1" gives tier 3 the widest band.
SPECTRUM_CASES: dict[str, tuple[float, float, float]] = {
    "B1>B2>B3": (15.0, 10.0, 5.0),
    "B1>B3>B2": (15.0, 5.0, 10.0),
    "B2>B3>B1": (5.0, 15.0, 10.0),
    "B3>B2>B1": (5.0, 10.0, 15.0),
}

_NETWORK_KEYS = {"alpha", "noise_dbm", "mu_density_per_km2", "cell_area_shape"}
_TIER_KEYS = {"density_per_km2", "power_dbm", "bandwidth_mhz", "cre_bias"}
_TOP_KEYS = {"network", "tier"}


class ConfigError(ValueError):
    """Malformed or invalid configuration; `key` names the offender."""

    def __init__(self, message: str, key: str | None = None):
        self.key = key
        super().__init__(message)


def default_config_dict(
    lambda1_per_km2: float = 0.2,
    alpha: float = 4.0,
    spectrum_case: str = "B1>B2>B3",
    noise_dbm: float | str = "zero",
) -> dict:
    """Reference three-tier configuration.

    Densities follow the 1 : 2 : 20 macro/pico/femto ratio with user
    density 50x the macro tier; powers are 53/33/23 dBm. lambda1 anchors
    the absolute scale (default 0.2/km^2).
    """
    bw = spectrum_bandwidths_mhz(spectrum_case)
    return {
        "network": {
            "alpha": alpha,
            "noise_dbm": noise_dbm,
            "mu_density_per_km2": 50.0 * lambda1_per_km2,
            "cell_area_shape": 3.575,
        },
        "tier": [
            {"density_per_km2": lambda1_per_km2, "power_dbm": 53.0, "bandwidth_mhz": bw[0]},
            {"density_per_km2": 2.0 * lambda1_per_km2, "power_dbm": 33.0, "bandwidth_mhz": bw[1]},
            {"density_per_km2": 20.0 * lambda1_per_km2, "power_dbm": 23.0, "bandwidth_mhz": bw[2]},
        ],
    }


def spectrum_bandwidths_mhz(case: str) -> tuple[float, float, float]:
    try:
        return SPECTRUM_CASES[case]
    except KeyError:
        raise ConfigError(
            f"unknown spectrum case {case!r}; known: {sorted(SPECTRUM_CASES)}",
            key="spectrum_case",
        ) from None


def _reject_unknown_keys(section: Mapping[str, Any], allowed: set[str], where: str) -> None:
    unknown = sorted(set(section) - allowed)
    if unknown:
        raise ConfigError(
            f"unknown key {unknown[0]!r} in {where} (allowed: {sorted(allowed)})",
            key=f"{where}.{unknown[0]}",
        )


def _require(section: Mapping[str, Any], key: str, where: str) -> Any:
    if key not in section:
        raise ConfigError(f"missing required key {key!r} in {where}", key=f"{where}.{key}")
    return section[key]


def _as_number(value: Any, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{where} must be a number, got {value!r}", key=where)
    return float(value)


def parse_noise_dbm(value: Any) -> float:
    """Noise spec -> sigma^2 in W. The string "zero" selects exactly 0."""
    if isinstance(value, str):
        if value.strip().lower() == "zero":
            return 0.0
        raise ConfigError(
            f'network.noise_dbm must be a number or "zero", got {value!r}',
            key="network.noise_dbm",
        )
    return dbm_to_watts(_as_number(value, "network.noise_dbm"))


def model_from_dict(raw: Mapping[str, Any]) -> NetworkModel:
    """Build and validate a NetworkModel from a parsed config mapping."""
    _reject_unknown_keys(raw, _TOP_KEYS, "top level")
    network = _require(raw, "network", "top level")
    if not isinstance(network, Mapping):
        raise ConfigError("[network] must be a table", key="network")
    _reject_unknown_keys(network, _NETWORK_KEYS, "[network]")

    tiers_raw = _require(raw, "tier", "top level")
    if not isinstance(tiers_raw, (list, tuple)) or not tiers_raw:
        raise ConfigError("at least one [[tier]] section is required", key="tier")

    tiers = []
    for idx, tier in enumerate(tiers_raw, start=1):
        where = f"[[tier]] #{idx}"
        if not isinstance(tier, Mapping):
            raise ConfigError(f"{where} must be a table", key=f"tier[{idx}]")
        _reject_unknown_keys(tier, _TIER_KEYS, where)
        tiers.append(
            TierParams.from_config_units(
                density_per_km2=_as_number(_require(tier, "density_per_km2", where), f"{where}.density_per_km2"),
                power_dbm=_as_number(_require(tier, "power_dbm", where), f"{where}.power_dbm"),
                bandwidth_mhz=_as_number(_require(tier, "bandwidth_mhz", where), f"{where}.bandwidth_mhz"),
                cre_bias=_as_number(tier.get("cre_bias", 1.0), f"{where}.cre_bias"),
            )
        )

    model = NetworkModel(
        tiers=tuple(tiers),
        alpha=_as_number(_require(network, "alpha", "[network]"), "network.alpha"),
        noise_power=parse_noise_dbm(network.get("noise_dbm", "zero")),
        mu_density=_as_number(
            _require(network, "mu_density_per_km2", "[network]"), "network.mu_density_per_km2"
        )
        * 1e-6,
        cell_area_shape=_as_number(network.get("cell_area_shape", 3.575), "network.cell_area_shape"),
    )
    return validate(model)


def load_config(path: str) -> tuple[NetworkModel, dict]:
    """Parse a TOML config file; returns (validated model, raw dict)."""
    try:
        with open(path, "rb") as fh:
            raw = tomllib.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path!r}: {exc}") from exc
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"invalid TOML in {path!r}: {exc}") from exc
    return model_from_dict(raw), raw


def set_config_value(raw: Mapping[str, Any], target: str, value: float) -> dict:
    """Return a copy of the raw config with one dotted target replaced.

    Targets address the config file schema, e.g. "network.alpha" or
    "tier[2].density_per_km2" (tier indices are 1-based). The target
    must resolve to an existing or schema-allowed key.
    """
    import copy
    import re

    out = copy.deepcopy(dict(raw))
    m = re.fullmatch(r"network\.(\w+)", target)
    if m:
        key = m.group(1)
        if key not in _NETWORK_KEYS:
            raise ConfigError(f"sweep target {target!r} is not a [network] key", key=target)
        out.setdefault("network", {})[key] = value
        return out
    m = re.fullmatch(r"tier\[(\d+)\]\.(\w+)", target)
    if m:
        idx, key = int(m.group(1)), m.group(2)
        if key not in _TIER_KEYS:
            raise ConfigError(f"sweep target {target!r} is not a tier key", key=target)
        tiers = out.get("tier", [])
        if not (1 <= idx <= len(tiers)):
            raise ConfigError(
                f"sweep target {target!r}: tier index out of range 1..{len(tiers)}",
                key=target,
            )
        out["tier"][idx - 1][key] = value
        return out
    raise ConfigError(
        f"cannot parse sweep target {target!r} "
        "(expected network.<key> or tier[<i>].<key>)",
        key=target,
    )


def apply_spectrum_case(raw: Mapping[str, Any], case: str) -> dict:
    """Copy of the raw config with tier bandwidths set to a named case."""
    bw = spectrum_bandwidths_mhz(case)
    tiers = raw.get("tier", [])
    if len(tiers) != 3:
        raise ConfigError(
            f"spectrum case {case!r} needs exactly 3 tiers, config has {len(tiers)}",
            key="spectrum_case",
        )
    out = dict(raw)
    out["tier"] = [dict(t) for t in tiers]
    for t, b in zip(out["tier"], bw):
        t["bandwidth_mhz"] = b
    return out
