"""Parametric model families and their maximum-likelihood fits.

Three families are supported: a normal location family with unit variance,
the full location-scale normal family, and the exponential scale family
parameterized by its mean. ``fit`` returns the MLE together with an
evaluable cdf for the fitted member.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .distributions import ContinuousDistribution, Exponential, Normal
from .errors import DataError, DegeneracyError

FAMILY_TAGS = ("location-normal", "location-scale-normal", "scale-exponential")


@dataclass(frozen=True)
class ParametricFamily:
    tag: str

    def __post_init__(self):
        if self.tag not in FAMILY_TAGS:
            raise DataError(f"unknown family {self.tag!r}; expected one of {FAMILY_TAGS}")


@dataclass(frozen=True)
class FittedModel:
    family: ParametricFamily
    theta: tuple[float, ...]
    dist: ContinuousDistribution


def fit(family: ParametricFamily | str, data) -> FittedModel:
    """Maximum-likelihood fit of ``family`` to one-dimensional data.

    Location estimates are sample means; the location-scale normal variance
    uses the biased divisor n; the exponential scale estimate is the sample
    mean of strictly positive data.
    """
    if isinstance(family, str):
        family = ParametricFamily(family)
    x = np.asarray(data, dtype=float)
    if x.ndim != 1 or x.size < 2:
        raise DataError(f"fit requires a 1-d sample with n >= 2, got shape {x.shape}")
    if not np.all(np.isfinite(x)):
        raise DataError("data contains non-finite values")

    if family.tag == "location-normal":
        mean = float(x.mean())
        return FittedModel(family, (mean,), Normal(mean, 1.0))

    if family.tag == "location-scale-normal":
        mean = float(x.mean())
        var = float(np.mean((x - mean) ** 2))
        if var == 0.0:
            raise DegeneracyError("location-scale-normal fit is degenerate: data has zero variance")
        return FittedModel(family, (mean, var), Normal(mean, var))

    # scale-exponential
    if np.any(x <= 0.0):
        raise DataError("scale-exponential requires strictly positive data")
    mean = float(x.mean())
    return FittedModel(family, (mean,), Exponential(mean))
