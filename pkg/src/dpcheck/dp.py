"""Finite-series sampling of Dirichlet process realizations.

A random measure from DP(a, H) is approximated by N atoms drawn i.i.d. from
the base measure, weighted by normalized gamma co-quantiles of the uniform
order statistics that a cumulative sum of N+1 exponentials induces. The
conjugate posterior given data x1..xn is DP(a+n, H_x) with H_x the
(a/(a+n), n/(a+n)) mixture of the prior base and the empirical distribution,
so posterior sampling reuses the same series with a mixture base.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .distributions import ContinuousDistribution
from .errors import ConfigError, DataError, DegeneracyError, DomainError
from .special import gamma_co_quantile

WEIGHT_SUM_TOL = 1e-12


@dataclass(frozen=True)
class ContinuousBase:
    """Base measure given by a continuous distribution."""

    dist: ContinuousDistribution


@dataclass(frozen=True)
class PosteriorMixture:
    """Mixture base of a conjugate posterior: prior base with weight
    a/(a+n), empirical distribution of the data with weight n/(a+n)."""

    prior_weight: float
    prior_base: ContinuousDistribution
    data: np.ndarray

    def __post_init__(self):
        if not 0.0 <= self.prior_weight <= 1.0:
            raise DomainError(f"mixture weight must lie in [0, 1], got {self.prior_weight!r}")
        x = np.asarray(self.data, dtype=float)
        if x.ndim != 1 or x.size == 0:
            raise DataError("posterior mixture requires a nonempty 1-d data array")
        if not np.all(np.isfinite(x)):
            raise DataError("posterior mixture data contains non-finite values")
        x = np.sort(x)
        x.flags.writeable = False
        object.__setattr__(self, "data", x)


BaseMeasure = ContinuousBase | PosteriorMixture


@dataclass(frozen=True)
class DpParams:
    """Concentration, base measure, and truncation level of one process."""

    a: float
    base: BaseMeasure
    N: int = 1000

    def __post_init__(self):
        if not self.a > 0 or not np.isfinite(self.a):
            raise ConfigError(f"concentration a must be a positive real, got {self.a!r}")
        if not isinstance(self.N, (int, np.integer)) or self.N < 1:
            raise ConfigError(f"truncation N must be an integer >= 1, got {self.N!r}")
        if not isinstance(self.base, (ContinuousBase, PosteriorMixture)):
            raise ConfigError(f"base must be a ContinuousBase or PosteriorMixture, got {self.base!r}")


@dataclass(frozen=True)
class DiscreteMeasure:
    """A finite discrete probability measure with sorted, distinct atoms."""

    atoms: np.ndarray
    weights: np.ndarray = field(repr=False)

    def __post_init__(self):
        atoms = np.asarray(self.atoms, dtype=float)
        weights = np.asarray(self.weights, dtype=float)
        if atoms.ndim != 1 or atoms.size == 0 or atoms.shape != weights.shape:
            raise DomainError("atoms and weights must be nonempty 1-d arrays of equal length")
        if not np.all(np.isfinite(atoms)) or not np.all(np.isfinite(weights)):
            raise DomainError("atoms and weights must be finite")
        if atoms.size > 1 and not np.all(np.diff(atoms) > 0):
            raise DomainError("atoms must be strictly increasing")
        if np.any(weights < 0) or abs(weights.sum() - 1.0) > WEIGHT_SUM_TOL:
            raise DomainError("weights must be nonnegative and sum to 1")
        atoms.flags.writeable = False
        weights.flags.writeable = False
        object.__setattr__(self, "atoms", atoms)
        object.__setattr__(self, "weights", weights)

    @classmethod
    def merged(cls, locations, weights) -> "DiscreteMeasure":
        """Sort locations and merge exact duplicates by summing their weights."""
        locations = np.asarray(locations, dtype=float)
        weights = np.asarray(weights, dtype=float)
        atoms, inverse = np.unique(locations, return_inverse=True)
        return cls(atoms, np.bincount(inverse, weights=weights))


def sample_base(base: BaseMeasure, rng: np.random.Generator, size: int | None = None):
    """Draw from a base measure: a scalar by default, an array when sized."""
    n = 1 if size is None else int(size)
    if isinstance(base, ContinuousBase):
        out = base.dist.sample(n, rng)
    else:
        out = np.empty(n)
        from_prior = rng.random(n) < base.prior_weight
        k = int(np.count_nonzero(from_prior))
        out[from_prior] = base.prior_base.sample(k, rng)
        out[~from_prior] = base.data[rng.integers(0, base.data.size, n - k)]
    return out if size is not None else float(out[0])


def posterior_params(prior: DpParams, data) -> DpParams:
    """Conjugate update: DP(a, H) with n observations becomes DP(a+n, H_x)."""
    if not isinstance(prior.base, ContinuousBase):
        raise ConfigError("posterior_params expects a prior with a continuous base")
    x = np.asarray(data, dtype=float)
    if x.ndim != 1 or x.size == 0:
        raise DataError("posterior update requires a nonempty 1-d data array")
    if not np.all(np.isfinite(x)):
        raise DataError("data contains non-finite values")
    n = x.size
    mixture = PosteriorMixture(prior.a / (prior.a + n), prior.base.dist, np.sort(x))
    return DpParams(prior.a + n, mixture, prior.N)


def _series_weights(a: float, N: int, rng: np.random.Generator) -> np.ndarray:
    gaps = rng.standard_exponential(N + 1)
    arrivals = np.cumsum(gaps)
    ratios = arrivals[:N] / arrivals[N]
    # the ratio of adjacent arrival sums can round onto the endpoints of (0,1)
    tiny = np.finfo(float).tiny
    ratios = np.clip(ratios, tiny, np.nextafter(1.0, 0.0))
    return gamma_co_quantile(a / N, ratios)


def sample_dp(params: DpParams, rng: np.random.Generator) -> DiscreteMeasure:
    """One approximate realization of DP(a, base) with N support points.

    Atom locations are i.i.d. base draws; the unnormalized weight of the
    i-th location is the gamma(a/N, 1) co-quantile of the i-th arrival ratio.
    Weights that underflow to zero are kept; if every weight underflows the
    draw is retried once and then reported as numerically degenerate.
    """
    locations = sample_base(params.base, rng, params.N)
    raw = _series_weights(params.a, params.N, rng)
    total = raw.sum()
    if not np.isfinite(total) or total <= 0.0:
        locations = sample_base(params.base, rng, params.N)
        raw = _series_weights(params.a, params.N, rng)
        total = raw.sum()
        if not np.isfinite(total) or total <= 0.0:
            raise DegeneracyError(
                f"all series weights underflowed for a={params.a}, N={params.N}; "
                "increase a or decrease N"
            )
    return DiscreteMeasure.merged(locations, raw / total)
