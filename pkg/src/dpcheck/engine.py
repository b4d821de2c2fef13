"""Model checking by comparing prior and posterior concentration of the
Cramér–von Mises distance between a Dirichlet process and a fitted model.

The prior distribution of the distance is discretized into M bins with
equal prior content. The relative belief ratio of a bin is its posterior
content divided by its prior content (1/M); the headline number
rb_at_zero is that ratio for the evidence region [0, d_quantiles[i0]].
Values above 1 mean the data concentrated belief toward distance zero,
i.e. evidence in favor of the model.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .cvm import cvm_discrete
from .distributions import ContinuousDistribution
from .dp import ContinuousBase, DpParams, posterior_params, sample_dp
from .errors import ConfigError
from .models import fit
from .rng import RngStream


@dataclass(frozen=True)
class CheckConfig:
    """Tuning knobs of one model check.

    a: prior concentration; N: series truncation per draw; r1, r2: number
    of prior and posterior distance draws; M: number of prior-quantile
    bins; i0: evidence cutoff index, p0 = i0/M; seed: root of every
    random stream the check consumes.
    """

    a: float = 1.0
    N: int = 1000
    r1: int = 1000
    r2: int = 1000
    M: int = 20
    i0: int = 1
    seed: int = 0

    def __post_init__(self):
        if not isinstance(self.a, (int, float)) or not math.isfinite(self.a) or self.a <= 0:
            raise ConfigError(f"a must be a positive real, got {self.a!r}")
        for name, lo in (("N", 1), ("r1", 100), ("r2", 100), ("M", 2)):
            v = getattr(self, name)
            if not isinstance(v, (int, np.integer)) or v < lo:
                raise ConfigError(f"{name} must be an integer >= {lo}, got {v!r}")
        if not isinstance(self.i0, (int, np.integer)) or not 1 <= self.i0 < self.M:
            raise ConfigError(f"i0 must satisfy 1 <= i0 < M={self.M}, got {self.i0!r}")
        if self.r1 < self.M:
            raise ConfigError(f"r1={self.r1} must be at least M={self.M} for the quantile grid")
        if not isinstance(self.seed, (int, np.integer)) or not 0 <= self.seed < 2**64:
            raise ConfigError(f"seed must be an integer in [0, 2^64), got {self.seed!r}")

    @property
    def p0(self) -> float:
        return self.i0 / self.M


def prior_quantile_grid(distances, M: int) -> np.ndarray:
    """Empirical quantiles of the prior distances at i/M, i = 0..M.

    The i/M quantile is the ceil(i·r/M)-th order statistic, so the grid
    ends at the sample maximum; the leading entry is pinned to 0.
    """
    d = np.sort(np.asarray(distances, dtype=float))
    r = d.size
    if not isinstance(M, (int, np.integer)) or M < 2:
        raise ConfigError(f"M must be an integer >= 2, got {M!r}")
    if r < M:
        raise ConfigError(f"need at least M={M} prior draws for the quantile grid, got {r}")
    ranks = (np.arange(1, M + 1) * r + M - 1) // M
    grid = np.concatenate(([0.0], d[ranks - 1]))
    grid.flags.writeable = False
    return grid


@dataclass(frozen=True)
class RBSummary:
    """Binned relative belief ratios of posterior vs prior distances."""

    grid: np.ndarray
    bin_mass: np.ndarray
    rb_bins: np.ndarray
    rb_at_zero: float
    strength: float
    warnings: tuple = ()


def rb_summary(prior_distances, posterior_distances, M: int, i0: int = 1) -> RBSummary:
    """Algorithmic core shared by run_check and the simulation harness.

    Bins are right-closed intervals (grid[i], grid[i+1]] so each holds
    exactly 1/M of the prior sample; the top bin absorbs posterior draws
    beyond the prior maximum. Strength sums the posterior mass of bins at
    or past the cutoff whose ratio does not exceed rb_at_zero, plus the
    evidence region itself when rb_at_zero favors the model.
    """
    grid = prior_quantile_grid(prior_distances, M)
    post = np.asarray(posterior_distances, dtype=float)
    if post.size == 0:
        raise ConfigError("posterior distance sample is empty")
    if not isinstance(i0, (int, np.integer)) or not 1 <= i0 < M:
        raise ConfigError(f"i0 must satisfy 1 <= i0 < M={M}, got {i0!r}")
    warnings = []
    if np.unique(grid).size < grid.size:
        warnings.append("prior quantile grid has tied edges; binned ratios are unstable")
    idx = np.searchsorted(grid[1:M], post, side="left")
    bin_mass = np.bincount(idx, minlength=M) / post.size
    rb_bins = M * bin_mass
    evidence_mass = float(np.mean(post <= grid[i0]))
    rb_at_zero = evidence_mass / (i0 / M)
    qualifies = (np.arange(M) >= i0) & (rb_bins <= rb_at_zero)
    strength = float(bin_mass[qualifies].sum())
    if rb_at_zero > 1.0:
        strength += evidence_mass
    bin_mass.flags.writeable = False
    rb_bins.flags.writeable = False
    return RBSummary(grid, bin_mass, rb_bins, rb_at_zero, strength, tuple(warnings))


@dataclass(frozen=True, eq=False)
class RBReport:
    """Everything one check produced, including the raw distance draws."""

    family: str
    theta: tuple
    a: float
    N: int
    r1: int
    r2: int
    M: int
    i0: int
    d_quantiles: np.ndarray
    rb_bins: np.ndarray
    rb_at_zero: float
    strength: float
    warnings: tuple = ()
    prior_distances: np.ndarray | None = field(default=None, repr=False)
    posterior_distances: np.ndarray | None = field(default=None, repr=False)

    @property
    def p0(self) -> float:
        return self.i0 / self.M

    def to_json_dict(self) -> dict:
        return {
            "family": self.family,
            "theta": [float(t) for t in self.theta],
            "a": float(self.a),
            "N": int(self.N),
            "r1": int(self.r1),
            "r2": int(self.r2),
            "M": int(self.M),
            "p0": self.p0,
            "d_quantiles": [float(v) for v in self.d_quantiles],
            "rb_bins": [float(v) for v in self.rb_bins],
            "rb_at_zero": float(self.rb_at_zero),
            "strength": float(self.strength),
            "warnings": list(self.warnings),
        }

    def to_json(self, indent: int = 2) -> str:
        return json.dumps(self.to_json_dict(), indent=indent)

    @classmethod
    def from_json_dict(cls, d: dict) -> "RBReport":
        i0 = round(d["p0"] * d["M"])
        return cls(
            family=d["family"],
            theta=tuple(d["theta"]),
            a=d["a"],
            N=d["N"],
            r1=d["r1"],
            r2=d["r2"],
            M=d["M"],
            i0=i0,
            d_quantiles=np.asarray(d["d_quantiles"], dtype=float),
            rb_bins=np.asarray(d["rb_bins"], dtype=float),
            rb_at_zero=d["rb_at_zero"],
            strength=d["strength"],
            warnings=tuple(d["warnings"]),
        )


def sample_distances(
    params: DpParams,
    target: ContinuousDistribution,
    r: int,
    stream: RngStream,
    phase: str,
) -> np.ndarray:
    """r independent draws of the distance, one child stream per draw so
    any single replication can be regenerated in isolation."""
    out = np.empty(r)
    for j in range(r):
        rng = stream.child(f"{phase}/{j}").generator()
        out[j] = cvm_discrete(sample_dp(params, rng), target)
    out.flags.writeable = False
    return out


def run_check(
    data,
    family,
    cfg: CheckConfig | None = None,
    base_override: ContinuousDistribution | None = None,
) -> RBReport:
    """Fit the family, then contrast prior and posterior distance draws.

    The Dirichlet base is the fitted model unless base_override supplies
    a different centering (that is the prior-data-conflict experiment);
    distances are always measured against the base, since the check asks
    whether the data-updated process still resembles it.
    """
    cfg = cfg if cfg is not None else CheckConfig()
    model = fit(family, data)
    x = np.sort(np.asarray(data, dtype=float))
    base = base_override if base_override is not None else model.dist
    warnings = []
    if cfg.a > 0.25 * x.size:
        warnings.append(
            f"a={cfg.a:g} exceeds n/4={0.25 * x.size:g}; the prior may swamp the data"
        )
    prior = DpParams(cfg.a, ContinuousBase(base), cfg.N)
    posterior = posterior_params(prior, x)
    root = RngStream(cfg.seed)
    prior_d = sample_distances(prior, base, cfg.r1, root, "prior")
    post_d = sample_distances(posterior, base, cfg.r2, root, "posterior")
    summary = rb_summary(prior_d, post_d, cfg.M, cfg.i0)
    return RBReport(
        family=model.family.tag,
        theta=model.theta,
        a=float(cfg.a),
        N=cfg.N,
        r1=cfg.r1,
        r2=cfg.r2,
        M=cfg.M,
        i0=cfg.i0,
        d_quantiles=summary.grid,
        rb_bins=summary.rb_bins,
        rb_at_zero=summary.rb_at_zero,
        strength=summary.strength,
        warnings=tuple(warnings) + summary.warnings,
        prior_distances=prior_d,
        posterior_distances=post_d,
    )
