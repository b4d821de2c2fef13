"""Univariate continuous distributions used as model targets, simulation
alternatives, and Dirichlet process base measures.

Each distribution exposes a vectorized cdf, an inverse cdf, and an exact
sampler driven by a caller-supplied generator. The text grammar accepted by
:func:`parse_distribution` covers every family, e.g. ``normal(0,1)``,
``t(3)``, ``cauchy(0,1)``, ``uniform(-1,1)``, ``exp(10)``, and
``mix(0.5,normal(-2,1),normal(2,1))``. Normal parameters are mean and
variance; the exponential parameter is its mean.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.special as sc
from scipy.optimize import brentq

from .errors import ConfigError, DomainError


def _check_p(p) -> np.ndarray:
    p_arr = np.asarray(p, dtype=float)
    if p_arr.size == 0 or np.any(p_arr <= 0.0) or np.any(p_arr >= 1.0):
        raise DomainError("probability must lie strictly inside (0, 1)")
    return p_arr


def _scalar_like(template, value):
    return float(value) if np.ndim(template) == 0 else value


class ContinuousDistribution:
    """Common vectorized interface; concrete families are frozen dataclasses."""

    def cdf(self, x):
        raise NotImplementedError

    def quantile(self, p):
        raise NotImplementedError

    def sample(self, size: int, rng: np.random.Generator) -> np.ndarray:
        raise NotImplementedError

    def support(self) -> tuple[float, float]:
        """Endpoints of the support, possibly infinite."""
        raise NotImplementedError

    def spec(self) -> str:
        """Grammar string that parses back to an equal distribution."""
        raise NotImplementedError


@dataclass(frozen=True)
class Normal(ContinuousDistribution):
    mean: float = 0.0
    var: float = 1.0

    def __post_init__(self):
        if not self.var > 0 or not math.isfinite(self.var) or not math.isfinite(self.mean):
            raise DomainError(f"normal requires finite mean and variance > 0, got {self}")

    @property
    def sd(self) -> float:
        return math.sqrt(self.var)

    def cdf(self, x):
        z = (np.asarray(x, dtype=float) - self.mean) / self.sd
        return _scalar_like(x, sc.ndtr(z))

    def quantile(self, p):
        p_arr = _check_p(p)
        return _scalar_like(p, self.mean + self.sd * sc.ndtri(p_arr))

    def sample(self, size, rng):
        return rng.normal(self.mean, self.sd, size)

    def support(self):
        return (-math.inf, math.inf)

    def spec(self):
        return f"normal({_fmt(self.mean)},{_fmt(self.var)})"


@dataclass(frozen=True)
class StudentT(ContinuousDistribution):
    """Standard central t; any real df > 0 via the incomplete beta function."""

    df: float

    def __post_init__(self):
        if not self.df > 0 or not math.isfinite(self.df):
            raise DomainError(f"t requires df > 0, got {self.df!r}")

    def cdf(self, x):
        return _scalar_like(x, sc.stdtr(self.df, np.asarray(x, dtype=float)))

    def quantile(self, p):
        p_arr = _check_p(p)
        return _scalar_like(p, sc.stdtrit(self.df, p_arr))

    def sample(self, size, rng):
        return rng.standard_t(self.df, size)

    def support(self):
        return (-math.inf, math.inf)

    def spec(self):
        return f"t({_fmt(self.df)})"


@dataclass(frozen=True)
class Cauchy(ContinuousDistribution):
    loc: float = 0.0
    scale: float = 1.0

    def __post_init__(self):
        if not self.scale > 0 or not math.isfinite(self.scale) or not math.isfinite(self.loc):
            raise DomainError(f"cauchy requires finite loc and scale > 0, got {self}")

    def cdf(self, x):
        z = (np.asarray(x, dtype=float) - self.loc) / self.scale
        return _scalar_like(x, 0.5 + np.arctan(z) / np.pi)

    def quantile(self, p):
        p_arr = _check_p(p)
        return _scalar_like(p, self.loc + self.scale * np.tan(np.pi * (p_arr - 0.5)))

    def sample(self, size, rng):
        return self.loc + self.scale * rng.standard_cauchy(size)

    def support(self):
        return (-math.inf, math.inf)

    def spec(self):
        return f"cauchy({_fmt(self.loc)},{_fmt(self.scale)})"


@dataclass(frozen=True)
class Uniform(ContinuousDistribution):
    lo: float = 0.0
    hi: float = 1.0

    def __post_init__(self):
        if not self.lo < self.hi or not math.isfinite(self.lo) or not math.isfinite(self.hi):
            raise DomainError(f"uniform requires finite lo < hi, got {self}")

    def cdf(self, x):
        with np.errstate(invalid="ignore"):
            v = np.clip((np.asarray(x, dtype=float) - self.lo) / (self.hi - self.lo), 0.0, 1.0)
        return _scalar_like(x, v)

    def quantile(self, p):
        p_arr = _check_p(p)
        return _scalar_like(p, self.lo + p_arr * (self.hi - self.lo))

    def sample(self, size, rng):
        return rng.uniform(self.lo, self.hi, size)

    def support(self):
        return (self.lo, self.hi)

    def spec(self):
        return f"uniform({_fmt(self.lo)},{_fmt(self.hi)})"


@dataclass(frozen=True)
class Exponential(ContinuousDistribution):
    """Exponential distribution parameterized by its mean."""

    mean: float = 1.0

    def __post_init__(self):
        if not self.mean > 0 or not math.isfinite(self.mean):
            raise DomainError(f"exponential requires mean > 0, got {self.mean!r}")

    def cdf(self, x):
        x_arr = np.asarray(x, dtype=float)
        with np.errstate(over="ignore", invalid="ignore"):
            v = np.where(x_arr > 0.0, -np.expm1(-x_arr / self.mean), 0.0)
        return _scalar_like(x, v)

    def quantile(self, p):
        p_arr = _check_p(p)
        return _scalar_like(p, -self.mean * np.log1p(-p_arr))

    def sample(self, size, rng):
        return rng.exponential(self.mean, size)

    def support(self):
        return (0.0, math.inf)

    def spec(self):
        return f"exp({_fmt(self.mean)})"


@dataclass(frozen=True)
class NormalMixture(ContinuousDistribution):
    """Two-component normal mixture with weight w on the first component."""

    w: float
    first: Normal
    second: Normal

    def __post_init__(self):
        if not 0.0 <= self.w <= 1.0:
            raise DomainError(f"mixture weight must lie in [0, 1], got {self.w!r}")
        if not isinstance(self.first, Normal) or not isinstance(self.second, Normal):
            raise DomainError("mixture components must be normal distributions")

    def cdf(self, x):
        v = self.w * self.first.cdf(np.asarray(x, dtype=float))
        v = v + (1.0 - self.w) * self.second.cdf(np.asarray(x, dtype=float))
        return _scalar_like(x, v)

    def quantile(self, p):
        p_arr = _check_p(p)

        def solve(pi: float) -> float:
            q1 = self.first.quantile(pi)
            q2 = self.second.quantile(pi)
            lo, hi = min(q1, q2), max(q1, q2)
            if lo == hi:
                return lo
            # cdf(lo) <= pi <= cdf(hi), so the bracket is always valid
            return brentq(lambda t: self.cdf(t) - pi, lo, hi, xtol=1e-13, rtol=8.9e-16)

        if p_arr.ndim == 0:
            return solve(float(p_arr))
        return np.array([solve(pi) for pi in p_arr.ravel()]).reshape(p_arr.shape)

    def sample(self, size, rng):
        # component indicator first, then the component draw
        pick_first = rng.random(size) < self.w
        out = self.second.sample(size, rng)
        n_first = int(np.count_nonzero(pick_first))
        out[pick_first] = self.first.sample(n_first, rng)
        return out

    def support(self):
        return (-math.inf, math.inf)

    def spec(self):
        return f"mix({_fmt(self.w)},{self.first.spec()},{self.second.spec()})"


def _fmt(value: float) -> str:
    if float(value).is_integer():
        return str(int(value))
    return repr(float(value))


def _split_args(body: str) -> list[str]:
    args, depth, start = [], 0, 0
    for i, ch in enumerate(body):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ConfigError(f"unbalanced parentheses in distribution spec {body!r}")
        elif ch == "," and depth == 0:
            args.append(body[start:i])
            start = i + 1
    if depth != 0:
        raise ConfigError(f"unbalanced parentheses in distribution spec {body!r}")
    args.append(body[start:])
    return [a.strip() for a in args]


def _number(token: str) -> float:
    try:
        return float(token)
    except ValueError:
        raise ConfigError(f"expected a number in distribution spec, got {token!r}") from None


def parse_distribution(text: str) -> ContinuousDistribution:
    """Parse a distribution spec string; raises ConfigError on bad syntax."""
    s = text.strip()
    open_at, close_at = s.find("("), s.rfind(")")
    if open_at <= 0 or close_at != len(s) - 1:
        raise ConfigError(f"distribution spec must look like name(args), got {text!r}")
    name = s[:open_at].strip().lower()
    args = _split_args(s[open_at + 1 : close_at])

    def need(k: int):
        if len(args) != k:
            raise ConfigError(f"{name} takes {k} argument(s), got {len(args)} in {text!r}")

    if name == "normal":
        need(2)
        return Normal(_number(args[0]), _number(args[1]))
    if name == "t":
        need(1)
        return StudentT(_number(args[0]))
    if name == "cauchy":
        need(2)
        return Cauchy(_number(args[0]), _number(args[1]))
    if name == "uniform":
        need(2)
        return Uniform(_number(args[0]), _number(args[1]))
    if name == "exp":
        need(1)
        return Exponential(_number(args[0]))
    if name == "mix":
        need(3)
        first = parse_distribution(args[1])
        second = parse_distribution(args[2])
        if not isinstance(first, Normal) or not isinstance(second, Normal):
            raise ConfigError(f"mix components must be normal(...), got {text!r}")
        return NormalMixture(_number(args[0]), first, second)
    raise ConfigError(f"unknown distribution family {name!r} in {text!r}")
