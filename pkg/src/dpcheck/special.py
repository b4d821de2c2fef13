"""Special-function helpers for the finite-series Dirichlet process weights."""

from __future__ import annotations

import numpy as np
import scipy.special as sc

from .errors import DomainError


def gamma_co_quantile(shape: float, p):
    """The (1-p)-quantile of the gamma(shape, 1) distribution.

    Returns the x >= 0 whose upper tail mass equals ``p``, i.e. the inverse of
    the survival function, evaluated elementwise over ``p``. The result is
    monotone decreasing in ``p``.

    The unnormalized series weights use shapes as small as 1e-3, where the
    true co-quantile is subnormal over most of (0, 1). When the direct
    inverse underflows to zero we fall back to the small-x expansion of the
    lower regularized gamma function, P(s, x) ~ x^s / Gamma(s+1), solved in
    log space: x = exp((log(1-p) + lgamma(s+1)) / s). Values whose true
    magnitude lies below the subnormal range come back as 0.0, never NaN;
    the series normalization tolerates exact zeros.
    """
    if not np.isscalar(shape) or not shape > 0:
        raise DomainError(f"shape must be a positive real, got {shape!r}")
    p_arr = np.asarray(p, dtype=float)
    if p_arr.size == 0 or np.any(p_arr <= 0.0) or np.any(p_arr >= 1.0):
        raise DomainError("p must lie strictly inside (0, 1)")

    x = sc.gammainccinv(shape, p_arr)
    underflow = x == 0.0
    if np.any(underflow):
        p_u = p_arr[underflow] if p_arr.ndim else p_arr
        with np.errstate(under="ignore"):
            fallback = np.exp((np.log1p(-p_u) + sc.gammaln(shape + 1.0)) / shape)
        if p_arr.ndim:
            x[underflow] = fallback
        else:
            x = fallback
    if np.any(np.isnan(x)):
        raise DomainError(f"gamma co-quantile produced NaN for shape={shape}")
    return x if p_arr.ndim else float(x)
