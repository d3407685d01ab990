"""Univariate robust statistics: sample median, MAD, empirical quantile."""

import numpy as np

from .errors import DomainError

#: Phi^{-1}(3/4); MAD / this constant is a consistent scale estimate under
#: normality.
STANDARD_NORMAL_QUARTILE = 0.6744897501960817


def _check(z) -> np.ndarray:
    z = np.asarray(z, dtype=np.float64)
    if z.ndim != 1 or z.size == 0:
        raise DomainError("expected a non-empty 1-d array")
    if not np.all(np.isfinite(z)):
        raise DomainError("non-finite values are not allowed")
    return z


def sample_median(z) -> float:
    """Median via order statistics: odd n -> middle value, even n -> midpoint."""
    z = _check(z)
    s = np.sort(z)
    n = s.size
    if n % 2:
        return float(s[(n - 1) // 2])
    return float(0.5 * (s[n // 2 - 1] + s[n // 2]))


def sample_mad(z) -> float:
    """Median absolute deviation about the sample median (unscaled)."""
    z = _check(z)
    return sample_median(np.abs(z - sample_median(z)))


def empirical_quantile(z, u: float) -> float:
    """Lower empirical u-quantile: the k-th order statistic, k = max(1, ceil(u n)).

    u must lie in [0, 1); u = 0 gives the minimum.
    """
    z = _check(z)
    if not 0.0 <= u < 1.0:
        raise DomainError(f"quantile level must be in [0, 1), got {u}")
    n = z.size
    k = max(1, int(np.ceil(u * n)))
    return float(np.sort(z)[k - 1])
