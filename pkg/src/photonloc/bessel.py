"""Spherical Bessel functions j_l by recurrence.

The upward recurrence j_{l+1} = (2l+1)/x j_l - j_{l-1} is numerically stable
for x >= l but loses accuracy catastrophically for x < l, where j_l is the
minimal solution. There the values are generated by a downward (Miller)
sweep from a padded starting order and normalized against j_0; a short power
series covers the region near x = 0 where the downward sweep would overflow.
"""

from __future__ import annotations

import numpy as np

_SERIES_CUT = 0.5
_SERIES_TERMS = 12
_MILLER_PAD = 24
_RENORM = 1e250


def _series(lmax: int, x: np.ndarray) -> np.ndarray:
    """Power series j_l(x) = sum_m (-1)^m x^(2m+l) / (2^m m! (2l+2m+1)!!), x small."""
    out = np.empty((lmax + 1,) + x.shape)
    x2 = x * x
    for l in range(lmax + 1):
        # leading coefficient 1/(2l+1)!!
        dfact = 1.0
        for i in range(3, 2 * l + 2, 2):
            dfact *= i
        term = np.ones_like(x) / dfact
        total = term.copy()
        for m in range(1, _SERIES_TERMS):
            term = term * (-x2 / 2.0) / (m * (2 * l + 2 * m + 1))
            total += term
        out[l] = total * x**l
    return out


def _upward(lmax: int, x: np.ndarray) -> np.ndarray:
    out = np.empty((lmax + 1,) + x.shape)
    with np.errstate(invalid="ignore", divide="ignore"):
        out[0] = np.sin(x) / x
        if lmax >= 1:
            out[1] = np.sin(x) / (x * x) - np.cos(x) / x
        for l in range(1, lmax):
            out[l + 1] = (2 * l + 1) / x * out[l] - out[l - 1]
    return out


def _downward(lmax: int, x: np.ndarray) -> np.ndarray:
    start = lmax + _MILLER_PAD
    fp = np.zeros_like(x)  # f_{l+1}
    fc = np.full_like(x, 1e-30)  # f_l at l = start
    out = np.empty((lmax + 1,) + x.shape)
    with np.errstate(invalid="ignore", divide="ignore", over="ignore"):
        for l in range(start, 0, -1):
            fm = (2 * l + 1) / x * fc - fp
            fp, fc = fc, fm
            # rescale before the growth toward l=0 can overflow
            big = np.abs(fc) > _RENORM
            if np.any(big):
                fc = np.where(big, fc / _RENORM, fc)
                fp = np.where(big, fp / _RENORM, fp)
                if l <= lmax:
                    out[l : lmax + 1] = np.where(big, out[l : lmax + 1] / _RENORM, out[l : lmax + 1])
            if l - 1 <= lmax:
                out[l - 1] = fc
        scale = np.where(x != 0.0, np.sin(x) / np.where(x != 0.0, x, 1.0), 1.0) / np.where(
            out[0] != 0.0, out[0], 1.0
        )
    return out * scale


def spherical_jn_sequence(lmax: int, x) -> np.ndarray:
    """j_0(x) .. j_lmax(x) for scalar or array x >= 0.

    Returns an array of shape ``(lmax + 1,) + x.shape``.
    """
    if lmax != int(lmax) or lmax < 0:
        raise ValueError(f"order must be a non-negative integer, got {lmax}")
    lmax = int(lmax)
    x = np.asarray(x, dtype=float)
    scalar_input = x.ndim == 0
    x = np.atleast_1d(x)
    if np.any(x < 0):
        raise ValueError("arguments must be non-negative")

    out = np.empty((lmax + 1,) + x.shape)
    small = x < _SERIES_CUT
    # upward is stable once the argument exceeds the largest order needed
    up = ~small & (x >= max(lmax, 1))
    down = ~small & ~up

    if np.any(small):
        out[:, small] = _series(lmax, x[small])
    if np.any(up):
        out[:, up] = _upward(lmax, x[up])
    if np.any(down):
        out[:, down] = _downward(lmax, x[down])
    return out[:, 0] if scalar_input else out
