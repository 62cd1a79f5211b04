"""Pure-numpy kernel backend.

Vectorized counterparts of the jitted kernels in ``numba_impl``; selected by
setting ``HOLLOWCORE_BACKEND=numpy`` (and used automatically when numba is
not importable).  Both backends implement the same four entry points:

``erfcx``                        scaled complementary error function
``potential_reduced``            g(zeta) = 2|z| - sqrt(pi)(1+2z^2) erfcx(|z|)
``potential_antideriv_reduced``  G(zeta) = -sqrt(pi) zeta erfcx(|zeta|)
``integrate_windows``            adaptive Gauss-Kronrod integrals of g
"""

from __future__ import annotations

import numpy as np

from ._tables import (
    DEFAULT_MAX_SEGMENTS,
    ERFCX_CF_TERMS,
    ERFCX_K,
    ERFCX_P1,
    ERFCX_P2,
    ERFCX_SWITCH,
    GK15_WG,
    GK15_WK,
    GK15_X,
    POTENTIAL_ASYMPTOTIC_COEFFS,
    POTENTIAL_ASYMPTOTIC_SWITCH,
    SQRT_PI,
    WINDOW_SPLITS,
)

NAME = "numpy"


def _erfcx_nonneg(ax: np.ndarray) -> np.ndarray:
    """erfcx on ax >= 0 (rational fit below the switch, CF above)."""
    out = np.empty_like(ax)

    small = ax <= ERFCX_SWITCH
    if np.any(small):
        t = ERFCX_K / (ax[small] + ERFCX_K)
        u = t - 0.5
        y = ERFCX_P1[0]
        for c in ERFCX_P1[1:]:
            y = y * u + c
        for c in ERFCX_P2:
            y = y * u + c
        out[small] = y * t

    large = ~small
    if np.any(large):
        x = ax[large]
        f = np.zeros_like(x)
        for n in range(ERFCX_CF_TERMS, 0, -1):
            f = (0.5 * n) / (x + f)
        out[large] = 1.0 / (SQRT_PI * (x + f))

    return out


def erfcx(x) -> np.ndarray:
    """exp(x^2) erfc(x), stable for all real x (no overflow for x >= 0)."""
    x = np.asarray(x, dtype=np.float64)
    scalar = x.ndim == 0
    x = np.atleast_1d(x)
    out = _erfcx_nonneg(np.abs(x))
    neg = x < 0.0
    if np.any(neg):
        with np.errstate(over="ignore"):
            out[neg] = 2.0 * np.exp(x[neg] * x[neg]) - out[neg]
    return out[0] if scalar else out


def potential_reduced(zeta) -> np.ndarray:
    """Reduced 1D interaction kernel g(zeta); negative, even, peak -sqrt(pi).

    Direct erfcx form for |zeta| below the asymptotic switch; the large-|zeta|
    tail -zeta^-3 (1 - 3/zeta^2 + ...) is summed from the series to avoid the
    catastrophic cancellation of the two ~2|zeta| terms.
    """
    zeta = np.asarray(zeta, dtype=np.float64)
    scalar = zeta.ndim == 0
    az = np.abs(np.atleast_1d(zeta))
    out = np.empty_like(az)

    direct = az < POTENTIAL_ASYMPTOTIC_SWITCH
    if np.any(direct):
        a = az[direct]
        out[direct] = 2.0 * a - SQRT_PI * (1.0 + 2.0 * a * a) * _erfcx_nonneg(a)

    tail = ~direct
    if np.any(tail):
        a = az[tail]
        r = 1.0 / (a * a)
        s = np.full_like(a, POTENTIAL_ASYMPTOTIC_COEFFS[-1])
        for c in POTENTIAL_ASYMPTOTIC_COEFFS[-2::-1]:
            s = s * r + c
        out[tail] = -s / (a * a * a)

    return out[0] if scalar else out


def potential_antideriv_reduced(zeta) -> np.ndarray:
    """G(zeta) = integral of g from 0 to zeta = -sqrt(pi) zeta erfcx(|zeta|).

    Odd in zeta; G(+inf) = -1, so the full-line integral of g is -2.
    """
    zeta = np.asarray(zeta, dtype=np.float64)
    scalar = zeta.ndim == 0
    z = np.atleast_1d(zeta)
    out = -SQRT_PI * z * _erfcx_nonneg(np.abs(z))
    return out[0] if scalar else out


def _gk15(a: np.ndarray, b: np.ndarray):
    """Vectorized 15-point Kronrod / 7-point Gauss pair on segments [a, b].

    Returns (kronrod value, |kronrod - gauss| error estimate) per segment.
    """
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    x = mid[:, None] + half[:, None] * GK15_X[None, :]
    fx = potential_reduced(x.ravel()).reshape(x.shape)
    k15 = half * (fx @ GK15_WK)
    g7 = half * (fx @ GK15_WG)
    return k15, np.abs(k15 - g7)


def _initial_segments(lo: np.ndarray, hi: np.ndarray):
    """Cut each window at the kernel pre-split points; returns flat segment
    arrays (window id, a, b)."""
    ids, seg_a, seg_b = [], [], []
    for i in range(lo.shape[0]):
        a, b = lo[i], hi[i]
        if a == b:
            continue
        cuts = [a] + [c for c in WINDOW_SPLITS if a < c < b] + [b]
        for j in range(len(cuts) - 1):
            ids.append(i)
            seg_a.append(cuts[j])
            seg_b.append(cuts[j + 1])
    return (np.asarray(ids, dtype=np.int64),
            np.asarray(seg_a, dtype=np.float64),
            np.asarray(seg_b, dtype=np.float64))


def integrate_windows(lo, hi, rel_tol: float = 1e-8, abs_tol: float = 0.0,
                      max_segments: int = DEFAULT_MAX_SEGMENTS):
    """Adaptive integrals of the reduced kernel over windows [lo_i, hi_i].

    Globally adaptive bisection on top of the Gauss-Kronrod 7/15 pair, with
    a per-segment error budget proportional to segment length.  Windows with
    lo > hi integrate with the usual orientation sign.

    Returns ``(values, error_estimates, status)`` where status is 0 on
    convergence and 1 where the segment budget was exhausted before the
    tolerance was met (the best estimate is still returned).
    """
    lo = np.atleast_1d(np.asarray(lo, dtype=np.float64))
    hi = np.atleast_1d(np.asarray(hi, dtype=np.float64))
    if lo.shape != hi.shape:
        raise ValueError("lo and hi must have the same shape")
    n = lo.shape[0]

    sign = np.where(hi >= lo, 1.0, -1.0)
    wlo = np.minimum(lo, hi)
    whi = np.maximum(lo, hi)
    wlen = whi - wlo

    acc_v = np.zeros(n)
    acc_e = np.zeros(n)
    status = np.zeros(n, dtype=np.int64)
    nseg = np.zeros(n, dtype=np.int64)

    ids, seg_a, seg_b = _initial_segments(wlo, whi)
    if ids.size == 0:
        return sign * acc_v, acc_e, status

    seg_v, seg_e = _gk15(seg_a, seg_b)
    np.add.at(nseg, ids, 1)

    while ids.size:
        total = acc_v.copy()
        np.add.at(total, ids, seg_v)
        budget = np.maximum(abs_tol, rel_tol * np.abs(total))

        frac = (seg_b - seg_a) / wlen[ids]
        tiny = (seg_b - seg_a) <= 1e-14 * np.maximum(
            1.0, np.abs(seg_a) + np.abs(seg_b))
        done = (seg_e <= budget[ids] * frac) | tiny

        over = nseg > max_segments
        done |= over[ids]
        if np.any(over[ids]):
            status[ids[over[ids]]] = 1

        if np.any(done):
            np.add.at(acc_v, ids[done], seg_v[done])
            np.add.at(acc_e, ids[done], seg_e[done])

        keep = ~done
        ids, seg_a, seg_b = ids[keep], seg_a[keep], seg_b[keep]
        if ids.size == 0:
            break

        mid = 0.5 * (seg_a + seg_b)
        ids = np.concatenate([ids, ids])
        seg_a, seg_b = (np.concatenate([seg_a, mid]),
                        np.concatenate([mid, seg_b]))
        seg_v, seg_e = _gk15(seg_a, seg_b)
        np.add.at(nseg, ids[: ids.size // 2], 2)

    return sign * acc_v, acc_e, status
