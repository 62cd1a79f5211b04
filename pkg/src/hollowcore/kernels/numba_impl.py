"""Jitted kernel backend (numba).

Scalar/loop formulations of the same four entry points as ``numpy_impl``;
this is the default backend.  The jitted cores work on contiguous float64
arrays; thin Python wrappers provide the scalar/array-flexible API surface.
"""

from __future__ import annotations

import numpy as np
from numba import njit

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

NAME = "numba"


@njit(cache=True)
def _erfcx_scalar(x: float) -> float:
    ax = abs(x)
    if ax <= ERFCX_SWITCH:
        t = ERFCX_K / (ax + ERFCX_K)
        u = t - 0.5
        y = ERFCX_P1[0]
        for i in range(1, ERFCX_P1.shape[0]):
            y = y * u + ERFCX_P1[i]
        for i in range(ERFCX_P2.shape[0]):
            y = y * u + ERFCX_P2[i]
        v = y * t
    else:
        f = 0.0
        for n in range(ERFCX_CF_TERMS, 0, -1):
            f = (0.5 * n) / (ax + f)
        v = 1.0 / (SQRT_PI * (ax + f))
    if x >= 0.0:
        return v
    x2 = x * x
    if x2 > 709.0:
        return np.inf
    return 2.0 * np.exp(x2) - v


@njit(cache=True)
def _g_scalar(zeta: float) -> float:
    az = abs(zeta)
    if az < POTENTIAL_ASYMPTOTIC_SWITCH:
        return 2.0 * az - SQRT_PI * (1.0 + 2.0 * az * az) * _erfcx_scalar(az)
    r = 1.0 / (az * az)
    s = POTENTIAL_ASYMPTOTIC_COEFFS[POTENTIAL_ASYMPTOTIC_COEFFS.shape[0] - 1]
    for i in range(POTENTIAL_ASYMPTOTIC_COEFFS.shape[0] - 2, -1, -1):
        s = s * r + POTENTIAL_ASYMPTOTIC_COEFFS[i]
    return -s / (az * az * az)


@njit(cache=True)
def _erfcx_array(x):
    out = np.empty_like(x)
    for i in range(x.shape[0]):
        out[i] = _erfcx_scalar(x[i])
    return out


@njit(cache=True)
def _potential_array(zeta):
    out = np.empty_like(zeta)
    for i in range(zeta.shape[0]):
        out[i] = _g_scalar(zeta[i])
    return out


@njit(cache=True)
def _antideriv_array(zeta):
    out = np.empty_like(zeta)
    for i in range(zeta.shape[0]):
        out[i] = -SQRT_PI * zeta[i] * _erfcx_scalar(abs(zeta[i]))
    return out


@njit(cache=True)
def _gk15_scalar(a: float, b: float):
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    k15 = 0.0
    g7 = 0.0
    for j in range(15):
        f = _g_scalar(mid + half * GK15_X[j])
        k15 += GK15_WK[j] * f
        g7 += GK15_WG[j] * f
    k15 *= half
    g7 *= half
    return k15, abs(k15 - g7)


@njit(cache=True)
def _integrate_window(lo: float, hi: float, rel_tol: float, abs_tol: float,
                      max_segments: int):
    if lo == hi:
        return 0.0, 0.0, 0
    sign = 1.0
    a0, b0 = lo, hi
    if a0 > b0:
        a0, b0 = b0, a0
        sign = -1.0
    wlen = b0 - a0

    cuts = np.empty(WINDOW_SPLITS.shape[0] + 2)
    cuts[0] = a0
    ncuts = 1
    for k in range(WINDOW_SPLITS.shape[0]):
        c = WINDOW_SPLITS[k]
        if a0 < c < b0:
            cuts[ncuts] = c
            ncuts += 1
    cuts[ncuts] = b0
    ncuts += 1

    cap = max_segments + 8
    st_a = np.empty(cap)
    st_b = np.empty(cap)
    st_v = np.empty(cap)
    st_e = np.empty(cap)
    top = 0
    total = 0.0
    for i in range(ncuts - 1):
        v, e = _gk15_scalar(cuts[i], cuts[i + 1])
        st_a[top] = cuts[i]
        st_b[top] = cuts[i + 1]
        st_v[top] = v
        st_e[top] = e
        top += 1
        total += v
    nseg = top

    acc_v = 0.0
    acc_e = 0.0
    status = 0
    while top > 0:
        top -= 1
        a = st_a[top]
        b = st_b[top]
        v = st_v[top]
        e = st_e[top]
        budget = max(abs_tol, rel_tol * abs(total)) * ((b - a) / wlen)
        tiny = (b - a) <= 1e-14 * max(1.0, abs(a) + abs(b))
        if e <= budget or tiny or nseg > max_segments:
            if e > budget and not tiny:
                status = 1
            acc_v += v
            acc_e += e
        else:
            m = 0.5 * (a + b)
            v1, e1 = _gk15_scalar(a, m)
            v2, e2 = _gk15_scalar(m, b)
            total += v1 + v2 - v
            st_a[top] = a
            st_b[top] = m
            st_v[top] = v1
            st_e[top] = e1
            top += 1
            st_a[top] = m
            st_b[top] = b
            st_v[top] = v2
            st_e[top] = e2
            top += 1
            nseg += 2
    return sign * acc_v, acc_e, status


@njit(cache=True)
def _integrate_windows_impl(lo, hi, rel_tol: float, abs_tol: float,
                            max_segments: int):
    n = lo.shape[0]
    vals = np.zeros(n)
    errs = np.zeros(n)
    status = np.zeros(n, dtype=np.int64)
    for i in range(n):
        v, e, s = _integrate_window(lo[i], hi[i], rel_tol, abs_tol,
                                    max_segments)
        vals[i] = v
        errs[i] = e
        status[i] = s
    return vals, errs, status


def _as1d(x):
    arr = np.ascontiguousarray(np.atleast_1d(np.asarray(x, dtype=np.float64)))
    return arr.ravel(), np.asarray(x).ndim == 0, np.asarray(x).shape


def erfcx(x):
    """exp(x^2) erfc(x), stable for all real x (no overflow for x >= 0)."""
    flat, scalar, shape = _as1d(x)
    out = _erfcx_array(flat)
    return out[0] if scalar else out.reshape(shape)


def potential_reduced(zeta):
    """Reduced 1D interaction kernel g(zeta); negative, even, peak -sqrt(pi)."""
    flat, scalar, shape = _as1d(zeta)
    out = _potential_array(flat)
    return out[0] if scalar else out.reshape(shape)


def potential_antideriv_reduced(zeta):
    """G(zeta) = integral of g from 0 to zeta = -sqrt(pi) zeta erfcx(|zeta|)."""
    flat, scalar, shape = _as1d(zeta)
    out = _antideriv_array(flat)
    return out[0] if scalar else out.reshape(shape)


def integrate_windows(lo, hi, rel_tol: float = 1e-8, abs_tol: float = 0.0,
                      max_segments: int = DEFAULT_MAX_SEGMENTS):
    """Adaptive Gauss-Kronrod integrals of the reduced kernel over windows
    [lo_i, hi_i]; see ``numpy_impl.integrate_windows`` for the contract."""
    lo_flat, lo_scalar, _ = _as1d(lo)
    hi_flat, _, _ = _as1d(hi)
    if lo_flat.shape != hi_flat.shape:
        raise ValueError("lo and hi must have the same shape")
    return _integrate_windows_impl(lo_flat, hi_flat, float(rel_tol),
                                   float(abs_tol), int(max_segments))
