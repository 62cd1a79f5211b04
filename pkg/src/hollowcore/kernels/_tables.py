"""Shared numeric tables for both kernel backends.

Hard-coded so the jitted and the vectorized implementations are guaranteed
to agree bit-for-bit on their inputs.
"""

import math

import numpy as np

SQRT_PI = math.sqrt(math.pi)

# --- scaled complementary error function -----------------------------------
#
# erfcx(x) = exp(x^2) erfc(x) on x >= 0 is evaluated in two branches:
#
#   x <= 5 : Chebyshev-type rational fit in t = K/(K + x) (Shepherd &
#            Laframboise style; the classic double-polynomial with
#            K = 3.97886080735226).  Measured relative error < 3e-15 on
#            [0, 6] against 40-digit references.
#   x > 5  : Laplace continued fraction
#            erfcx(x) = 1/sqrt(pi) / (x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))
#            evaluated backward with ERFCX_CF_TERMS terms; 16 terms already
#            reach 1e-14 at x = 5 and the truncation error falls rapidly
#            with x.
#
# Negative arguments use erfcx(-x) = 2 exp(x^2) - erfcx(x), which overflows
# to +inf (correctly) once x^2 > 709.

ERFCX_K = 3.97886080735226
ERFCX_SWITCH = 5.0
ERFCX_CF_TERMS = 20

ERFCX_P1 = np.array([
    0.00127109764952614092,
    1.19314022838340944e-4,
    -0.003963850973605135,
    -8.70779635317295828e-4,
    0.00773672528313526668,
    0.00383335126264887303,
    -0.0127223813782122755,
    -0.0133823644533460069,
    0.0161315329733252248,
    0.0390976845588484035,
    0.00249367200053503304,
])

ERFCX_P2 = np.array([
    -0.0838864557023001992,
    -0.119463959964325415,
    0.0166207924969367356,
    0.357524274449531043,
    0.805276408752910567,
    1.18902982909273333,
    1.37040217682338167,
    1.31314653831023098,
    1.07925515155856677,
    0.774368199119538609,
    0.490165080585318424,
    0.275374741597376782,
])

# --- reduced interaction kernel ---------------------------------------------
#
# g(zeta) = 2|zeta| - sqrt(pi) (1 + 2 zeta^2) erfcx(|zeta|)
#
# The direct form loses precision at large |zeta| (two ~2|zeta| terms cancel
# down to ~|zeta|^-3), so beyond POTENTIAL_ASYMPTOTIC_SWITCH the evaluation
# uses the asymptotic series
#
# g(zeta) = -zeta^-3 [1 - 3 zeta^-2 + (45/4) zeta^-4 - (105/2) zeta^-6 + ...]
#
# with coefficients k (2k-1)!!/2^(k-1).  Eight terms keep the seam mismatch
# near the switch below ~1e-12 relative.

POTENTIAL_ASYMPTOTIC_SWITCH = 14.0
POTENTIAL_ASYMPTOTIC_COEFFS = np.array([
    1.0,            # 1*(1)!!/2^0
    -3.0,           # 2*(3)!!/2^1
    11.25,          # 3*(5)!!/2^2
    -52.5,          # 4*(7)!!/2^3
    295.3125,       # 5*(9)!!/2^4
    -1948.59375,    # 6*(11)!!/2^5
    14780.9765625,  # 7*(13)!!/2^6
    -126689.0625,   # 8*(15)!!/2^7
])

# --- Gauss-Kronrod 7/15 pair -------------------------------------------------
# Standard QUADPACK dqk15 abscissae/weights on [-1, 1].

GK_NODES = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])

GK_WEIGHTS_K = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])

# 7-point Gauss weights, attached to GK_NODES[1], [3], [5], [7].
GK_WEIGHTS_G = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

# Full 15-point node/weight tables (both signs), ascending in the node, plus
# the 7-point Gauss weights scattered onto the matching Kronrod positions
# (zero on Kronrod-only nodes), for vectorized evaluation.
GK15_X = np.concatenate([-GK_NODES[:7], GK_NODES[7:], GK_NODES[6::-1]])
GK15_WK = np.concatenate([GK_WEIGHTS_K[:7], GK_WEIGHTS_K[7:], GK_WEIGHTS_K[6::-1]])

GK15_WG = np.zeros(15)
for _k, _node in ((0, GK_NODES[1]), (1, GK_NODES[3]), (2, GK_NODES[5])):
    for _s in (-1.0, 1.0):
        GK15_WG[int(np.argmin(np.abs(GK15_X - _s * _node)))] = GK_WEIGHTS_G[_k]
GK15_WG[int(np.argmin(np.abs(GK15_X)))] = GK_WEIGHTS_G[3]

# Pre-split points for the interaction-kernel windows: the kernel has a
# slope discontinuity at 0 and is sharply peaked on |zeta| < ~8; windows are
# cut there before adaptive bisection so the peak cannot be stepped over.
WINDOW_SPLITS = np.array([-8.0, 0.0, 8.0])

DEFAULT_MAX_SEGMENTS = 4096
