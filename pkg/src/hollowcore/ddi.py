"""Dipole-dipole interaction: Rydberg dipoles, the 3D potential, and the
effective 1D potential after transverse Gaussian averaging.

The 1D potential in reduced units is

    g(zeta) = 2|zeta| - sqrt(pi) (1 + 2 zeta^2) erfcx(|zeta|),
    Delta(z) = [2 C / (hbar (sqrt(2) w)^3)] * g(z / (sqrt(2) w)),

with C = p_1 p_2 / (4 pi eps0).  g is even, strictly negative, peaks at
g(0) = -sqrt(pi) and decays like -zeta^-3 (matching the on-axis 3D value
-2C/(hbar z^3) after undoing the reduced units).  Its antiderivative is
closed-form, G(zeta) = -sqrt(pi) zeta erfcx(|zeta|), so the full-line
integral of Delta is exactly -2C/(hbar w^2).  The derivation lives in
docs/physics_notes.md; ``transverse_average_oracle`` re-computes the same
quantity by direct quadrature of the 3D kernel and serves as ground truth
for all of the above.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np
from scipy.integrate import quad

from . import kernels
from .constants import CODATA, PhysicalConstants
from .errors import InvalidQuantumNumbers, QuadratureNonConvergence, ZeroSeparation

SQRT2 = math.sqrt(2.0)
SQRT_PI = math.sqrt(math.pi)


@dataclass(frozen=True)
class RydbergState:
    """A polarized Rydberg level carrying a permanent dipole moment.

    When ``dipole_moment`` is not given it is derived from the parabolic
    quantum numbers as (3/2) n q e a0.
    """

    principal_n: int
    parabolic_q: int
    magnetic_m: int = 0
    dipole_moment: Optional[float] = None   # [C m]
    constants: PhysicalConstants = CODATA

    def __post_init__(self):
        n, q, m = self.principal_n, self.parabolic_q, self.magnetic_m
        if n < 1:
            raise InvalidQuantumNumbers(f"principal n must be >= 1, got {n}")
        if not 0 <= q <= n - 1:
            raise InvalidQuantumNumbers(
                f"parabolic q must satisfy 0 <= q <= n-1, got q={q}, n={n}")
        if abs(m) >= n:
            raise InvalidQuantumNumbers(
                f"magnetic m must satisfy |m| < n, got m={m}, n={n}")
        if self.dipole_moment is None:
            object.__setattr__(self, "dipole_moment", rydberg_dipole(self))
        elif self.dipole_moment < 0:
            raise ValueError("explicit dipole moment must be >= 0")

    @classmethod
    def from_dipole(cls, dipole_moment: float,
                    constants: PhysicalConstants = CODATA) -> "RydbergState":
        """State specified directly by its dipole moment [C m]; quantum
        numbers are filled with a placeholder (n large enough to be valid)."""
        n = 1000
        return cls(principal_n=n, parabolic_q=0, magnetic_m=0,
                   dipole_moment=dipole_moment, constants=constants)


def rydberg_dipole(state: RydbergState) -> float:
    """Permanent dipole moment (3/2) n q e a0 of a parabolic Rydberg state."""
    c = state.constants
    return 1.5 * state.principal_n * state.parabolic_q * c.e_charge * c.a0


@dataclass(frozen=True)
class DdiCoupling:
    """Interaction coefficient C = p_l p_l' / (4 pi eps0) [J m^3]."""

    coefficient: float
    dipoles: Tuple[float, float]

    def __post_init__(self):
        if self.coefficient < 0:
            raise ValueError("coupling coefficient must be >= 0")

    @classmethod
    def from_dipoles(cls, p1: float, p2: float,
                     constants: PhysicalConstants = CODATA) -> "DdiCoupling":
        if p1 < 0 or p2 < 0:
            raise ValueError("dipole moments must be >= 0")
        return cls(coefficient=p1 * p2 / (4.0 * math.pi * constants.epsilon0),
                   dipoles=(p1, p2))

    @classmethod
    def from_states(cls, s1: RydbergState, s2: RydbergState) -> "DdiCoupling":
        return cls.from_dipoles(s1.dipole_moment, s2.dipole_moment,
                                s1.constants)


def potential_3d(coupling: DdiCoupling, separation: Sequence[float],
                 constants: PhysicalConstants = CODATA) -> float:
    """Free-space dipole-dipole frequency shift (C/hbar)(1-3cos^2)/r^3.

    The polar angle is measured from the z axis (the dipole orientation).
    Vanishing separation raises :class:`ZeroSeparation`: the bare kernel has
    a non-integrable contact singularity, which only the transversely
    averaged 1D potential regularizes.
    """
    r = np.asarray(separation, dtype=float)
    if r.shape != (3,):
        raise ValueError("separation must be a 3-vector")
    dist = float(np.linalg.norm(r))
    if dist == 0.0:
        raise ZeroSeparation("3D potential is singular at zero separation")
    cos2 = (r[2] / dist) ** 2
    return coupling.coefficient / constants.hbar * (1.0 - 3.0 * cos2) / dist**3


@dataclass(frozen=True)
class Potential1D:
    """Effective 1D potential for a coupling and an effective width w."""

    coupling: DdiCoupling
    effective_width: float
    constants: PhysicalConstants = CODATA

    def __post_init__(self):
        if self.effective_width <= 0:
            raise ValueError("effective width must be positive")

    @property
    def reduced_scale(self) -> float:
        """Prefactor 2C / (hbar (sqrt(2) w)^3) [rad/s]; the potential in
        reduced units is Delta / reduced_scale."""
        return (2.0 * self.coupling.coefficient
                / (self.constants.hbar * (SQRT2 * self.effective_width) ** 3))

    def zeta(self, z):
        """Reduced separation zeta = z / (sqrt(2) w)."""
        return np.asarray(z, dtype=float) / (SQRT2 * self.effective_width)

    def value(self, z):
        """Delta(z) in rad/s; finite everywhere including z = 0."""
        return self.reduced_scale * kernels.potential_reduced(self.zeta(z))

    def value_reduced(self, zeta):
        """g(zeta), the potential in units of ``reduced_scale``."""
        return kernels.potential_reduced(zeta)

    def integral(self) -> float:
        """Closed form of the full-line integral: -2C/(hbar w^2)."""
        return (-2.0 * self.coupling.coefficient
                / (self.constants.hbar * self.effective_width**2))

    def window_integral(self, z_lo: float, z_hi: float,
                        rel_tol: float = 1e-10) -> float:
        """Numerical integral of Delta over [z_lo, z_hi] (adaptive GK)."""
        vals, _, status = kernels.integrate_windows(
            self.zeta(z_lo), self.zeta(z_hi), rel_tol=rel_tol)
        if status[0] != 0:
            raise QuadratureNonConvergence(
                "window integral did not reach the requested tolerance")
        # d z = sqrt(2) w d zeta
        return float(vals[0]) * self.reduced_scale * SQRT2 * self.effective_width

    def integral_numeric(self, core_halfwidth_zeta: float = 50.0,
                         rel_tol: float = 1e-9,
                         tail_zeta: float = 2e4) -> float:
        """Full-line integral by quadrature: a core window plus the slowly
        decaying -zeta^-3 tails out to ``tail_zeta`` (beyond which the
        remainder is below 1e-8 relative)."""
        a = float(core_halfwidth_zeta)
        lo = np.array([-tail_zeta, -a, a])
        hi = np.array([-a, a, tail_zeta])
        vals, _, status = kernels.integrate_windows(lo, hi, rel_tol=rel_tol)
        if np.any(status != 0):
            raise QuadratureNonConvergence(
                "full-line integral did not reach the requested tolerance")
        return float(vals.sum()) * self.reduced_scale * SQRT2 * self.effective_width

    def fwhm_zeta(self) -> float:
        """Full width at half maximum of |g(zeta)|, found by bisection."""
        target = SQRT_PI / 2.0
        lo, hi = 0.0, 2.0
        f = lambda z: abs(float(kernels.potential_reduced(z))) - target
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            if f(mid) > 0:
                lo = mid
            else:
                hi = mid
            if hi - lo < 1e-13:
                break
        return lo + hi  # = 2 * half-width

    def curve(self, zeta_min: float, zeta_max: float, points: int):
        """(zeta, g(zeta)) table for dumping/plotting, reduced units."""
        z = np.linspace(zeta_min, zeta_max, points)
        return z, kernels.potential_reduced(z)


def transverse_average_oracle(coupling: DdiCoupling, effective_width: float,
                              z: float, tol: float = 1e-9,
                              constants: PhysicalConstants = CODATA) -> float:
    """Ground-truth effective 1D potential by direct numerical quadrature.

    The double transverse Gaussian average of the 3D kernel collapses by
    Gaussian convolution to a single radial integral over the relative
    transverse coordinate (variance doubled); after one integration by parts
    (see docs/physics_notes.md) it is absolutely convergent even at z = 0.
    In the dimensionless radial variable u = sqrt(beta) q:

        Delta(z) = -(2 sqrt(beta) C / (hbar w^2)) * Int_0^inf  e^(-u^2)
                   * u^3 / (u^2 + beta z^2)^(3/2) du,   beta = 1/(2 w^2).

    Everything here is elementary quadrature of exp/power factors -- no
    erfcx involved -- so it independently validates ``Potential1D.value``.
    """
    if not 1e-12 < tol < 1e-2:
        raise ValueError("tol must lie in (1e-12, 1e-2)")
    if effective_width <= 0:
        raise ValueError("effective width must be positive")
    beta = 1.0 / (2.0 * effective_width**2)
    # substitute u = sqrt(beta) q so the integrand peaks at u ~ 1 regardless
    # of the physical scale; x = beta z^2 is the squared reduced separation
    x = beta * float(z) ** 2

    def integrand(u):
        u2 = u * u
        return math.exp(-u2) * u2 * u / (u2 + x) ** 1.5

    val, abserr = quad(integrand, 0.0, np.inf, epsabs=0.0, epsrel=tol * 0.1,
                       limit=400)
    if abs(val) > 0 and abserr / abs(val) > tol:
        raise QuadratureNonConvergence(
            f"oracle quadrature error {abserr:.2e} exceeds tol for z={z}")
    # Delta = C/(2 hbar w^2) * J,  J = -4 beta^(1/2) * val
    return (-coupling.coefficient / (constants.hbar * effective_width**2)
            * 2.0 * math.sqrt(beta) * val)
