"""Solved polariton dynamics: pulse envelopes, the two-photon wavefunction
with its accumulated interaction phase, the closed-form uniform phase shift,
and the coherent-probe phase expectation used by the QND readout.

Counter-propagating pulses close their relative coordinate at v1 + v2, so
the time integral of the interaction along a trajectory reduces exactly to a
spatial window integral of the effective 1D potential:

    phi(z1, z2, t) = -(s4 / 2 v) * (C12 / hbar w^2)
                     * Int_{zeta(u - 2 v t)}^{zeta(u)} g(zeta') d zeta',

with u = z1 - z2, zeta(x) = x/(sqrt(2) w) and s4 the product of the two
matter fractions.  For a complete pass the window covers the whole kernel
and the phase approaches the uniform value C12 s4 / (hbar w^2 v).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable, Optional, Union

import numpy as np
from scipy.integrate import quad

from . import kernels
from .constants import CODATA, PhysicalConstants
from .ddi import DdiCoupling
from .errors import (
    EnvelopeNotNormalized,
    EnvelopeOutsideMedium,
    EnvelopeTooSharp,
    GridTooCoarse,
    PulseLeftMedium,
    QuadratureNonConvergence,
)
from .medium import ChannelPair

SQRT2 = math.sqrt(2.0)

SUPPORT_THRESHOLD = 1e-6       # envelope modulus counts as zero below this
NORMALIZATION_RTOL = 1e-6      # tolerance on (1/L) integral |f|^2 = 1


@dataclass(frozen=True)
class Fock:
    """n-photon number state content of a pulse."""

    photons: int

    def __post_init__(self):
        if self.photons < 0:
            raise ValueError("photon number must be >= 0")


@dataclass(frozen=True)
class Coherent:
    """Coherent-state content; ``alpha0`` is the peak amplitude, so the peak
    excitation density is |alpha0|^2."""

    alpha0: complex

    @property
    def alpha_sq(self) -> float:
        return abs(self.alpha0) ** 2


Content = Union[Fock, Coherent]


@dataclass(frozen=True)
class GaussianEnvelope:
    """f(z) = amplitude * exp(-(z - center)^2 / (2 sigma^2))."""

    amplitude: float
    center: float
    sigma: float

    def __call__(self, z):
        z = np.asarray(z, dtype=float)
        d = (z - self.center) / self.sigma
        return self.amplitude * np.exp(-0.5 * d * d)

    @property
    def peak(self) -> float:
        return self.amplitude

    def support_radius(self, threshold: float = SUPPORT_THRESHOLD) -> float:
        return self.sigma * math.sqrt(-2.0 * math.log(threshold))


@dataclass(frozen=True)
class PulseSpec:
    """A polariton pulse: longitudinal envelope, duration, and photon content.

    The envelope satisfies (1/L) integral |f|^2 dz = 1 (checked numerically
    at construction).  With ``enforce_support=True`` the envelope must also
    be negligible (below 1e-6 of peak) outside [0, L]; pass False for the
    idealized pulses that straddle the medium boundary while entering or
    leaving, as the scenario runner does.
    """

    envelope: Callable
    duration: float
    center: float
    content: Content
    medium_length: float
    enforce_support: bool = True

    def __post_init__(self):
        if self.duration <= 0 or self.medium_length <= 0:
            raise ValueError("duration and medium length must be positive")
        if not isinstance(self.content, (Fock, Coherent)):
            raise TypeError("content must be Fock or Coherent")
        norm = self._norm_integral() / self.medium_length
        if abs(norm - 1.0) > NORMALIZATION_RTOL:
            raise EnvelopeNotNormalized(
                f"(1/L) integral |f|^2 = {norm:.8g}, expected 1")
        if self.enforce_support:
            lo, hi = self.support_interval()
            if lo < 0.0 or hi > self.medium_length:
                raise EnvelopeOutsideMedium(
                    f"envelope support [{lo:.4g}, {hi:.4g}] m leaves "
                    f"[0, {self.medium_length:.4g}] m")

    # -- geometry of the envelope ------------------------------------------

    def _scan_window(self):
        L = self.medium_length
        r = 8.0 * L
        return min(0.0, self.center - r), max(L, self.center + r)

    def _norm_integral(self) -> float:
        val, _ = quad(lambda z: abs(self.envelope(z)) ** 2,
                      *self._scan_window(), points=[self.center], limit=400)
        return val

    def envelope_peak(self) -> float:
        peak = getattr(self.envelope, "peak", None)
        if peak is not None:
            return float(peak)
        a, b = self._scan_window()
        z = np.linspace(a, b, 16001)
        return float(np.max(np.abs(self.envelope(z))))

    def support_interval(self, threshold: float = SUPPORT_THRESHOLD):
        """Interval outside of which |f| stays below threshold * peak."""
        radius = getattr(self.envelope, "support_radius", None)
        if radius is not None:
            r = radius(threshold)
            return self.center - r, self.center + r
        a, b = self._scan_window()
        z = np.linspace(a, b, 16001)
        mask = np.abs(self.envelope(z)) >= threshold * self.envelope_peak()
        if not np.any(mask):
            return self.center, self.center
        return float(z[mask][0]), float(z[mask][-1])

    # -- photon content -----------------------------------------------------

    def peak_intensity(self) -> float:
        """max_z of the excitation density <I(z)>."""
        if isinstance(self.content, Fock):
            return self.content.photons * self.envelope_peak() ** 2
        return self.content.alpha_sq

    def intensity(self, z):
        """<I(z)>: n |f|^2 for Fock, |alpha0 f / f_peak|^2 for coherent."""
        f2 = np.abs(self.envelope(z)) ** 2
        if isinstance(self.content, Fock):
            return self.content.photons * f2
        return self.content.alpha_sq * f2 / self.envelope_peak() ** 2


def gaussian_pulse(medium_length: float, duration: float, velocity: float,
                   center: float, content: Content,
                   enforce_support: bool = True) -> PulseSpec:
    """Default pulse family: Gaussian with sigma = duration * velocity / 2,
    hard-normalized to (1/L) integral |f|^2 = 1."""
    sigma = 0.5 * duration * velocity
    if sigma <= 0:
        raise ValueError("duration and velocity must be positive")
    amplitude = math.sqrt(medium_length / (sigma * math.sqrt(math.pi)))
    env = GaussianEnvelope(amplitude=amplitude, center=center, sigma=sigma)
    return PulseSpec(envelope=env, duration=duration, center=center,
                     content=content, medium_length=medium_length,
                     enforce_support=enforce_support)


@dataclass(frozen=True)
class TwoPhotonState:
    """One single-photon pulse per channel (pulse1 right-, pulse2 left-moving)."""

    pulse1: PulseSpec
    pulse2: PulseSpec

    def __post_init__(self):
        for p in (self.pulse1, self.pulse2):
            if not (isinstance(p.content, Fock) and p.content.photons == 1):
                raise ValueError("two-photon state needs Fock(1) pulses")
        if self.pulse1.medium_length != self.pulse2.medium_length:
            raise ValueError("pulses must live in the same medium")


@dataclass(frozen=True)
class GridSpec:
    """Evaluation grid for the two-photon field; equal steps on both axes
    (the interaction phase depends on z1 - z2 only, and equal steps let the
    evaluation run over the diagonals of the grid)."""

    z1_min: float
    z1_max: float
    n1: int
    z2_min: float
    z2_max: float
    n2: int

    def __post_init__(self):
        if self.n1 < 2 or self.n2 < 2:
            raise ValueError("need at least 2 points per axis")
        if self.z1_max <= self.z1_min or self.z2_max <= self.z2_min:
            raise ValueError("grid extents must be increasing")
        s1, s2 = self.step1, self.step2
        if abs(s1 - s2) > 1e-9 * max(s1, s2):
            raise ValueError("grid steps must match on both axes")

    @property
    def step1(self) -> float:
        return (self.z1_max - self.z1_min) / (self.n1 - 1)

    @property
    def step2(self) -> float:
        return (self.z2_max - self.z2_min) / (self.n2 - 1)

    def axes(self):
        return (np.linspace(self.z1_min, self.z1_max, self.n1),
                np.linspace(self.z2_min, self.z2_max, self.n2))


@dataclass(frozen=True)
class TwoPhotonField:
    """Two-photon wavefunction on a grid at one instant."""

    time: float
    z1: np.ndarray
    z2: np.ndarray
    wavefunction: np.ndarray    # complex, shape (n1, n2)
    phase: np.ndarray           # rad, shape (n1, n2)
    valid: np.ndarray           # bool, True where both coordinates in [0, L]


class PhaseKernel(enum.Enum):
    EXACT_QUADRATURE = "exact-quadrature"
    DELTA_APPROXIMATION = "delta-approximation"
    CLOSED_FORM = "closed-form"


def uniform_phase(c12: float, w: float, v: float, sin2_theta_1: float,
                  sin2_theta_2: Optional[float] = None,
                  constants: PhysicalConstants = CODATA) -> float:
    """Closed-form complete-pass phase C12 s^2_1 s^2_2 / (hbar w^2 v)."""
    if sin2_theta_2 is None:
        sin2_theta_2 = sin2_theta_1
    if c12 < 0 or w <= 0 or v <= 0:
        raise ValueError("c12 >= 0 and w, v > 0 required")
    for s in (sin2_theta_1, sin2_theta_2):
        if not 0.0 < s <= 1.0:
            raise ValueError("sin^2(theta) must lie in (0, 1]")
    return c12 * sin2_theta_1 * sin2_theta_2 / (constants.hbar * w * w * v)


def pair_uniform_phase(pair: ChannelPair,
                       coupling: Optional[DdiCoupling] = None) -> float:
    """Uniform cross phase for a channel pair (coupling derived from the
    channels' Rydberg states unless given)."""
    if coupling is None:
        coupling = DdiCoupling.from_states(pair.channel1.rydberg_state,
                                           pair.channel2.rydberg_state)
    return uniform_phase(coupling.coefficient, pair.geometry.effective_width,
                         pair.mean_velocity, pair.channel1.sin2_theta,
                         pair.channel2.sin2_theta,
                         pair.channel1.constants)


def accumulated_phase(c12: float, w: float, v: float, sin2_theta_1: float,
                      sin2_theta_2: Optional[float], z1: float, z2: float,
                      t: float, quad_tol: float = 1e-8,
                      max_segments: int = 4096,
                      constants: PhysicalConstants = CODATA) -> float:
    """Interaction phase at (z1, z2, t) by adaptive quadrature of the exact
    1D potential along the relative trajectory."""
    if sin2_theta_2 is None:
        sin2_theta_2 = sin2_theta_1
    if t < 0:
        raise ValueError("t must be >= 0")
    if not 1e-12 < quad_tol < 1e-3:
        raise ValueError("quad_tol must lie in (1e-12, 1e-3)")
    if t == 0.0:
        return 0.0
    u = z1 - z2
    scale = SQRT2 * w
    vals, _, status = kernels.integrate_windows(
        np.array([(u - 2.0 * v * t) / scale]), np.array([u / scale]),
        rel_tol=quad_tol, max_segments=max_segments)
    if status[0] != 0:
        raise QuadratureNonConvergence(
            "phase window integral did not converge to the requested "
            "tolerance")
    s4 = sin2_theta_1 * sin2_theta_2
    return -(s4 / (2.0 * v)) * (c12 / (constants.hbar * w * w)) * float(vals[0])


def evolve_two_photon(state: TwoPhotonState, pair: ChannelPair, t: float,
                      grid: GridSpec, quad_tol: float = 1e-8,
                      coupling: Optional[DdiCoupling] = None) -> TwoPhotonField:
    """Two-photon wavefunction f1(z1 - v t) f2(z2 + v t) exp(i phi) on a grid.

    The phase is the accumulated interaction phase evaluated per grid point
    (one window integral per grid diagonal, since it depends on z1 - z2
    only).  Raises :class:`GridTooCoarse` when the step exceeds w/4 and
    :class:`PulseLeftMedium` when an envelope's support is not inside the
    medium at time t.
    """
    geo = pair.geometry
    L, w = geo.length, geo.effective_width
    v = pair.mean_velocity
    s4 = pair.sin2_product
    if coupling is None:
        coupling = DdiCoupling.from_states(pair.channel1.rydberg_state,
                                           pair.channel2.rydberg_state)
    if t < 0 or t > L / v * (1.0 + 1e-12):
        raise ValueError("t must lie in [0, L/v]")
    step = grid.step1
    if step > w / 4.0 * (1.0 + 1e-12):
        raise GridTooCoarse(
            f"grid step {step:.4g} m exceeds w/4 = {w / 4.0:.4g} m")

    for pulse, shift in ((state.pulse1, +v * t), (state.pulse2, -v * t)):
        lo, hi = pulse.support_interval()
        if lo + shift < 0.0 or hi + shift > L:
            raise PulseLeftMedium(
                f"pulse support [{lo + shift:.4g}, {hi + shift:.4g}] m is "
                f"not inside the medium at t = {t:.4g} s")

    z1, z2 = grid.axes()
    n1, n2 = grid.n1, grid.n2

    # unique values of u = z1 - z2 live on one lattice for equal grid steps
    k = np.arange(n1 + n2 - 1)
    u = (grid.z1_min - grid.z2_min) + (k - (n2 - 1)) * step
    scale = SQRT2 * w
    if t == 0.0:
        phi_diag = np.zeros_like(u)
    else:
        vals, _, status = kernels.integrate_windows(
            (u - 2.0 * v * t) / scale, u / scale, rel_tol=quad_tol)
        if np.any(status != 0):
            raise QuadratureNonConvergence(
                "phase surface quadrature did not converge")
        hbar = pair.channel1.constants.hbar
        phi_diag = -(s4 / (2.0 * v)) * (coupling.coefficient / (hbar * w * w)) * vals

    idx = np.arange(n1)[:, None] - np.arange(n2)[None, :] + (n2 - 1)
    phase = phi_diag[idx]

    f1 = np.asarray(state.pulse1.envelope(z1 - v * t), dtype=complex)
    f2 = np.asarray(state.pulse2.envelope(z2 + v * t), dtype=complex)
    wavefunction = f1[:, None] * f2[None, :] * np.exp(1j * phase)

    valid = ((z1 >= 0) & (z1 <= L))[:, None] & ((z2 >= 0) & (z2 <= L))[None, :]
    return TwoPhotonField(time=t, z1=z1, z2=z2, wavefunction=wavefunction,
                          phase=phase, valid=valid)


def _check_envelope_smooth(signal: PulseSpec, w: float):
    """Enforce the probe-phase precondition: |f2| varies by < 10% of peak
    over any interval of length w."""
    lo, hi = signal.support_interval()
    lo, hi = min(lo, 0.0), max(hi, signal.medium_length)
    n = int(np.ceil((hi - lo) / (w / 4.0))) + 1
    n = min(max(n, 64), 2_000_001)
    z = np.linspace(lo, hi, n)
    f = np.abs(signal.envelope(z))
    stride = max(int(round(w / (z[1] - z[0]))), 1)
    if stride < f.size:
        variation = np.max(np.abs(f[stride:] - f[:-stride]))
        if variation > 0.1 * signal.envelope_peak():
            raise EnvelopeTooSharp(
                f"|f2| varies by {variation / signal.envelope_peak():.3f} of "
                f"peak over one interaction range w")


def probe_phase(probe: PulseSpec, signal: PulseSpec, pair: ChannelPair,
                kernel: PhaseKernel = PhaseKernel.DELTA_APPROXIMATION,
                quad_tol: float = 1e-8,
                coupling: Optional[DdiCoupling] = None) -> complex:
    """Output probe amplitude ratio <Psi_1(L, L/v)> / alpha_1(0).

    DELTA_APPROXIMATION replaces the interaction kernel by its integral
    weight at zero separation and returns exp(i phi12 n2) exactly.
    EXACT_QUADRATURE evaluates the full double integral of the kernel
    against the signal intensity numerically; the two agree to ~(w/sigma)^2
    when the signal envelope is smooth on the scale w.
    """
    if not isinstance(probe.content, Coherent):
        raise TypeError("probe pulse must carry Coherent content")
    if not isinstance(signal.content, Fock):
        raise TypeError("signal pulse must carry Fock content")
    if kernel == PhaseKernel.CLOSED_FORM:
        raise ValueError("probe_phase kernels are EXACT_QUADRATURE or "
                         "DELTA_APPROXIMATION")
    n2 = signal.content.photons
    if n2 == 0:
        return 1.0 + 0.0j

    geo = pair.geometry
    L, w = geo.length, geo.effective_width
    v = pair.mean_velocity
    s4 = pair.sin2_product
    if coupling is None:
        coupling = DdiCoupling.from_states(pair.channel1.rydberg_state,
                                           pair.channel2.rydberg_state)
    hbar = pair.channel1.constants.hbar

    if kernel == PhaseKernel.DELTA_APPROXIMATION:
        phi = uniform_phase(coupling.coefficient, w, v,
                            pair.channel1.sin2_theta,
                            pair.channel2.sin2_theta,
                            pair.channel1.constants)
        return complex(np.exp(1j * phi * n2))

    _check_envelope_smooth(signal, w)

    pref = 2.0 * coupling.coefficient / (hbar * (SQRT2 * w) ** 3)
    env2 = lambda x: abs(signal.envelope(x)) ** 2
    inner_scale = abs(2.0 * coupling.coefficient / (hbar * w * w)) \
        * signal.envelope_peak() ** 2

    def inner(tp):
        a, b = -v * tp, L - v * tp
        pts = [x for x in (-8.0 * SQRT2 * w, 0.0, 8.0 * SQRT2 * w) if a < x < b]
        val, _ = quad(
            lambda xi: pref * float(kernels.potential_reduced(xi / (SQRT2 * w)))
            * env2(xi + 2.0 * v * tp),
            a, b, points=pts or None, limit=400,
            epsabs=inner_scale * quad_tol * 1e-2, epsrel=quad_tol * 0.1)
        return val

    t_meet = signal.center / (2.0 * v)
    pts = [t_meet] if 0.0 < t_meet < L / v else None
    total, _ = quad(inner, 0.0, L / v, points=pts, limit=200,
                    epsabs=inner_scale * (L / v) * quad_tol * 0.1,
                    epsrel=quad_tol)
    exponent = -(s4 / L) * n2 * total
    return complex(np.exp(1j * exponent))


def self_phase_estimate(alpha0: complex, c11: float, w: float, v: float,
                        sin2_theta: float,
                        constants: PhysicalConstants = CODATA) -> float:
    """Self-phase of a coherent probe: 2 C11 s^4 |alpha0|^2 / (hbar w^2 v)."""
    if c11 < 0 or w <= 0 or v <= 0:
        raise ValueError("c11 >= 0 and w, v > 0 required")
    return (2.0 * c11 * sin2_theta**2 * abs(alpha0) ** 2
            / (constants.hbar * w * w * v))


def write_phase_surface(field: TwoPhotonField, path) -> None:
    """Dump (z1, z2, Re F12, Im F12, phi12) as comma-separated text."""
    n1, n2 = field.phase.shape
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("z1_m,z2_m,re_f12,im_f12,phi12_rad\n")
        for i in range(n1):
            for j in range(n2):
                fh.write(f"{field.z1[i]:.9g},{field.z2[j]:.9g},"
                         f"{field.wavefunction[i, j].real:.9g},"
                         f"{field.wavefunction[i, j].imag:.9g},"
                         f"{field.phase[i, j]:.9g}\n")
