"""Waveguide geometry, atomic ensemble, and the two EIT channels.

All derived slow-light quantities (absorption coefficient, optical depth,
group velocity, mixing angle, transparency bandwidth) are pure functions of
the constructor inputs; the dataclasses compute them once and are immutable
afterwards.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

from .constants import CODATA, PhysicalConstants
from .ddi import RydbergState
from .errors import VelocityExceedsC


def effective_density(atom_count: float, atom_width: float,
                      field_width: float, length: float) -> float:
    """Transverse-averaged atomic density N / [pi (w_a^2 + w_f^2) L] in m^-3."""
    return atom_count / (math.pi * (atom_width**2 + field_width**2) * length)


def absorption_cross_section(wavelength: float) -> float:
    """Resonant two-level absorption cross section 3 lambda^2 / (2 pi)."""
    return 3.0 * wavelength**2 / (2.0 * math.pi)


def absorption_coefficient(wavelength: float, density: float) -> float:
    """Resonant absorption coefficient kappa = sigma * density in m^-1."""
    return absorption_cross_section(wavelength) * density


def group_velocity(control_rabi: float, kappa: float, gamma_ge: float,
                   constants: PhysicalConstants = CODATA) -> float:
    """EIT group velocity v = 2 |Omega|^2 / (kappa gamma_ge).

    Raises :class:`VelocityExceedsC` when the result is not below c, which
    signals parameters outside the slow-light regime.
    """
    if kappa <= 0 or gamma_ge <= 0:
        raise ValueError("kappa and gamma_ge must be positive")
    v = 2.0 * control_rabi**2 / (kappa * gamma_ge)
    if v >= constants.c_light:
        raise VelocityExceedsC(
            f"v = {v:.4g} m/s >= c; not in the slow-light regime")
    return v


def mixing_angle_sin2(v: float, constants: PhysicalConstants = CODATA) -> float:
    """Polariton matter fraction sin^2(theta) = 1 - v/c."""
    if not 0.0 < v <= constants.c_light:
        raise ValueError("group velocity must be in (0, c]")
    return 1.0 - v / constants.c_light


def mixing_angle_sin2_from_coupling(g: float, atom_count: float,
                                    control_rabi: float, effective_width: float,
                                    atom_width: float) -> float:
    """Matter fraction from the atom-field coupling route.

    tan^2(theta) = (g^2 N / |Omega|^2) (w / w_a)^2; useful as a consistency
    check for users who know the single-atom coupling g.  The package's
    primary route derives theta from the group velocity instead, since g
    requires the transition dipole matrix element and quantization volume.
    """
    if g < 0 or atom_count <= 0 or control_rabi <= 0:
        raise ValueError("g >= 0, N > 0 and Omega > 0 required")
    tan2 = (g**2 * atom_count / control_rabi**2) * (effective_width / atom_width)**2
    return tan2 / (1.0 + tan2)


def check_mixing_angle_consistency(sin2_from_velocity: float,
                                   sin2_from_coupling: float,
                                   rel_tol: float = 1e-3) -> bool:
    """True when the two mixing-angle routes agree within rel_tol."""
    ref = max(abs(sin2_from_velocity), abs(sin2_from_coupling), 1e-300)
    return abs(sin2_from_velocity - sin2_from_coupling) / ref <= rel_tol


def eit_bandwidth(control_rabi: float, gamma_ge: float,
                  optical_depth: float) -> float:
    """Transparency bandwidth |Omega|^2 / (gamma_ge sqrt(kappa L)) in rad/s."""
    if optical_depth <= 0:
        raise ValueError("optical depth must be positive")
    return control_rabi**2 / (gamma_ge * math.sqrt(optical_depth))


@dataclass(frozen=True)
class WaveguideGeometry:
    """Hollow-core guide of length L with Gaussian field/atom profiles."""

    length: float          # L [m]
    field_width: float     # w_f [m]
    atom_width: float      # w_a [m]

    def __post_init__(self):
        if min(self.length, self.field_width, self.atom_width) <= 0:
            raise ValueError("all geometry lengths must be positive")
        if self.atom_width > self.field_width:
            raise ValueError("atom cloud width must not exceed the field "
                             "mode width (w_a <= w_f)")

    @property
    def effective_width(self) -> float:
        """w = w_a w_f / sqrt(w_a^2 + w_f^2); never exceeds min(w_a, w_f)."""
        return (self.atom_width * self.field_width
                / math.hypot(self.atom_width, self.field_width))


@dataclass(frozen=True)
class AtomicEnsemble:
    atom_count: float
    geometry: WaveguideGeometry

    def __post_init__(self):
        if self.atom_count <= 0:
            raise ValueError("atom count must be positive")

    @property
    def effective_density(self) -> float:
        g = self.geometry
        return effective_density(self.atom_count, g.atom_width,
                                 g.field_width, g.length)


@dataclass(frozen=True)
class Transition:
    """One optical transition: wavelength and transversal relaxation rate."""

    wavelength: float      # [m]
    gamma_ge: float        # [1/s]

    def __post_init__(self):
        if self.wavelength <= 0 or self.gamma_ge <= 0:
            raise ValueError("wavelength and gamma_ge must be positive")

    @property
    def absorption_cross_section(self) -> float:
        return absorption_cross_section(self.wavelength)


@dataclass(frozen=True)
class EitChannel:
    """One quantum field with its transition, control field and target
    Rydberg level, plus every derived EIT quantity."""

    label: int
    transition: Transition
    control_rabi: float                  # Omega [rad/s]
    rydberg_state: RydbergState
    ensemble: AtomicEnsemble
    gamma_gd: Optional[float] = None     # Rydberg coherence decay [1/s]
    constants: PhysicalConstants = field(default=CODATA, repr=False)

    def __post_init__(self):
        if self.label not in (1, 2):
            raise ValueError("channel label must be 1 or 2")
        if self.control_rabi <= 0:
            raise ValueError("control Rabi frequency must be positive")
        if self.gamma_gd is not None and self.gamma_gd < 0:
            raise ValueError("gamma_gd must be >= 0 when given")
        # Fail fast on slow-light violation rather than on first use.
        self.group_velocity  # noqa: B018

    @property
    def kappa(self) -> float:
        return absorption_coefficient(self.transition.wavelength,
                                      self.ensemble.effective_density)

    @property
    def optical_depth(self) -> float:
        return self.kappa * self.ensemble.geometry.length

    @property
    def group_velocity(self) -> float:
        return group_velocity(self.control_rabi, self.kappa,
                              self.transition.gamma_ge, self.constants)

    @property
    def sin2_theta(self) -> float:
        return mixing_angle_sin2(self.group_velocity, self.constants)

    @property
    def eit_bandwidth(self) -> float:
        return eit_bandwidth(self.control_rabi, self.transition.gamma_ge,
                             self.optical_depth)

    @property
    def transit_time(self) -> float:
        """t_out = L / v, the full traversal time of the medium."""
        return self.ensemble.geometry.length / self.group_velocity


@dataclass(frozen=True)
class ChannelPair:
    """The two counter-propagating channels sharing one medium.

    Channel 1 moves toward +z, channel 2 toward -z.  The relative coordinate
    z1 - z2 closes at v1 + v2, so pair-level phase formulas use the mean
    velocity; the matter fractions enter as the product
    sin^2(theta_1) sin^2(theta_2).
    """

    channel1: EitChannel
    channel2: EitChannel
    theta_match_rtol: float = 1e-3

    def __post_init__(self):
        if (self.channel1.label, self.channel2.label) != (1, 2):
            raise ValueError("pair must consist of channel labels (1, 2)")
        if self.channel1.ensemble is not self.channel2.ensemble and \
                self.channel1.ensemble != self.channel2.ensemble:
            raise ValueError("both channels must share the same ensemble")

    @property
    def geometry(self) -> WaveguideGeometry:
        return self.channel1.ensemble.geometry

    @property
    def ensemble(self) -> AtomicEnsemble:
        return self.channel1.ensemble

    @property
    def mean_velocity(self) -> float:
        return 0.5 * (self.channel1.group_velocity
                      + self.channel2.group_velocity)

    @property
    def sin2_product(self) -> float:
        """sin^2(theta_1) sin^2(theta_2); reduces to sin^4(theta) for
        matched channels."""
        return self.channel1.sin2_theta * self.channel2.sin2_theta

    def thetas_match(self) -> bool:
        s1, s2 = self.channel1.sin2_theta, self.channel2.sin2_theta
        return abs(s1 - s2) <= self.theta_match_rtol * max(s1, s2)

    def require_matched_thetas(self):
        if not self.thetas_match():
            raise ValueError(
                "mixing angles differ beyond the configured tolerance; "
                "single-theta formulas do not apply")
