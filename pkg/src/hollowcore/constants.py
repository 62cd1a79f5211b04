"""Physical constants (CODATA 2018) and the unit converters used at API
boundaries.

Everything internal to the package is SI base units.  Inputs quoted in
atomic-physics-friendly units (e*a0 dipole moments, micrometers, ...) are
converted exactly once, through the helpers below.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class PhysicalConstants:
    """Fundamental constants, SI base units."""

    hbar: float = 1.054571817e-34        # reduced Planck constant [J s]
    epsilon0: float = 8.8541878128e-12   # vacuum permittivity [F/m]
    e_charge: float = 1.602176634e-19    # elementary charge [C]
    a0: float = 5.29177210903e-11        # Bohr radius [m]
    c_light: float = 299792458.0         # speed of light [m/s]

    def __post_init__(self):
        for name in ("hbar", "epsilon0", "e_charge", "a0", "c_light"):
            if getattr(self, name) <= 0.0:
                raise ValueError(f"constant {name} must be positive")


CODATA = PhysicalConstants()


def dipole_from_ea0(value: float, constants: PhysicalConstants = CODATA) -> float:
    """Convert a dipole moment quoted in units of e*a0 to C m."""
    if value < 0:
        raise ValueError("dipole moment in e*a0 units must be >= 0")
    return value * constants.e_charge * constants.a0


def dipole_to_ea0(value: float, constants: PhysicalConstants = CODATA) -> float:
    """Inverse of :func:`dipole_from_ea0`."""
    return value / (constants.e_charge * constants.a0)


def length_from_um(value: float) -> float:
    """Micrometers to meters."""
    if value < 0:
        raise ValueError("length must be >= 0")
    return value * 1e-6


def length_from_cm(value: float) -> float:
    """Centimeters to meters."""
    if value < 0:
        raise ValueError("length must be >= 0")
    return value * 1e-2


def length_from_nm(value: float) -> float:
    """Nanometers to meters."""
    if value < 0:
        raise ValueError("length must be >= 0")
    return value * 1e-9


def angular_freq_from_rad_s(value: float) -> float:
    """Angular frequencies are already SI; provided for symmetry so every
    scenario quantity passes through a named converter."""
    if value < 0:
        raise ValueError("angular frequency must be >= 0")
    return float(value)
