"""Rydberg-EIT photon-photon interactions in atom-filled hollow-core
waveguides: effective 1D dipole-dipole potentials, dark-state polariton
phase shifts, operating-condition margins, and homodyne QND predictions."""

from .constants import CODATA, PhysicalConstants, dipole_from_ea0, dipole_to_ea0
from .constraints import (
    ConstraintConfig,
    ConstraintReport,
    CouplingSet,
    check_all,
    max_photon_number,
)
from .ddi import (
    DdiCoupling,
    Potential1D,
    RydbergState,
    potential_3d,
    rydberg_dipole,
    transverse_average_oracle,
)
from .medium import (
    AtomicEnsemble,
    ChannelPair,
    EitChannel,
    Transition,
    WaveguideGeometry,
)
from .propagation import (
    Coherent,
    Fock,
    GaussianEnvelope,
    GridSpec,
    PhaseKernel,
    PulseSpec,
    TwoPhotonState,
    accumulated_phase,
    evolve_two_photon,
    gaussian_pulse,
    pair_uniform_phase,
    probe_phase,
    self_phase_estimate,
    uniform_phase,
    write_phase_surface,
)
from .qnd import distinguishability, homodyne_signal, required_probe_strength
from .scenario import Scenario, bundled_scenario

__version__ = "0.1.0"

__all__ = [
    "CODATA",
    "PhysicalConstants",
    "dipole_from_ea0",
    "dipole_to_ea0",
    "ConstraintConfig",
    "ConstraintReport",
    "CouplingSet",
    "check_all",
    "max_photon_number",
    "DdiCoupling",
    "Potential1D",
    "RydbergState",
    "potential_3d",
    "rydberg_dipole",
    "transverse_average_oracle",
    "AtomicEnsemble",
    "ChannelPair",
    "EitChannel",
    "Transition",
    "WaveguideGeometry",
    "Coherent",
    "Fock",
    "GaussianEnvelope",
    "GridSpec",
    "PhaseKernel",
    "PulseSpec",
    "TwoPhotonState",
    "accumulated_phase",
    "evolve_two_photon",
    "gaussian_pulse",
    "pair_uniform_phase",
    "probe_phase",
    "self_phase_estimate",
    "uniform_phase",
    "write_phase_surface",
    "distinguishability",
    "homodyne_signal",
    "required_probe_strength",
    "Scenario",
    "bundled_scenario",
    "__version__",
]
