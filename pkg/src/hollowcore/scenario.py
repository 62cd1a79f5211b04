"""Scenario files: flat key = value text with units spelled out in the key
names (waveguide.length_cm, rydberg1.dipole_ea0, ...).

Unknown keys are hard errors; silent typos in physics inputs are the
dominant failure mode this format guards against.  Bundled operating points
live under ``hollowcore/scenarios/*.scn``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from importlib import resources
from typing import Dict, Mapping, Optional, Tuple

from .constants import dipole_from_ea0, length_from_cm, length_from_nm, length_from_um
from .constraints import CouplingSet
from .ddi import DdiCoupling, RydbergState
from .errors import ScenarioParseError
from .medium import AtomicEnsemble, ChannelPair, EitChannel, Transition, WaveguideGeometry
from .propagation import Coherent, Fock, PulseSpec, gaussian_pulse


class ExperimentKind(enum.Enum):
    PHASE_GATE = "phase_gate"
    QND = "qnd"
    POTENTIAL = "potential"
    SWEEP = "sweep"


def _as_float(key, raw):
    try:
        return float(raw)
    except ValueError as exc:
        raise ScenarioParseError(f"{key}: expected a number, got {raw!r}") from exc


def _as_int(key, raw):
    try:
        value = int(raw)
    except ValueError as exc:
        raise ScenarioParseError(f"{key}: expected an integer, got {raw!r}") from exc
    return value


def _as_str(key, raw):
    return raw


# key -> converter; the schema is the single source of accepted keys
SCHEMA = {
    "title": _as_str,
    "experiment": _as_str,
    "waveguide.length_cm": _as_float,
    "waveguide.field_width_um": _as_float,
    "waveguide.atom_width_um": _as_float,
    "ensemble.atom_count": _as_float,
    "channel1.wavelength_nm": _as_float,
    "channel1.gamma_ge_per_s": _as_float,
    "channel1.control_rabi_rad_s": _as_float,
    "channel1.gamma_gd_per_s": _as_float,
    "channel2.wavelength_nm": _as_float,
    "channel2.gamma_ge_per_s": _as_float,
    "channel2.control_rabi_rad_s": _as_float,
    "channel2.gamma_gd_per_s": _as_float,
    "rydberg1.dipole_ea0": _as_float,
    "rydberg1.principal_n": _as_int,
    "rydberg1.parabolic_q": _as_int,
    "rydberg1.magnetic_m": _as_int,
    "rydberg2.dipole_ea0": _as_float,
    "rydberg2.principal_n": _as_int,
    "rydberg2.parabolic_q": _as_int,
    "rydberg2.magnetic_m": _as_int,
    "pulse1.content": _as_str,
    "pulse1.photons": _as_int,
    "pulse1.alpha0": _as_float,
    "pulse1.duration_s": _as_float,
    "pulse1.center_cm": _as_float,
    "pulse2.content": _as_str,
    "pulse2.photons": _as_int,
    "pulse2.alpha0": _as_float,
    "pulse2.duration_s": _as_float,
    "pulse2.center_cm": _as_float,
    "qnd.n_max": _as_int,
    "potential.zeta_min": _as_float,
    "potential.zeta_max": _as_float,
    "potential.points": _as_int,
    "sweep.parameter": _as_str,
    "sweep.start": _as_float,
    "sweep.stop": _as_float,
    "sweep.steps": _as_int,
    "sweep.experiment": _as_str,
}

_BASE_REQUIRED = (
    "waveguide.length_cm", "waveguide.field_width_um", "waveguide.atom_width_um",
    "ensemble.atom_count",
    "channel1.wavelength_nm", "channel1.gamma_ge_per_s", "channel1.control_rabi_rad_s",
    "channel2.wavelength_nm", "channel2.gamma_ge_per_s", "channel2.control_rabi_rad_s",
    "pulse1.content", "pulse1.duration_s",
    "pulse2.content", "pulse2.duration_s",
)


def parse_scenario_text(text: str) -> Dict[str, object]:
    """Parse key = value lines into a typed mapping (schema-checked)."""
    values: Dict[str, object] = {}
    for lineno, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ScenarioParseError(f"line {lineno}: expected 'key = value', "
                                     f"got {raw_line!r}")
        key, _, raw = line.partition("=")
        key, raw = key.strip(), raw.strip()
        if key not in SCHEMA:
            raise ScenarioParseError(f"line {lineno}: unknown key {key!r}")
        if key in values:
            raise ScenarioParseError(f"line {lineno}: duplicate key {key!r}")
        if not raw:
            raise ScenarioParseError(f"line {lineno}: empty value for {key!r}")
        values[key] = SCHEMA[key](key, raw)
    return values


@dataclass(frozen=True)
class Scenario:
    """A validated scenario: raw typed mapping plus the experiment kind."""

    values: Mapping[str, object]
    experiment: ExperimentKind

    @classmethod
    def from_mapping(cls, values: Mapping[str, object]) -> "Scenario":
        if "experiment" not in values:
            raise ScenarioParseError("missing required key 'experiment'")
        try:
            kind = ExperimentKind(values["experiment"])
        except ValueError as exc:
            raise ScenarioParseError(
                f"experiment must be one of "
                f"{[k.value for k in ExperimentKind]}, "
                f"got {values['experiment']!r}") from exc
        scenario = cls(values=dict(values), experiment=kind)
        scenario._validate()
        return scenario

    @classmethod
    def from_text(cls, text: str) -> "Scenario":
        return cls.from_mapping(parse_scenario_text(text))

    @classmethod
    def from_file(cls, path) -> "Scenario":
        try:
            with open(path, "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise ScenarioParseError(f"cannot read scenario file: {exc}") from exc
        return cls.from_text(text)

    # -- validation ----------------------------------------------------------

    def _require(self, *keys):
        missing = [k for k in keys if k not in self.values]
        if missing:
            raise ScenarioParseError(f"missing required keys: {missing}")

    def _validate_rydberg(self, which: int):
        dipole = f"rydberg{which}.dipole_ea0"
        qn = (f"rydberg{which}.principal_n", f"rydberg{which}.parabolic_q")
        has_dipole = dipole in self.values
        has_qn = any(k in self.values for k in qn)
        if has_dipole and has_qn:
            raise ScenarioParseError(
                f"rydberg{which}: give either dipole_ea0 or quantum numbers, "
                f"not both")
        if not has_dipole and not all(k in self.values for k in qn):
            raise ScenarioParseError(
                f"rydberg{which}: needs dipole_ea0 or both principal_n and "
                f"parabolic_q")

    def _validate_pulse(self, which: int):
        content = self.values.get(f"pulse{which}.content")
        if content not in ("fock", "coherent"):
            raise ScenarioParseError(
                f"pulse{which}.content must be 'fock' or 'coherent', got "
                f"{content!r}")
        if content == "fock" and f"pulse{which}.photons" not in self.values:
            raise ScenarioParseError(f"pulse{which}.photons required for fock")
        if content == "coherent" and f"pulse{which}.alpha0" not in self.values:
            raise ScenarioParseError(f"pulse{which}.alpha0 required for coherent")

    def _validate(self):
        kind = self.experiment
        if kind is ExperimentKind.POTENTIAL:
            self._require("potential.zeta_min", "potential.zeta_max",
                          "potential.points")
            if self.values["potential.points"] < 2:
                raise ScenarioParseError("potential.points must be >= 2")
            return
        if kind is ExperimentKind.SWEEP:
            self._require("sweep.parameter", "sweep.start", "sweep.stop",
                          "sweep.steps", "sweep.experiment")
            if self.values["sweep.experiment"] not in ("phase_gate", "qnd"):
                raise ScenarioParseError(
                    "sweep.experiment must be phase_gate or qnd")
            param = self.values["sweep.parameter"]
            if param not in SCHEMA or SCHEMA[param] not in (_as_float, _as_int):
                raise ScenarioParseError(
                    f"sweep.parameter must name a numeric scenario key, got "
                    f"{param!r}")
            if self.values["sweep.steps"] < 1:
                raise ScenarioParseError("sweep.steps must be >= 1")
            inner = dict(self.values)
            inner["experiment"] = self.values["sweep.experiment"]
            for k in list(inner):
                if k.startswith("sweep."):
                    del inner[k]
            Scenario.from_mapping(inner)  # validates the swept experiment
            return
        # phase_gate / qnd
        self._require(*_BASE_REQUIRED)
        self._validate_rydberg(1)
        self._validate_rydberg(2)
        self._validate_pulse(1)
        self._validate_pulse(2)
        if kind is ExperimentKind.QND:
            self._require("qnd.n_max")
            if self.values["qnd.n_max"] < 1:
                raise ScenarioParseError("qnd.n_max must be >= 1")
            if self.values["pulse1.content"] != "coherent":
                raise ScenarioParseError("qnd needs a coherent pulse1 (probe)")
            if self.values["pulse2.content"] != "fock":
                raise ScenarioParseError("qnd needs a fock pulse2 (signal)")

    # -- derived builders -----------------------------------------------------

    def with_override(self, key: str, value) -> "Scenario":
        if key not in SCHEMA:
            raise ScenarioParseError(f"unknown key {key!r}")
        values = dict(self.values)
        values[key] = value
        return Scenario.from_mapping(values)

    def geometry(self) -> WaveguideGeometry:
        return WaveguideGeometry(
            length=length_from_cm(self.values["waveguide.length_cm"]),
            field_width=length_from_um(self.values["waveguide.field_width_um"]),
            atom_width=length_from_um(self.values["waveguide.atom_width_um"]))

    def ensemble(self) -> AtomicEnsemble:
        return AtomicEnsemble(atom_count=self.values["ensemble.atom_count"],
                              geometry=self.geometry())

    def rydberg_state(self, which: int) -> RydbergState:
        dipole = self.values.get(f"rydberg{which}.dipole_ea0")
        if dipole is not None:
            return RydbergState.from_dipole(dipole_from_ea0(dipole))
        return RydbergState(
            principal_n=self.values[f"rydberg{which}.principal_n"],
            parabolic_q=self.values[f"rydberg{which}.parabolic_q"],
            magnetic_m=self.values.get(f"rydberg{which}.magnetic_m", 0))

    def channel(self, which: int, ensemble: Optional[AtomicEnsemble] = None
                ) -> EitChannel:
        ensemble = ensemble or self.ensemble()
        return EitChannel(
            label=which,
            transition=Transition(
                wavelength=length_from_nm(self.values[f"channel{which}.wavelength_nm"]),
                gamma_ge=self.values[f"channel{which}.gamma_ge_per_s"]),
            control_rabi=self.values[f"channel{which}.control_rabi_rad_s"],
            rydberg_state=self.rydberg_state(which),
            ensemble=ensemble,
            gamma_gd=self.values.get(f"channel{which}.gamma_gd_per_s"))

    def pair(self) -> ChannelPair:
        ensemble = self.ensemble()
        return ChannelPair(channel1=self.channel(1, ensemble),
                           channel2=self.channel(2, ensemble))

    def pulse(self, which: int, pair: ChannelPair) -> PulseSpec:
        content_kind = self.values[f"pulse{which}.content"]
        if content_kind == "fock":
            content = Fock(self.values[f"pulse{which}.photons"])
        else:
            content = Coherent(self.values[f"pulse{which}.alpha0"])
        L = pair.geometry.length
        # Documented defaults: pulse 1 enters at z = 0, pulse 2 at z = L.
        default_center = 0.0 if which == 1 else L
        center_cm = self.values.get(f"pulse{which}.center_cm")
        center = length_from_cm(center_cm) if center_cm is not None \
            else default_center
        channel = pair.channel1 if which == 1 else pair.channel2
        return gaussian_pulse(
            medium_length=L,
            duration=self.values[f"pulse{which}.duration_s"],
            velocity=channel.group_velocity,
            center=center,
            content=content,
            enforce_support=False)  # scenario pulses straddle the boundaries

    def pulses(self, pair: ChannelPair) -> Tuple[PulseSpec, PulseSpec]:
        return self.pulse(1, pair), self.pulse(2, pair)

    def couplings(self) -> CouplingSet:
        s1, s2 = self.rydberg_state(1), self.rydberg_state(2)
        return CouplingSet(
            c11=DdiCoupling.from_states(s1, s1).coefficient,
            c12=DdiCoupling.from_states(s1, s2).coefficient,
            c22=DdiCoupling.from_states(s2, s2).coefficient)


def bundled_scenario_text(name: str) -> str:
    """Text of a bundled scenario (paper_phase_gate, paper_qnd)."""
    try:
        return (resources.files("hollowcore") / "scenarios"
                / f"{name}.scn").read_text(encoding="utf-8")
    except FileNotFoundError as exc:
        raise ScenarioParseError(f"no bundled scenario named {name!r}") from exc


def bundled_scenario(name: str) -> Scenario:
    return Scenario.from_text(bundled_scenario_text(name))
