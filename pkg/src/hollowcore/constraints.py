"""Validity ledger for the dissipation-free propagation solution.

Every operating condition is evaluated quantitatively and reported as a
margin (allowed / actual), never as a bare boolean.  Seven checks are always
present:

1. pulse-bandwidth     (kappa L)^(-1/2) << T v / L          [strict]
2. pulse-fits-medium   T v / L < 1                          [plain]
3. rydberg-coherence   (L/v) gamma_gd << 1                  [strict]
4. eit-window          interaction shift < EIT bandwidth    [plain]
5. phase-bound         phi n < sqrt(kappa L) / 4            [plain]
6. photon-bound        n below the optical-depth limit      [plain]
7. qnd-self            2 C11 |alpha0|^2 < C12               [plain]

"<<" is quantified as margin >= 10 and "<" as margin > 1 by default; both
thresholds are configurable.  Checks whose inputs are unavailable are
reported as indeterminate rather than silently skipped.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional, Tuple

from .ddi import DdiCoupling
from .medium import ChannelPair
from .propagation import Coherent, Fock, PulseSpec, uniform_phase


class Strictness(enum.Enum):
    STRICT = "<<"
    PLAIN = "<"


class EntryStatus(enum.Enum):
    SATISFIED = "satisfied"
    VIOLATED = "violated"
    INDETERMINATE = "indeterminate"
    NOT_APPLICABLE = "not-applicable"


@dataclass(frozen=True)
class ConstraintConfig:
    strict_margin: float = 10.0     # quantification of "<<"
    plain_margin: float = 1.0       # quantification of "<" (margin must exceed)
    coherent_sigmas: float = 2.0    # Poisson buffer for coherent photon numbers


DEFAULT_CONFIG = ConstraintConfig()


@dataclass(frozen=True)
class SubCheck:
    label: str
    lhs: float
    rhs: float

    @property
    def margin(self) -> float:
        if self.lhs == 0.0:
            return math.inf
        return self.rhs / self.lhs


@dataclass(frozen=True)
class ConstraintEntry:
    name: str
    strictness: Strictness
    status: EntryStatus
    lhs: float
    rhs: float
    margin: float
    details: Tuple[SubCheck, ...] = ()
    note: str = ""


@dataclass(frozen=True)
class CouplingSet:
    c11: float
    c12: float
    c22: float

    @classmethod
    def from_pair(cls, pair: ChannelPair) -> "CouplingSet":
        s1 = pair.channel1.rydberg_state
        s2 = pair.channel2.rydberg_state
        return cls(
            c11=DdiCoupling.from_states(s1, s1).coefficient,
            c12=DdiCoupling.from_states(s1, s2).coefficient,
            c22=DdiCoupling.from_states(s2, s2).coefficient,
        )

    def coefficient(self, l: int, lp: int) -> float:
        return {(1, 1): self.c11, (1, 2): self.c12,
                (2, 1): self.c12, (2, 2): self.c22}[(l, lp)]


@dataclass(frozen=True)
class ConstraintReport:
    entries: Tuple[ConstraintEntry, ...]

    def entry(self, name: str) -> ConstraintEntry:
        for e in self.entries:
            if e.name == name:
                return e
        raise KeyError(name)

    @property
    def violations(self):
        return [e for e in self.entries if e.status is EntryStatus.VIOLATED]

    @property
    def strict_violations(self):
        return [e for e in self.violations
                if e.strictness is Strictness.STRICT]

    @property
    def indeterminate(self):
        return [e for e in self.entries
                if e.status is EntryStatus.INDETERMINATE]

    def all_satisfied(self) -> bool:
        return not self.violations

    def to_text(self) -> str:
        lines = ["constraint | relation | lhs | rhs | margin | status"]
        for e in self.entries:
            lines.append(
                f"{e.name} | {e.strictness.value} | {e.lhs:.9g} | "
                f"{e.rhs:.9g} | {e.margin:.9g} | {e.status.value}"
                + (f" ({e.note})" if e.note else ""))
            for s in e.details:
                lines.append(f"  - {s.label} | {s.lhs:.9g} | {s.rhs:.9g} | "
                             f"{s.margin:.9g}")
        return "\n".join(lines)


def effective_photon_number(content, sigmas: float = 2.0) -> int:
    """Photon number entering the phase/photon bounds.

    Fock states count exactly; coherent states count the rounded-up mean
    plus ``sigmas`` Poisson standard deviations (also rounded up).
    """
    if isinstance(content, Fock):
        return content.photons
    if isinstance(content, Coherent):
        a2 = content.alpha_sq
        return int(math.ceil(a2) + math.ceil(sigmas * math.sqrt(a2)))
    raise TypeError("content must be Fock or Coherent")


def _interaction_intensity(pulse: PulseSpec, self_pair: bool) -> float:
    """Peak excitation density seen by a partner photon.

    For cross interactions this is the full peak intensity.  Within one
    Fock pulse each photon sees the other n-1 (a single photon exerts no
    shift on itself); a coherent pulse keeps its full |alpha0|^2.
    """
    if isinstance(pulse.content, Fock) and self_pair:
        n = max(pulse.content.photons - 1, 0)
        return n * pulse.envelope_peak() ** 2
    return pulse.peak_intensity()


def _status_for(margin: float, strictness: Strictness,
                config: ConstraintConfig) -> EntryStatus:
    threshold = (config.strict_margin if strictness is Strictness.STRICT
                 else config.plain_margin)
    if strictness is Strictness.STRICT:
        ok = margin >= threshold
    else:
        ok = margin > threshold
    return EntryStatus.SATISFIED if ok else EntryStatus.VIOLATED


def _entry_from_subchecks(name: str, strictness: Strictness, subs,
                          config: ConstraintConfig,
                          note: str = "") -> ConstraintEntry:
    worst = min(subs, key=lambda s: s.margin)
    margin = worst.margin
    return ConstraintEntry(
        name=name, strictness=strictness,
        status=_status_for(margin, strictness, config),
        lhs=worst.lhs, rhs=worst.rhs, margin=margin,
        details=tuple(subs), note=note)


def check_all(pair: ChannelPair, pulse1: PulseSpec, pulse2: PulseSpec,
              couplings: Optional[CouplingSet] = None,
              config: ConstraintConfig = DEFAULT_CONFIG) -> ConstraintReport:
    """Evaluate all seven operating conditions for a two-pulse experiment."""
    if couplings is None:
        couplings = CouplingSet.from_pair(pair)
    geo = pair.geometry
    L, w = geo.length, geo.effective_width
    hbar = pair.channel1.constants.hbar
    v_mean = pair.mean_velocity
    channels = {1: pair.channel1, 2: pair.channel2}
    pulses = {1: pulse1, 2: pulse2}
    n_eff = {l: effective_photon_number(pulses[l].content,
                                        config.coherent_sigmas)
             for l in (1, 2)}

    def phi(l: int, lp: int) -> float:
        return uniform_phase(couplings.coefficient(l, lp), w, v_mean,
                             channels[l].sin2_theta, channels[lp].sin2_theta,
                             channels[l].constants)

    entries = []

    # 1. pulse bandwidth above the EIT-window floor: (kappa L)^-1/2 << T v/L
    subs = [SubCheck(f"channel{l}",
                     lhs=channels[l].optical_depth ** -0.5,
                     rhs=pulses[l].duration * channels[l].group_velocity / L)
            for l in (1, 2)]
    entries.append(_entry_from_subchecks("pulse-bandwidth", Strictness.STRICT,
                                         subs, config))

    # 2. pulse fits in the medium: T v / L < 1
    subs = [SubCheck(f"channel{l}",
                     lhs=pulses[l].duration * channels[l].group_velocity / L,
                     rhs=1.0)
            for l in (1, 2)]
    entries.append(_entry_from_subchecks("pulse-fits-medium", Strictness.PLAIN,
                                         subs, config))

    # 3. Rydberg coherence outlives the traversal: (L/v) gamma_gd << 1
    missing = [l for l in (1, 2) if channels[l].gamma_gd is None]
    if missing:
        entries.append(ConstraintEntry(
            name="rydberg-coherence", strictness=Strictness.STRICT,
            status=EntryStatus.INDETERMINATE, lhs=math.nan, rhs=1.0,
            margin=math.nan,
            note="gamma_gd not provided for channel "
                 + ",".join(str(l) for l in missing)))
    else:
        subs = [SubCheck(f"channel{l}",
                         lhs=channels[l].transit_time * channels[l].gamma_gd,
                         rhs=1.0)
                for l in (1, 2)]
        entries.append(_entry_from_subchecks("rydberg-coherence",
                                             Strictness.STRICT, subs, config))

    # 4. interaction shifts stay inside the EIT window
    subs = []
    for l in (1, 2):
        for lp in (1, 2):
            s4 = channels[l].sin2_theta * channels[lp].sin2_theta
            intensity = _interaction_intensity(pulses[lp], self_pair=l == lp)
            lhs = (2.0 * couplings.coefficient(l, lp) * s4
                   / (hbar * w * w * L) * intensity)
            subs.append(SubCheck(f"shift[{l},{lp}]", lhs=lhs,
                                 rhs=channels[l].eit_bandwidth))
    entries.append(_entry_from_subchecks("eit-window", Strictness.PLAIN,
                                         subs, config))

    # 5. accumulated phases below the optical-depth ceiling
    subs = []
    for l in (1, 2):
        lp = 2 if l == 1 else 1
        rhs = math.sqrt(channels[l].optical_depth) / 4.0
        subs.append(SubCheck(f"cross[{l},{lp}]",
                             lhs=phi(l, lp) * n_eff[lp], rhs=rhs))
        subs.append(SubCheck(f"self[{l},{l}]",
                             lhs=phi(l, l) * max(n_eff[l] - 1, 0), rhs=rhs))
    entries.append(_entry_from_subchecks("phase-bound", Strictness.PLAIN,
                                         subs, config))

    # 6. photon numbers below the same ceiling, per pulse
    bounds = max_photon_number(pair, couplings)
    subs = [SubCheck(f"pulse{l}", lhs=float(n_eff[l]), rhs=b.limit)
            for l, b in ((1, bounds[0]), (2, bounds[1]))]
    entries.append(_entry_from_subchecks("photon-bound", Strictness.PLAIN,
                                         subs, config))

    # 7. probe self-interaction below the cross interaction (QND readout)
    if isinstance(pulse1.content, Coherent):
        lhs = 2.0 * couplings.c11 * pulse1.content.alpha_sq
        sub = SubCheck("probe", lhs=lhs, rhs=couplings.c12)
        entries.append(_entry_from_subchecks("qnd-self", Strictness.PLAIN,
                                             [sub], config))
    else:
        entries.append(ConstraintEntry(
            name="qnd-self", strictness=Strictness.PLAIN,
            status=EntryStatus.NOT_APPLICABLE, lhs=math.nan,
            rhs=couplings.c12, margin=math.nan,
            note="probe is not a coherent pulse"))

    return ConstraintReport(entries=tuple(entries))


@dataclass(frozen=True)
class PhotonBound:
    channel: int
    cross_limit: float
    self_limit: float

    @property
    def limit(self) -> float:
        return min(self.cross_limit, self.self_limit)

    @property
    def n_max(self) -> Optional[int]:
        """Largest integer photon number strictly below the limit; None when
        the limit is infinite (no interaction)."""
        if math.isinf(self.limit):
            return None
        n = int(math.floor(self.limit))
        if float(n) >= self.limit:
            n -= 1
        return n


def max_photon_number(pair: ChannelPair,
                      couplings: Optional[CouplingSet] = None
                      ) -> Tuple[PhotonBound, PhotonBound]:
    """Photon-number ceilings for both pulses of a channel pair."""
    if couplings is None:
        couplings = CouplingSet.from_pair(pair)
    geo = pair.geometry
    w = geo.effective_width
    v = pair.mean_velocity
    channels = {1: pair.channel1, 2: pair.channel2}

    def phi(l: int, lp: int) -> float:
        return uniform_phase(couplings.coefficient(l, lp), w, v,
                             channels[l].sin2_theta, channels[lp].sin2_theta,
                             channels[l].constants)

    bounds = []
    for l in (1, 2):
        lp = 2 if l == 1 else 1
        pc = phi(l, lp)
        ps = phi(l, l)
        cross = (math.inf if pc == 0.0
                 else math.sqrt(channels[lp].optical_depth) / (4.0 * pc))
        self_ = (math.inf if ps == 0.0
                 else math.sqrt(channels[l].optical_depth) / (4.0 * ps) + 1.0)
        bounds.append(PhotonBound(channel=l, cross_limit=cross,
                                  self_limit=self_))
    return bounds[0], bounds[1]
