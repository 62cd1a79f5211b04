"""Homodyne-detection statistics for the nondemolition photon count.

A coherent probe leaving the medium carries phase phi12 * n2, where n2 is
the signal photon number.  Single-port homodyne detection against a
reference of equal amplitude gives the average signal

    s(n) = 4 |alpha1|^2 sin^2(phi12 n / 2),   delta s(n) = sqrt(2 s(n)),

and photon numbers n <= n_max are distinguishable when phi12 * n_max <= pi
and consecutive signals are separated by more than the summed half
uncertainties.  The probe's own dephasing is reported separately
(propagation.self_phase_estimate) and never subtracted from the signal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Tuple

from .errors import PhaseWrapInfeasible


@dataclass(frozen=True)
class HomodyneOutcome:
    photon_n: int
    signal: float
    uncertainty: float
    distinguishable_from_prev: Optional[bool] = None  # None for n = 0


def homodyne_signal(alpha_sq: float, phi12: float, n: int) -> HomodyneOutcome:
    """Average detector signal and uncertainty for signal photon number n."""
    if alpha_sq <= 0:
        raise ValueError("probe strength |alpha1|^2 must be positive")
    if n < 0:
        raise ValueError("photon number must be >= 0")
    s = 4.0 * alpha_sq * math.sin(0.5 * phi12 * n) ** 2
    return HomodyneOutcome(photon_n=n, signal=s,
                           uncertainty=math.sqrt(2.0 * s))


def _gap_ok(alpha_sq: float, phi12: float, n: int) -> bool:
    a = homodyne_signal(alpha_sq, phi12, n)
    b = homodyne_signal(alpha_sq, phi12, n - 1)
    return a.signal - b.signal > 0.5 * (a.uncertainty + b.uncertainty)


@dataclass(frozen=True)
class DistinguishabilityResult:
    outcomes: Tuple[HomodyneOutcome, ...]
    phase_wrap_ok: bool
    feasible: bool


def distinguishability(alpha_sq: float, phi12: float,
                       n_max: int) -> DistinguishabilityResult:
    """Per-photon-number verdicts plus the overall feasibility.

    Feasible iff phi12 * n_max <= pi (no wrap-around ambiguity) and every
    consecutive pair (n, n-1), n = 1..n_max, is separated by more than the
    mean of the two uncertainties.
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    wrap_ok = phi12 * n_max <= math.pi
    outcomes = [homodyne_signal(alpha_sq, phi12, 0)]
    all_gaps = True
    for n in range(1, n_max + 1):
        ok = _gap_ok(alpha_sq, phi12, n)
        all_gaps &= ok
        out = homodyne_signal(alpha_sq, phi12, n)
        outcomes.append(HomodyneOutcome(
            photon_n=n, signal=out.signal, uncertainty=out.uncertainty,
            distinguishable_from_prev=ok))
    return DistinguishabilityResult(outcomes=tuple(outcomes),
                                    phase_wrap_ok=wrap_ok,
                                    feasible=wrap_ok and all_gaps)


def required_probe_strength(phi12: float, n_max: int,
                            rel_tol: float = 1e-6) -> float:
    """Smallest |alpha1|^2 for which all n <= n_max are distinguishable.

    The gap condition scales as |alpha|^2 on the left and |alpha| on the
    right, so feasibility is monotone in the probe strength and bisection
    applies.  Raises :class:`PhaseWrapInfeasible` when phi12 * n_max > pi.
    """
    if phi12 * n_max > math.pi:
        raise PhaseWrapInfeasible(
            f"phi12 * n_max = {phi12 * n_max:.6g} exceeds pi")

    def feasible(a2: float) -> bool:
        return all(_gap_ok(a2, phi12, n) for n in range(1, n_max + 1))

    hi = 1.0
    for _ in range(200):
        if feasible(hi):
            break
        hi *= 2.0
    else:
        raise PhaseWrapInfeasible("no finite probe strength found")
    lo = 0.0
    while hi - lo > rel_tol * hi:
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        if feasible(mid):
            hi = mid
        else:
            lo = mid
    return hi
