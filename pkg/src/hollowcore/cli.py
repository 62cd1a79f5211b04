"""Command-line scenario runner.

Commands
--------
run <file>          execute one scenario (phase gate, QND readout, potential
                    curve, or sweep); the constraint ledger always precedes
                    the results
reproduce-paper     compute the bundled operating points and compare every
                    headline number against its published target
potential           dump the reduced interaction-kernel curve
sweep <file>        run a sweep scenario (also reachable through `run`)

Exit codes: 0 success, 1 parse/usage error, 2 strict-constraint failure
(in --strict mode, the default), 3 numerical non-convergence.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import constraints as constraints_mod
from . import propagation, qnd
from .constraints import check_all, max_photon_number
from .ddi import DdiCoupling, Potential1D
from .errors import (
    ConstraintFailure,
    HollowCoreError,
    QuadratureNonConvergence,
    ScenarioParseError,
)
from .scenario import ExperimentKind, Scenario, SCHEMA, _as_int, bundled_scenario

DEFAULT_QUAD_TOL = 1e-8


def _fmt(x) -> str:
    if isinstance(x, bool):
        return "yes" if x else "no"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if x is None:
        return "unbounded"
    return f"{float(x):.9g}"


@dataclass(frozen=True)
class Row:
    name: str
    value: object
    unit: str
    source: str

    def formatted(self) -> str:
        return f"{self.name} | {_fmt(self.value)} | {self.unit} | {self.source}"


@dataclass
class ResultBundle:
    title: str
    rows: List[Row] = field(default_factory=list)
    report: Optional[constraints_mod.ConstraintReport] = None
    extra_text: List[str] = field(default_factory=list)
    csv_files: Dict[str, str] = field(default_factory=dict)
    scalars: Dict[str, object] = field(default_factory=dict)

    def to_text(self) -> str:
        parts = [f"== {self.title} =="]
        if self.report is not None:
            parts.append(self.report.to_text())
        if self.rows:
            parts.append("quantity | value | unit | source")
            parts.extend(r.formatted() for r in self.rows)
        parts.extend(self.extra_text)
        return "\n".join(parts)


def _medium_rows(pair) -> List[Row]:
    ens = pair.ensemble
    rows = [Row("effective_density", ens.effective_density / 1e6, "cm^-3",
                "medium.effective_density")]
    for ch in (pair.channel1, pair.channel2):
        l = ch.label
        rows += [
            Row(f"optical_depth_{l}", ch.optical_depth, "1",
                "medium.absorption_coefficient"),
            Row(f"group_velocity_{l}", ch.group_velocity, "m/s",
                "medium.group_velocity"),
            Row(f"eit_bandwidth_{l}", ch.eit_bandwidth, "rad/s",
                "medium.eit_bandwidth"),
            Row(f"sin2_theta_{l}", ch.sin2_theta, "1",
                "medium.mixing_angle_sin2"),
        ]
    return rows


def run_phase_gate(scenario: Scenario, quad_tol: float) -> ResultBundle:
    pair = scenario.pair()
    pulse1, pulse2 = scenario.pulses(pair)
    couplings = scenario.couplings()
    report = check_all(pair, pulse1, pulse2, couplings)

    geo = pair.geometry
    w, L, v = geo.effective_width, geo.length, pair.mean_velocity
    phi_closed = propagation.uniform_phase(
        couplings.c12, w, v, pair.channel1.sin2_theta,
        pair.channel2.sin2_theta)
    phi_numeric = propagation.accumulated_phase(
        couplings.c12, w, v, pair.channel1.sin2_theta,
        pair.channel2.sin2_theta, z1=L, z2=0.0, t=L / v, quad_tol=quad_tol)
    deviation = abs(phi_numeric - phi_closed) / phi_closed
    b1, b2 = max_photon_number(pair, couplings)

    bundle = ResultBundle(title=scenario.values.get("title", "phase gate"))
    bundle.report = report
    bundle.rows = _medium_rows(pair) + [
        Row("c12", couplings.c12, "J m^3", "ddi.DdiCoupling.from_states"),
        Row("phi12_closed", phi_closed, "rad", "propagation.uniform_phase"),
        Row("phi12_numeric", phi_numeric, "rad",
            "propagation.accumulated_phase"),
        Row("phi12_closed_vs_numeric", deviation, "rel",
            "propagation.accumulated_phase"),
        Row("photon_bound_1", b1.n_max, "photons",
            "constraints.max_photon_number"),
        Row("photon_bound_2", b2.n_max, "photons",
            "constraints.max_photon_number"),
    ]
    bundle.scalars = {
        "phi12_closed_rad": phi_closed,
        "phi12_numeric_rad": phi_numeric,
        "strict_ok": not report.strict_violations,
        "all_ok": report.all_satisfied(),
    }
    return bundle


def run_qnd(scenario: Scenario, quad_tol: float) -> ResultBundle:
    pair = scenario.pair()
    pulse1, pulse2 = scenario.pulses(pair)
    couplings = scenario.couplings()
    report = check_all(pair, pulse1, pulse2, couplings)

    geo = pair.geometry
    w, v = geo.effective_width, pair.mean_velocity
    phi = propagation.uniform_phase(
        couplings.c12, w, v, pair.channel1.sin2_theta,
        pair.channel2.sin2_theta)
    alpha_sq = pulse1.content.alpha_sq
    self_phase = propagation.self_phase_estimate(
        pulse1.content.alpha0, couplings.c11, w, v, pair.channel1.sin2_theta)
    n_max = scenario.values["qnd.n_max"]
    verdict = qnd.distinguishability(alpha_sq, phi, n_max)
    try:
        needed = qnd.required_probe_strength(phi, n_max)
    except HollowCoreError:
        needed = math.nan

    bundle = ResultBundle(title=scenario.values.get("title", "qnd readout"))
    bundle.report = report
    bundle.rows = _medium_rows(pair) + [
        Row("c12", couplings.c12, "J m^3", "ddi.DdiCoupling.from_states"),
        Row("phi12_per_photon", phi, "rad", "propagation.uniform_phase"),
        Row("probe_self_phase", self_phase, "rad",
            "propagation.self_phase_estimate"),
        Row("probe_alpha_sq", alpha_sq, "1", "scenario.pulse1"),
        Row("qnd_feasible", verdict.feasible, "bool",
            "qnd.distinguishability"),
        Row("required_alpha_sq", needed, "1", "qnd.required_probe_strength"),
    ]
    table = ["n | signal | uncertainty | distinguishable_from_n-1"]
    csv_lines = ["n,signal,uncertainty,distinguishable_from_prev"]
    for out in verdict.outcomes:
        flag = ("-" if out.distinguishable_from_prev is None
                else _fmt(out.distinguishable_from_prev))
        table.append(f"{out.photon_n} | {_fmt(out.signal)} | "
                     f"{_fmt(out.uncertainty)} | {flag}")
        csv_lines.append(f"{out.photon_n},{_fmt(out.signal)},"
                         f"{_fmt(out.uncertainty)},{flag}")
    bundle.extra_text.append("\n".join(table))
    bundle.csv_files["homodyne.csv"] = "\n".join(csv_lines) + "\n"
    bundle.scalars = {
        "phi12_rad": phi,
        "self_phase_rad": self_phase,
        "feasible": verdict.feasible,
        "required_alpha_sq": needed,
        "strict_ok": not report.strict_violations,
        "all_ok": report.all_satisfied(),
    }
    return bundle


def run_potential(zeta_min: float, zeta_max: float, points: int) -> ResultBundle:
    if points < 2:
        raise ScenarioParseError("potential curve needs at least 2 points")
    if zeta_max <= zeta_min:
        raise ScenarioParseError("zeta range must be increasing")
    # reduced units: any positive coupling/width produce the same curve
    pot = Potential1D(coupling=DdiCoupling.from_dipoles(1e-29, 1e-29),
                      effective_width=1e-6)
    z, g = pot.curve(zeta_min, zeta_max, points)
    fwhm = pot.fwhm_zeta()
    lines = ["zeta,delta_reduced"]
    lines += [f"{zi:.9g},{gi:.9g}" for zi, gi in zip(z, g)]

    bundle = ResultBundle(title="effective 1D potential, reduced units")
    bundle.rows = [
        Row("delta_at_zero", float(g[np.argmin(np.abs(z))]) if 0 >= zeta_min
            and 0 <= zeta_max else float("nan"), "reduced",
            "ddi.Potential1D.value_reduced"),
        Row("minimum", float(g.min()), "reduced",
            "ddi.Potential1D.value_reduced"),
        Row("fwhm", fwhm, "zeta", "ddi.Potential1D.fwhm_zeta"),
        Row("points", points, "1", "cli.run_potential"),
    ]
    bundle.csv_files["potential_curve.csv"] = "\n".join(lines) + "\n"
    bundle.scalars = {"fwhm": fwhm, "minimum": float(g.min())}
    return bundle


def run_sweep(scenario: Scenario, quad_tol: float,
              jobs: Optional[int] = None) -> ResultBundle:
    param = scenario.values["sweep.parameter"]
    start = scenario.values["sweep.start"]
    stop = scenario.values["sweep.stop"]
    steps = scenario.values["sweep.steps"]
    inner_kind = scenario.values["sweep.experiment"]

    base = {k: v for k, v in scenario.values.items()
            if not k.startswith("sweep.")}
    base["experiment"] = inner_kind

    sweep_values = np.linspace(start, stop, steps)
    if SCHEMA[param] is _as_int:
        sweep_values = np.round(sweep_values).astype(int)

    runner = run_phase_gate if inner_kind == "phase_gate" else run_qnd

    def run_point(value):
        point = Scenario.from_mapping({**base, param: value})
        return runner(point, quad_tol)

    workers = jobs or min(8, os.cpu_count() or 1)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        bundles = list(pool.map(run_point, sweep_values))

    scalar_names = sorted(bundles[0].scalars)
    lines = [",".join([param] + scalar_names)]
    for value, b in zip(sweep_values, bundles):
        lines.append(",".join([_fmt(value)]
                              + [_fmt(b.scalars[n]) for n in scalar_names]))

    bundle = ResultBundle(title=f"sweep of {param} ({steps} points)")
    bundle.extra_text.append("\n".join(lines))
    bundle.csv_files["sweep.csv"] = "\n".join(lines) + "\n"
    bundle.scalars = {"points": steps}
    return bundle


def run_scenario(scenario: Scenario, quad_tol: float = DEFAULT_QUAD_TOL,
                 jobs: Optional[int] = None) -> ResultBundle:
    if scenario.experiment is ExperimentKind.PHASE_GATE:
        return run_phase_gate(scenario, quad_tol)
    if scenario.experiment is ExperimentKind.QND:
        return run_qnd(scenario, quad_tol)
    if scenario.experiment is ExperimentKind.POTENTIAL:
        return run_potential(scenario.values["potential.zeta_min"],
                             scenario.values["potential.zeta_max"],
                             scenario.values["potential.points"])
    return run_sweep(scenario, quad_tol, jobs)


# -- reproduce-paper ----------------------------------------------------------

# (name, unit, target, relative tolerance, source)
REFERENCE_TARGETS: Tuple[Tuple[str, str, float, float, str], ...] = (
    ("effective_density", "cm^-3", 2.0e11, 0.05, "medium.effective_density"),
    ("optical_depth_1", "1", 600.0, 0.03, "medium.absorption_coefficient"),
    ("optical_depth_2", "1", 580.0, 0.03, "medium.absorption_coefficient"),
    ("group_velocity_1", "m/s", 100.0, 0.02, "medium.group_velocity"),
    ("group_velocity_2", "m/s", 100.0, 0.02, "medium.group_velocity"),
    ("eit_bandwidth_1", "rad/s", 1.2e5, 0.05, "medium.eit_bandwidth"),
    ("eit_bandwidth_2", "rad/s", 1.2e5, 0.05, "medium.eit_bandwidth"),
    ("phi12_gate", "rad", math.pi, 0.05, "propagation.uniform_phase"),
    ("phi12_qnd", "rad", 0.7, 0.05, "propagation.uniform_phase"),
)


@dataclass(frozen=True)
class ReferenceRow:
    name: str
    unit: str
    computed: float
    target: float
    rel_tol: float
    source: str

    @property
    def deviation(self) -> float:
        return abs(self.computed - self.target) / abs(self.target)

    @property
    def within(self) -> bool:
        return self.deviation <= self.rel_tol


def reproduce_paper(quad_tol: float = DEFAULT_QUAD_TOL
                    ) -> Tuple[List[ReferenceRow], bool]:
    """Compute all headline numbers from the bundled scenarios and compare
    them against their targets.  Returns (rows, qnd_feasible)."""
    gate = bundled_scenario("paper_phase_gate")
    qnd_scn = bundled_scenario("paper_qnd")
    gate_bundle = run_phase_gate(gate, quad_tol)
    qnd_bundle = run_qnd(qnd_scn, quad_tol)

    gate_rows = {r.name: r for r in gate_bundle.rows}
    computed = {
        "effective_density": gate_rows["effective_density"].value,
        "optical_depth_1": gate_rows["optical_depth_1"].value,
        "optical_depth_2": gate_rows["optical_depth_2"].value,
        "group_velocity_1": gate_rows["group_velocity_1"].value,
        "group_velocity_2": gate_rows["group_velocity_2"].value,
        "eit_bandwidth_1": gate_rows["eit_bandwidth_1"].value,
        "eit_bandwidth_2": gate_rows["eit_bandwidth_2"].value,
        "phi12_gate": gate_bundle.scalars["phi12_closed_rad"],
        "phi12_qnd": qnd_bundle.scalars["phi12_rad"],
    }
    rows = [ReferenceRow(name=name, unit=unit, computed=computed[name],
                         target=target, rel_tol=tol, source=source)
            for name, unit, target, tol, source in REFERENCE_TARGETS]
    return rows, bool(qnd_bundle.scalars["feasible"])


def _print_reference_table(rows: List[ReferenceRow], feasible: bool) -> None:
    print("== reproduce-paper ==")
    print("quantity | computed | target | rel_deviation | within_tol | "
          "unit | source")
    for r in rows:
        print(f"{r.name} | {_fmt(r.computed)} | {_fmt(r.target)} | "
              f"{_fmt(r.deviation)} | {_fmt(r.within)} | {r.unit} | "
              f"{r.source}")
    print(f"qnd_feasible_n_le_2 | {_fmt(feasible)} | yes | - | "
          f"{_fmt(feasible)} | bool | qnd.distinguishability")


# -- argument parsing and dispatch -------------------------------------------


class _Parser(argparse.ArgumentParser):
    """argparse that exits with code 1 on usage errors (code 2 is reserved
    for constraint failures)."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _build_parser() -> _Parser:
    parser = _Parser(prog="hollowcore",
                     description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        mode = p.add_mutually_exclusive_group()
        mode.add_argument("--strict", dest="strict", action="store_true",
                          default=True,
                          help="exit 2 when a strict constraint fails (default)")
        mode.add_argument("--warn", dest="strict", action="store_false",
                          help="report constraint failures without failing")
        p.add_argument("--out", metavar="DIR", default=None,
                       help="directory for csv/report dumps")
        p.add_argument("--tol", type=float, default=DEFAULT_QUAD_TOL,
                       metavar="REL",
                       help="relative quadrature tolerance override")

    p_run = sub.add_parser("run", help="run a scenario file")
    p_run.add_argument("file")
    common(p_run)

    p_rep = sub.add_parser("reproduce-paper",
                           help="compare bundled operating points to targets")
    common(p_rep)

    p_pot = sub.add_parser("potential", help="dump the reduced kernel curve")
    p_pot.add_argument("--zeta-min", type=float, default=-6.0)
    p_pot.add_argument("--zeta-max", type=float, default=6.0)
    p_pot.add_argument("--points", type=int, default=601)
    common(p_pot)

    p_sw = sub.add_parser("sweep", help="run a sweep scenario file")
    p_sw.add_argument("file")
    p_sw.add_argument("--jobs", type=int, default=None,
                      help="parallel workers for sweep points")
    common(p_sw)
    return parser


def _write_outputs(bundle: ResultBundle, out_dir: Optional[str]) -> None:
    if out_dir is None:
        return
    os.makedirs(out_dir, exist_ok=True)
    if bundle.report is not None:
        with open(os.path.join(out_dir, "constraints.txt"), "w",
                  encoding="utf-8") as fh:
            fh.write(bundle.report.to_text() + "\n")
    if bundle.rows:
        with open(os.path.join(out_dir, "results.csv"), "w",
                  encoding="utf-8") as fh:
            fh.write("quantity,value,unit,source\n")
            for r in bundle.rows:
                fh.write(f"{r.name},{_fmt(r.value)},{r.unit},{r.source}\n")
    for name, payload in bundle.csv_files.items():
        with open(os.path.join(out_dir, name), "w", encoding="utf-8") as fh:
            fh.write(payload)


def _gate_on_constraints(bundle: ResultBundle, strict: bool) -> None:
    if strict and bundle.report is not None and bundle.report.strict_violations:
        names = ", ".join(e.name for e in bundle.report.strict_violations)
        raise ConstraintFailure(f"strict constraints violated: {names}")


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    if not 1e-12 < args.tol < 1e-3:
        print("error: --tol must lie in (1e-12, 1e-3)", file=sys.stderr)
        return 1

    try:
        if args.command == "run":
            scenario = Scenario.from_file(args.file)
            bundle = run_scenario(scenario, quad_tol=args.tol)
            print(bundle.to_text())
            _write_outputs(bundle, args.out)
            _gate_on_constraints(bundle, args.strict)
        elif args.command == "reproduce-paper":
            rows, feasible = reproduce_paper(quad_tol=args.tol)
            _print_reference_table(rows, feasible)
        elif args.command == "potential":
            bundle = run_potential(args.zeta_min, args.zeta_max, args.points)
            print(bundle.to_text())
            _write_outputs(bundle, args.out)
        elif args.command == "sweep":
            scenario = Scenario.from_file(args.file)
            if scenario.experiment is not ExperimentKind.SWEEP:
                raise ScenarioParseError(
                    "the sweep command needs a scenario with "
                    "experiment = sweep")
            bundle = run_sweep(scenario, quad_tol=args.tol, jobs=args.jobs)
            print(bundle.to_text())
            _write_outputs(bundle, args.out)
    except ScenarioParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ConstraintFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except QuadratureNonConvergence as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    return 0


def entry_point():  # console-script shim
    raise SystemExit(main())


if __name__ == "__main__":
    entry_point()
