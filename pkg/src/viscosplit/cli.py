"""Command line front end.

Three subcommands:

  run <config.json> [--out DIR] [--seed N]   execute every cell in a config
  check <instance-id> [--seed N]             audit an instance's declared classes
  validate <config.json>                     parse and pre-validate a config

Exit codes: 0 success, 1 non-convergence / divergence / audit failure,
2 invalid configuration, 3 I/O failure.

A config is a JSON object {"seed": int?, "cells": [...]}, each cell

  {"id": "box-main", "algorithm": "main", "instance": "inclusion_box",
   "instance.dim": 2, "schedule.mu_bar": 0.5, "psi0": [0.9, 0.9],
   "tol": 1e-8, "max_iter": 100000}

Keys prefixed "instance." go to the instance builder; keys prefixed
"schedule." adjust the default schedule (mu_bar, strict_paper, interval,
or any of the six sequences as {"kind": ..., "scale": ...}).

Per cell the run writes <id>.csv with one row per recorded iteration and
<id>.json with the run summary.  Output is byte-deterministic for a fixed
config: floats are written via repr and JSON keys are sorted.
"""
from __future__ import annotations

import argparse
import dataclasses
import json
import re
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .hilbert import norm
from .monotone import (check_inverse_strongly_monotone,
                       check_resolvent_firmly_nonexpansive,
                       check_wang_contraction)
from .problems import catalog, default_schedule_for, load_instance
from .schedules import InfeasibleScheduleError, ParamSeq, validate
from .setvalued import (KIND_DEMICONTRACTIVE, KIND_QUASI_NONEXPANSIVE,
                        KIND_STRICTLY_PSEUDOCONTRACTIVE, SelectionRule,
                        check_demicontractive, check_quasi_nonexpansive,
                        check_strictly_pseudocontractive)
from .solvers import ScheduleValidationError, run as run_solver

CSV_HEADER = ("n,psi_norm,dist_to_solution,delta_residual_T1,"
              "pi_residual_T2,phi_residual_T3,fb_residual,fejer_ok,"
              "step_size_alpha")

_CELL_ID = re.compile(r"^[A-Za-z0-9._-]+$")

_SEQ_KINDS = {
    "constant": ParamSeq.constant,
    "inverse": ParamSeq.inverse,
    "inverse_square": ParamSeq.inverse_square,
    "approaching_one": ParamSeq.approaching_one,
}

_PLAIN_CELL_KEYS = {"id", "algorithm", "instance", "psi0", "tol",
                    "max_iter", "sow_use_phi", "record_stride"}

_ALGORITHMS = ("main", "sow", "fc", "forward_backward")


class ConfigError(ValueError):
    pass


@dataclass
class Cell:
    id: str
    algorithm: str
    instance_id: str
    problem: object
    schedule: object
    psi0: object
    tol: float
    max_iter: int
    sow_use_phi: bool
    record_stride: int | None
    seed: int | None


def _fmt(x) -> str:
    return repr(float(x))


def _build_schedule(problem, overrides: dict):
    kwargs = {}
    if "mu_bar" in overrides:
        kwargs["mu_bar"] = float(overrides.pop("mu_bar"))
    if "strict_paper" in overrides:
        kwargs["strict_paper"] = bool(overrides.pop("strict_paper"))
    schedule = default_schedule_for(problem, **kwargs)
    interval = overrides.pop("interval", None)
    seq_updates = {}
    for key, spec in overrides.items():
        if key not in ("alpha", "theta", "beta", "gamma", "mu", "lam"):
            raise ConfigError(f"unknown schedule key {key!r}")
        if (not isinstance(spec, dict) or "kind" not in spec
                or spec["kind"] not in _SEQ_KINDS):
            raise ConfigError(
                f"schedule.{key} must be an object with kind in "
                f"{sorted(_SEQ_KINDS)}")
        seq_updates[key] = _SEQ_KINDS[spec["kind"]](
            float(spec.get("scale", 1.0)))
    if seq_updates or interval is not None:
        if interval is not None:
            if (not isinstance(interval, (list, tuple)) or len(interval) != 2):
                raise ConfigError("schedule.interval must be [a, b]")
            seq_updates["interval"] = (float(interval[0]), float(interval[1]))
        elif "lam" in seq_updates and seq_updates["lam"].kind == "constant":
            c = seq_updates["lam"].scale
            seq_updates["interval"] = (c, c)
        schedule = dataclasses.replace(schedule, **seq_updates)
    return schedule


def _build_cell(raw: dict, default_seed) -> Cell:
    if not isinstance(raw, dict):
        raise ConfigError("each cell must be an object")
    unknown = [k for k in raw
               if k not in _PLAIN_CELL_KEYS
               and not k.startswith(("instance.", "schedule."))]
    if unknown:
        raise ConfigError(f"unknown cell keys: {sorted(unknown)}")
    for key in ("id", "algorithm", "instance"):
        if key not in raw:
            raise ConfigError(f"cell is missing required key {key!r}")
    cell_id = raw["id"]
    if not isinstance(cell_id, str) or not _CELL_ID.match(cell_id):
        raise ConfigError(
            f"cell id {cell_id!r} must match [A-Za-z0-9._-]+")
    algorithm = raw["algorithm"]
    if algorithm not in _ALGORITHMS:
        raise ConfigError(
            f"unknown algorithm {algorithm!r}; expected one of {_ALGORITHMS}")

    inst_kwargs = {k.split(".", 1)[1]: v for k, v in raw.items()
                   if k.startswith("instance.")}
    if "selection" in inst_kwargs:
        sel = inst_kwargs["selection"]
        try:
            inst_kwargs["selection"] = SelectionRule(sel)
        except ValueError:
            raise ConfigError(
                f"unknown selection rule {sel!r}; expected one of "
                f"{[r.value for r in SelectionRule]}") from None
    try:
        problem = load_instance(raw["instance"], **inst_kwargs)
    except KeyError as exc:
        raise ConfigError(str(exc.args[0])) from None
    except TypeError as exc:
        raise ConfigError(
            f"bad parameters for instance {raw['instance']!r}: {exc}") from None
    except ValueError as exc:
        raise ConfigError(
            f"invalid instance parameters: {exc}") from None

    sched_overrides = {k.split(".", 1)[1]: v for k, v in raw.items()
                       if k.startswith("schedule.")}
    try:
        schedule = _build_schedule(problem, sched_overrides)
    except InfeasibleScheduleError as exc:
        raise ConfigError(f"infeasible schedule: {exc}") from None
    report = validate(schedule, problem.params)
    if not report.ok:
        names = "; ".join(c.name for c in report.failures())
        raise ConfigError(f"schedule for cell {cell_id!r} rejected: {names}")

    psi0 = raw.get("psi0")
    if psi0 is not None:
        psi0 = np.asarray(psi0, dtype=float).reshape(-1)
        if psi0.size != problem.dim:
            raise ConfigError(
                f"psi0 has dimension {psi0.size}, instance needs {problem.dim}")
    tol = float(raw.get("tol", 1e-8))
    if tol <= 0:
        raise ConfigError("tol must be positive")
    max_iter = raw.get("max_iter", 100_000)
    if not isinstance(max_iter, int) or max_iter < 0:
        raise ConfigError("max_iter must be a nonnegative integer")
    stride = raw.get("record_stride")
    if stride is not None and (not isinstance(stride, int) or stride < 1):
        raise ConfigError("record_stride must be a positive integer or null")

    return Cell(id=cell_id, algorithm=algorithm, instance_id=raw["instance"],
                problem=problem, schedule=schedule, psi0=psi0, tol=tol,
                max_iter=max_iter,
                sow_use_phi=bool(raw.get("sow_use_phi", False)),
                record_stride=stride, seed=default_seed)


def parse_config(text: str, seed_override=None) -> list[Cell]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"not valid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise ConfigError("top level must be a JSON object")
    unknown = [k for k in data if k not in ("cells", "seed")]
    if unknown:
        raise ConfigError(f"unknown top-level keys: {sorted(unknown)}")
    cells_raw = data.get("cells")
    if not isinstance(cells_raw, list) or not cells_raw:
        raise ConfigError("config needs a nonempty 'cells' list")
    seed = seed_override if seed_override is not None else data.get("seed")
    if seed is not None and not isinstance(seed, int):
        raise ConfigError("seed must be an integer")
    cells = [_build_cell(raw, seed) for raw in cells_raw]
    ids = [c.id for c in cells]
    if len(set(ids)) != len(ids):
        raise ConfigError(f"duplicate cell ids: {sorted(ids)}")
    return cells


# --------------------------------------------------------------------------
# run
# --------------------------------------------------------------------------

def _write_csv(path: Path, report) -> None:
    lines = [CSV_HEADER]
    for st in report.trajectory:
        fejer = "nan" if st.fejer_ok is None else str(int(st.fejer_ok))
        lines.append(",".join([
            str(st.n),
            _fmt(norm(st.psi)),
            _fmt(st.dist_to_solution),
            _fmt(st.residual_t1),
            _fmt(st.residual_t2),
            _fmt(st.residual_t3),
            _fmt(st.fb_residual),
            fejer,
            _fmt(st.alpha),
        ]))
    path.write_text("\n".join(lines) + "\n")


def _write_summary(path: Path, cell: Cell, report) -> None:
    payload = {"cell": cell.id, "seed": cell.seed, **report.summary_dict()}
    path.write_text(json.dumps(payload, sort_keys=True, indent=2) + "\n")


def _cmd_run(args) -> int:
    try:
        text = Path(args.config).read_text()
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return 3
    cells = parse_config(text, seed_override=args.seed)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)

    all_ok = True
    for cell in cells:
        try:
            report = run_solver(
                cell.algorithm, cell.problem, cell.schedule, psi0=cell.psi0,
                tol=cell.tol, max_iter=cell.max_iter,
                sow_use_phi=cell.sow_use_phi,
                record_stride=cell.record_stride)
        except ScheduleValidationError as exc:
            raise ConfigError(str(exc)) from None
        _write_csv(out_dir / f"{cell.id}.csv", report)
        _write_summary(out_dir / f"{cell.id}.json", cell, report)
        clean = (report.terminated_by == "tolerance"
                 and report.fejer_violations == 0
                 and report.bound_violations == 0)
        all_ok = all_ok and clean
        print(f"cell {cell.id}: {cell.algorithm} on {cell.instance_id} "
              f"-> {report.terminated_by} after {report.iterations} "
              f"iterations, fejer_violations={report.fejer_violations}, "
              f"bound_violations={report.bound_violations}")
    return 0 if all_ok else 1


# --------------------------------------------------------------------------
# check
# --------------------------------------------------------------------------

def _sample_points(rng, dim: int, count: int, span: float = 5.0):
    return [span * (2.0 * rng.random(dim) - 1.0) for _ in range(count)]


def _print_audit(result) -> bool:
    tag = "ok" if result.passed else "FAIL"
    note = f" [{result.note}]" if result.note else ""
    print(f"[{tag}] {result.name}: worst slack {result.worst_slack:g} "
          f"over {result.checked} checks{note}")
    return result.passed


def _cmd_check(args) -> int:
    try:
        problem = load_instance(args.instance)
    except KeyError as exc:
        print(f"config error: {exc.args[0]}", file=sys.stderr)
        return 2
    rng = np.random.default_rng(args.seed)
    points = _sample_points(rng, problem.dim, 200)
    pairs = list(zip(_sample_points(rng, problem.dim, 200),
                     _sample_points(rng, problem.dim, 200)))
    ok = True

    for i, t in enumerate(problem.maps, start=1):
        label = t.name or f"T{i}"
        if t.kind == KIND_DEMICONTRACTIVE:
            res = check_demicontractive(t, t.constant, points)
        elif t.kind == KIND_STRICTLY_PSEUDOCONTRACTIVE:
            res = check_strictly_pseudocontractive(t, t.constant, pairs)
        else:
            res = check_quasi_nonexpansive(t, points)
        res.name = f"T{i} ({label}) {res.name}"
        ok = _print_audit(res) and ok

    ism = problem.forward.inverse_strong_monotonicity
    if ism:
        res = check_inverse_strongly_monotone(problem.forward, ism, pairs)
        res.name = f"forward {res.name} (alpha={ism:g})"
        ok = _print_audit(res) and ok

    lam = problem.certification_lambda()
    res = check_resolvent_firmly_nonexpansive(problem.inclusion, lam, pairs)
    res.name = f"inclusion {res.name} (lambda={lam:g})"
    ok = _print_audit(res) and ok

    p = problem.params
    res = check_wang_contraction(problem.strong, p.eta, t=0.5, pairs=pairs)
    res.name = f"strong {res.name} (eta={p.eta:g})"
    ok = _print_audit(res) and ok

    for q in problem.known_common_points:
        defects = problem.common_point_defects(q)
        tag = "ok" if not defects else "FAIL"
        detail = "; ".join(defects) if defects else "certified"
        print(f"[{tag}] common point {np.asarray(q).tolist()}: {detail}")
        ok = ok and not defects

    report = validate(default_schedule_for(problem), problem.params)
    tag = "ok" if report.ok else "FAIL"
    print(f"[{tag}] default schedule admissibility")
    if not report.ok:
        print(report.summary())
    ok = ok and report.ok

    return 0 if ok else 1


# --------------------------------------------------------------------------
# validate
# --------------------------------------------------------------------------

def _cmd_validate(args) -> int:
    try:
        text = Path(args.config).read_text()
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return 3
    cells = parse_config(text)
    for cell in cells:
        print(f"cell {cell.id}: algorithm={cell.algorithm} "
              f"instance={cell.instance_id} dim={cell.problem.dim} "
              f"tol={cell.tol:g} max_iter={cell.max_iter}")
    print(f"{len(cells)} cell(s) valid")
    return 0


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="viscosplit",
        description="Viscosity forward-backward splitting runs and audits.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="execute every cell of a config")
    p_run.add_argument("config")
    p_run.add_argument("--out", default="out", help="output directory")
    p_run.add_argument("--seed", type=int, default=None)

    p_check = sub.add_parser("check", help="audit a catalog instance")
    p_check.add_argument("instance",
                         help="one of: " + ", ".join(sorted(catalog())))
    p_check.add_argument("--seed", type=int, default=0)

    p_val = sub.add_parser("validate", help="parse and validate a config")
    p_val.add_argument("config")
    return parser


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        if args.command == "run":
            return _cmd_run(args)
        if args.command == "check":
            return _cmd_check(args)
        return _cmd_validate(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
