"""Built-in test problems, a sampling verifier and the tolerance-sweep harness."""

from __future__ import annotations

import configparser
import csv
import enum
import importlib.util
import logging
import time
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from .feasibility import box_set, hyperplane_box_set
from .problem import (SelectionContext, SolverParams, Strategy, Validation, VIProblem,
                      as_point, interval_map, membership)
from .solver import SolveReport, solve

__all__ = [
    "build_example41",
    "build_example42",
    "verify_solution",
    "ProblemKind",
    "ExperimentConfig",
    "ConfigError",
    "example_config",
    "load_config",
    "run_bench",
    "SUMMARY_COLUMNS",
    "TRACE_COLUMNS",
]

log = logging.getLogger(__name__)

SUMMARY_COLUMNS = ("epsilon", "iterations", "seconds", "final_residual", "status")
TRACE_COLUMNS = ("n", "residual_norm", "error_to_solution", "lambda", "m", "cumulative_seconds")
VERIFY_TOL = 1e-6


def build_example41() -> VIProblem:
    """Box ``[0, 10]^2`` with ``A(x) = {(x1^2 + t, x2^2) : t in [0, 1/5]}``; solves at the origin."""
    C = box_set([0.0, 0.0], [10.0, 10.0])
    A = interval_map(lambda x: np.asarray(x, dtype=float) ** 2, 0, 0.0, 0.2,
                     "(x1^2 + t, x2^2), t in [0, 0.2]")
    return VIProblem(C, A, 2, known_solution=np.zeros(2), name="example41")


def build_example42() -> VIProblem:
    """``{x in R^4 : sum(x) = 1, -10 <= x <= 10}`` with ``A(x) = {(t + x1, x1, x1, x1) : t in [1/10, 1/5]}``.

    Every point of the face ``x1 = -10`` solves it, so no single known
    solution is attached.
    """
    C = hyperplane_box_set(np.full(4, -10.0), np.full(4, 10.0), 1.0)
    A = interval_map(lambda x: np.full(4, float(x[0])), 0, 0.1, 0.2,
                     "(t + x1, x1, x1, x1), t in [0.1, 0.2]")
    return VIProblem(C, A, 4, name="example42")


def _candidates(problem: VIProblem, x) -> list:
    out = []
    for s in (Strategy.LOWER_END, Strategy.MIDPOINT, Strategy.UPPER_END):
        w = problem.map.select(x, SelectionContext(s))
        if not any(np.array_equal(w, v) for v in out):
            out.append(w)
    return out


def verify_solution(problem: VIProblem, x, samples: int = 10_000, seed: int = 0,
                    tol: float = VERIFY_TOL):
    """Brute-force check of ``<w, y - x> >= 0`` over sampled feasible ``y``.

    The members of ``A(x)`` tried are the selections at the low end, the
    middle and the high end of the parameter interval. ``x`` passes if one of
    them keeps the worst sampled violation within ``tol``. The vertices of
    the bounding box, projected onto ``C``, are always included in the sample.

    Returns
    -------
    (passed, worst_violation)
    """
    if samples < 1:
        raise ValueError("samples must be at least 1")
    x = as_point(x, problem.dim)
    C = problem.set
    if not membership(C, x):
        raise ValueError(f"point {x} is not feasible (g = {C.g(x):.3e})")
    rng = np.random.default_rng(seed)
    ys = C.sample(rng, samples)
    if problem.dim <= 10 and C.bounds is not None:
        lo, hi = C.bounds
        corners = np.array(np.meshgrid(*zip(lo, hi))).reshape(problem.dim, -1).T
        ys = np.vstack([ys, [C.project(c) for c in corners]])
    d = ys - x
    worst = min(float(np.max(np.maximum(-(d @ w), 0.0))) for w in _candidates(problem, x))
    return worst <= tol, worst


# --------------------------------------------------------------------------
# experiment configuration
# --------------------------------------------------------------------------


class ConfigError(ValueError):
    """The experiment configuration is malformed."""


class ProblemKind(enum.Enum):
    EXAMPLE41 = "example41"
    EXAMPLE42 = "example42"
    CUSTOM = "custom"


@dataclass(frozen=True)
class ExperimentConfig:
    problem: ProblemKind
    params: SolverParams
    x0: tuple
    x1: tuple
    tolerances: tuple
    output: Path
    custom_path: Optional[Path] = None
    verify_samples: int = 10_000
    seed: int = 0

    def __post_init__(self):
        if not self.tolerances:
            raise ConfigError("tolerance list is empty")
        if any(b >= a for a, b in zip(self.tolerances, self.tolerances[1:])):
            raise ConfigError(f"tolerances must be strictly decreasing: {self.tolerances}")
        if any(e <= 0 for e in self.tolerances):
            raise ConfigError("tolerances must be positive")
        if self.problem is ProblemKind.CUSTOM and self.custom_path is None:
            raise ConfigError("custom problem needs a 'custom' path")

    @property
    def selection(self) -> SelectionContext:
        return self.params.selection

    def build_problem(self) -> VIProblem:
        if self.problem is ProblemKind.EXAMPLE41:
            return build_example41()
        if self.problem is ProblemKind.EXAMPLE42:
            return build_example42()
        return _load_custom(self.custom_path)


def _load_custom(path: Path) -> VIProblem:
    """Import a Python file and call its ``build_problem()``."""
    spec = importlib.util.spec_from_file_location("mvi_custom_problem", path)
    if spec is None or spec.loader is None:
        raise ConfigError(f"cannot import custom problem from {path}")
    module = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(module)
    if not hasattr(module, "build_problem"):
        raise ConfigError(f"{path} does not define build_problem()")
    problem = module.build_problem()
    if not isinstance(problem, VIProblem):
        raise ConfigError(f"{path}: build_problem() must return a VIProblem")
    return problem


_DEFAULTS = {
    ProblemKind.EXAMPLE41: dict(mu=0.98, gamma=0.91, alpha=0.03, start=(10.0, 10.0),
                                tolerances=(1e-1, 1e-2, 1e-3, 1e-4)),
    ProblemKind.EXAMPLE42: dict(mu=0.14, gamma=0.10, alpha=0.72, start=(1.0, 0.0, 0.0, 0.0),
                                tolerances=(1e-3, 1e-5, 1e-7)),
}


def example_config(which: str, tolerances: Optional[Sequence[float]] = None,
                   output="bench_out", seed: int = 0,
                   strategy: Strategy = Strategy.MIDPOINT) -> ExperimentConfig:
    """The published parameter set for example ``"41"`` or ``"42"``."""
    kind = {"41": ProblemKind.EXAMPLE41, "42": ProblemKind.EXAMPLE42}.get(str(which))
    if kind is None:
        raise ConfigError(f"unknown example {which!r}; expected 41 or 42")
    d = _DEFAULTS[kind]
    params = SolverParams(mu=d["mu"], gamma=d["gamma"], alpha=d["alpha"],
                          epsilon=d["tolerances"][-1],
                          selection=SelectionContext(strategy, 0, seed))
    tols = tuple(tolerances) if tolerances is not None else d["tolerances"]
    return ExperimentConfig(kind, params, d["start"], d["start"], tols, Path(output), seed=seed)


def _floats(text: str) -> tuple:
    return tuple(float(v) for v in text.replace(";", ",").split(",") if v.strip())


def load_config(path) -> ExperimentConfig:
    """Parse a ``key = value`` experiment file.

    Recognised keys: ``problem`` (example41, example42 or custom), ``custom``
    (path to a Python file defining ``build_problem()``), ``mu``, ``gamma``,
    ``alpha``, ``max_iters``, ``max_linesearch``, ``validation`` (strict,
    warn, off), ``selection`` (midpoint, lower, upper, random), ``seed``,
    ``x0``, ``x1`` (comma-separated), ``tolerances`` (comma-separated,
    strictly decreasing), ``output``, ``verify_samples``. Lines starting with
    ``#`` are comments. Relative paths resolve against the config file.
    """
    path = Path(path)
    parser = configparser.ConfigParser(inline_comment_prefixes=("#",))
    try:
        parser.read_string("[run]\n" + path.read_text())
    except (OSError, configparser.Error) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    raw = dict(parser["run"])
    known = {"problem", "custom", "mu", "gamma", "alpha", "max_iters", "max_linesearch",
             "validation", "selection", "seed", "x0", "x1", "tolerances", "output",
             "verify_samples"}
    unknown = set(raw) - known
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    try:
        kind = ProblemKind(raw.get("problem", "").strip().lower())
        defaults = _DEFAULTS.get(kind, {})
        tolerances = _floats(raw["tolerances"]) if "tolerances" in raw else defaults.get("tolerances", ())
        seed = int(raw.get("seed", 0))
        selection = SelectionContext(Strategy(raw.get("selection", "midpoint").strip().lower()),
                                     0, seed)
        params = SolverParams(
            mu=float(raw.get("mu", defaults.get("mu", 0.5))),
            gamma=float(raw.get("gamma", defaults.get("gamma", 0.5))),
            alpha=float(raw.get("alpha", defaults.get("alpha", 0.0))),
            epsilon=min(tolerances) if tolerances else 1e-6,
            max_iters=int(raw.get("max_iters", 10_000)),
            max_linesearch=int(raw.get("max_linesearch", 100)),
            validation=Validation(raw.get("validation", "warn").strip().lower()),
            selection=selection,
        )
        start = defaults.get("start")
        x0 = _floats(raw["x0"]) if "x0" in raw else start
        x1 = _floats(raw["x1"]) if "x1" in raw else x0
        if x0 is None:
            raise ConfigError("custom problems need x0")
        custom = raw.get("custom")
        custom_path = (path.parent / custom.strip()) if custom else None
        output = path.parent / raw.get("output", "bench_out").strip()
        return ExperimentConfig(kind, params, tuple(x0), tuple(x1), tuple(tolerances), output,
                                custom_path, int(raw.get("verify_samples", 10_000)), seed)
    except ConfigError:
        raise
    except (KeyError, ValueError) as exc:
        raise ConfigError(f"invalid config {path}: {exc}") from exc


# --------------------------------------------------------------------------
# sweep
# --------------------------------------------------------------------------


@dataclass
class SweepRow:
    epsilon: float
    report: Optional[SolveReport]
    seconds: float
    error: str = ""
    verified: Optional[bool] = None
    worst_violation: float = float("nan")

    @property
    def status(self) -> str:
        return self.report.status.value if self.report is not None else "Error"


@dataclass
class SweepResult:
    rows: list = field(default_factory=list)
    summary_path: Optional[Path] = None
    exit_code: int = 0


def sweep(config: ExperimentConfig, problem: Optional[VIProblem] = None,
          verify: bool = True) -> list:
    """Solve once per tolerance; returns one :class:`SweepRow` each."""
    problem = problem or config.build_problem()
    rows = []
    for eps in config.tolerances:
        params = replace(config.params, epsilon=eps)
        t0 = time.perf_counter()
        try:
            report = solve(problem, params, config.x0, config.x1)
        except Exception as exc:  # recorded per row; the sweep carries on
            rows.append(SweepRow(eps, None, time.perf_counter() - t0, error=str(exc)))
            continue
        row = SweepRow(eps, report, time.perf_counter() - t0)
        if verify and report.converged and problem.set.bounds is not None:
            try:
                row.verified, row.worst_violation = verify_solution(
                    problem, problem.set.project(report.solution), config.verify_samples,
                    seed=config.seed)
            except ValueError as exc:
                row.error = str(exc)
        rows.append(row)
    return rows


def _write_trace(path: Path, report: SolveReport, xstar) -> None:
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(TRACE_COLUMNS)
        for rec in report.trace:
            err = "" if xstar is None else repr(float(np.linalg.norm(rec.x - xstar)))
            writer.writerow([rec.n, repr(rec.residual_norm), err, repr(rec.lam), rec.m,
                             repr(rec.wallclock)])


def run_bench(config: ExperimentConfig, verify: bool = True) -> SweepResult:
    """Run the sweep and write ``summary.csv`` plus one ``trace_<eps>.csv`` per tolerance.

    Exit code 0 when every row converged, else 1. Verification results are
    kept on the rows; a loose tolerance can converge to a point that misses
    the verifier's 1e-6 threshold, so they do not affect the exit code.
    """
    problem = config.build_problem()
    rows = sweep(config, problem, verify)
    out = Path(config.output)
    out.mkdir(parents=True, exist_ok=True)
    summary = out / "summary.csv"
    with summary.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(SUMMARY_COLUMNS)
        for row in rows:
            rep = row.report
            writer.writerow([
                repr(row.epsilon),
                rep.iterations if rep else "",
                f"{row.seconds:.6f}",
                repr(rep.final_residual) if rep else "",
                row.status,
            ])
            if rep is not None:
                _write_trace(out / f"trace_{row.epsilon:g}.csv", rep, problem.known_solution)
    ok = all(r.report is not None and r.report.converged for r in rows)
    for r in rows:
        log.info("eps=%g status=%s iterations=%s %s", r.epsilon, r.status,
                 r.report.iterations if r.report else "-", r.error)
    return SweepResult(rows, summary, 0 if ok else 1)
