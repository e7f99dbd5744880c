"""Experiment harness: oracle-checked method comparisons and statistics.

Runs the adaptive estimator and the reference estimators against the exact
boundary-integration oracle, emits deterministic CSV, and provides the two
nonparametric tests used to compare methods across scenes (Wilcoxon
signed-rank for paired differences, Friedman for blocked rankings). Every
trial derives its own seed from the master seed, so output content is
independent of execution order.
"""

from __future__ import annotations

import math
import time
import warnings
from dataclasses import dataclass, field, replace
from typing import Callable, Iterable, Sequence

import numpy as np
from scipy.special import gammaincc

from .baselines import (
    adaptive_subdivision,
    grid_integration,
    monte_carlo,
    triangulation,
    uniform_grid,
)
from .errors import DegenerateInputError
from .exact import exact_area
from .geometry import Scene
from .quadtree import AqbfParams, AreaResult, compute_area
from .rng import derive_seed
from .scenario import GenSpec, gen_scene

__all__ = [
    "METHOD_NAMES",
    "TrialRecord",
    "TestResult",
    "BenchParams",
    "run_comparison",
    "records_to_csv",
    "run_case",
    "sweep",
    "wilcoxon_signed_rank",
    "friedman_test",
    "aqbf_work",
]

METHOD_NAMES = ("aqbf", "mc", "ug", "as", "gi", "tri", "bi")

CSV_HEADER = (
    "case_id,trial,method,n_vertices,n_circles,param_value,"
    "area,exact_area,abs_error,rel_error,time_s,seed"
)


@dataclass(frozen=True)
class TrialRecord:
    """One method evaluation on one scene, scored against the oracle."""

    case_id: int
    trial_index: int
    method_name: str
    n_vertices: int
    n_circles: int
    param_value: float
    area: float
    exact_area: float
    abs_error: float
    rel_error: float
    wall_time_seconds: float
    seed: int


@dataclass(frozen=True)
class TestResult:
    """Outcome of a significance test."""

    statistic: float
    p_value: float
    n: int


@dataclass(frozen=True)
class BenchParams:
    """Method set, master seed, and per-method budgets for a benchmark run."""

    methods: tuple[str, ...] = ("aqbf", "mc", "ug", "as", "gi", "tri")
    seed: int = 42
    aqbf: AqbfParams = field(default_factory=AqbfParams)
    mc_samples: int = 100_000
    grid_resolution: int = 316
    integration_resolution: int = 100
    subdivision_depth: int = 9

    def __post_init__(self) -> None:
        unknown = [m for m in self.methods if m not in METHOD_NAMES]
        if unknown:
            raise ValueError(f"unknown methods: {unknown}; expected {METHOD_NAMES}")


def _relative_error(area: float, exact: float) -> float:
    if exact > 0.0:
        return abs(area - exact) / exact
    return 0.0 if area == exact else math.inf


def _evaluate_method(
    name: str, scene: Scene, params: BenchParams, seed: int, exact: float, exact_time: float
) -> tuple[float, float]:
    """Return (area, wall_time_seconds) for one method run."""
    if name == "bi":
        return exact, exact_time
    start = time.perf_counter()
    if name == "aqbf":
        area = compute_area(scene, replace(params.aqbf, seed=seed)).area
    elif name == "mc":
        area = monte_carlo(scene, params.mc_samples, seed).area
    elif name == "ug":
        area = uniform_grid(scene, params.grid_resolution)
    elif name == "gi":
        area = grid_integration(scene, params.integration_resolution)
    elif name == "as":
        area = adaptive_subdivision(scene, params.subdivision_depth)
    else:
        area = triangulation(scene)
    return float(area), time.perf_counter() - start


def run_comparison(
    scene: Scene,
    methods: Sequence[str],
    params: BenchParams | None = None,
    *,
    case_id: int = 0,
    trial_index: int = 0,
    param_value: float = math.nan,
    seed: int | None = None,
) -> list[TrialRecord]:
    """Run each method once on a scene and score it against the exact oracle.

    A method that raises is reported as a warning and skipped; the other
    methods still produce records. The ``bi`` method reports the oracle
    itself (relative error exactly 0).
    """
    if params is None:
        params = BenchParams()
    unknown = [m for m in methods if m not in METHOD_NAMES]
    if unknown:
        raise ValueError(f"unknown methods: {unknown}; expected {METHOD_NAMES}")
    if seed is None:
        seed = params.seed

    start = time.perf_counter()
    exact = exact_area(scene)
    exact_time = time.perf_counter() - start

    records: list[TrialRecord] = []
    for name in methods:
        try:
            area, elapsed = _evaluate_method(name, scene, params, seed, exact, exact_time)
        except Exception as exc:  # noqa: BLE001 - isolate per-method failures
            warnings.warn(f"method {name!r} failed and was skipped: {exc}", stacklevel=2)
            continue
        records.append(
            TrialRecord(
                case_id=case_id,
                trial_index=trial_index,
                method_name=name,
                n_vertices=len(scene.polygon),
                n_circles=len(scene.circles),
                param_value=param_value,
                area=area,
                exact_area=exact,
                abs_error=abs(area - exact),
                rel_error=0.0 if name == "bi" else _relative_error(area, exact),
                wall_time_seconds=elapsed,
                seed=seed,
            )
        )
    return records


def _nan_low(value: float) -> float:
    return -math.inf if math.isnan(value) else value


def records_to_csv(records: Iterable[TrialRecord]) -> str:
    """Serialize records to CSV, sorted by (case, configuration, trial,
    method); floats use their shortest round-trip representation."""
    rows = sorted(
        records,
        key=lambda r: (r.case_id, _nan_low(r.param_value), r.trial_index, r.method_name),
    )
    lines = [CSV_HEADER]
    for r in rows:
        lines.append(
            ",".join(
                (
                    str(r.case_id),
                    str(r.trial_index),
                    r.method_name,
                    str(r.n_vertices),
                    str(r.n_circles),
                    repr(r.param_value),
                    repr(r.area),
                    repr(r.exact_area),
                    repr(r.abs_error),
                    repr(r.rel_error),
                    repr(r.wall_time_seconds),
                    str(r.seed),
                )
            )
        )
    return "\n".join(lines) + "\n"


def run_case(
    case_id: int,
    trials: int,
    params: BenchParams | None = None,
    report: Callable[[str], None] | None = None,
) -> str:
    """Run one survey case and return its CSV.

    Case 1 varies polygon complexity (3..50 vertices, 30 circles); case 2
    varies circle count (1..30 circles, 50 vertices). Each configuration
    runs ``trials`` times with per-trial seeds derived from the master seed.
    ``report`` (e.g. ``print``) receives one per-configuration summary line
    per method: mean relative error and mean time.
    """
    if params is None:
        params = BenchParams()
    trials = int(trials)
    if trials < 1:
        raise ValueError("trials must be at least 1")
    if case_id == 1:
        configs = [(m, 30, float(m)) for m in range(3, 51)]
    elif case_id == 2:
        configs = [(50, n, float(n)) for n in range(1, 31)]
    else:
        raise ValueError("case_id must be 1 or 2")

    records: list[TrialRecord] = []
    for n_vertices, n_circles, param_value in configs:
        config_records: list[TrialRecord] = []
        for trial_index in range(trials):
            trial_seed = derive_seed(params.seed, case_id, n_vertices, n_circles, trial_index)
            scene = gen_scene(
                GenSpec(n_vertices=n_vertices, n_circles=n_circles, seed=trial_seed)
            )
            config_records.extend(
                run_comparison(
                    scene,
                    params.methods,
                    params,
                    case_id=case_id,
                    trial_index=trial_index,
                    param_value=param_value,
                    seed=trial_seed,
                )
            )
        if report is not None:
            for name in params.methods:
                errs = [r.rel_error for r in config_records if r.method_name == name]
                times = [r.wall_time_seconds for r in config_records if r.method_name == name]
                if errs:
                    report(
                        f"case {case_id} m={n_vertices} n={n_circles} {name}: "
                        f"mean_rel_error={np.mean(errs):.6g} mean_time={np.mean(times):.4g}s"
                    )
        records.extend(config_records)
    return records_to_csv(records)


def _parse_grid(grid: str | Iterable[float]) -> list[float]:
    if isinstance(grid, str):
        parts = grid.split(":")
        if len(parts) != 3:
            raise ValueError("grid string must be 'start:stop:step'")
        start, stop, step = (float(p) for p in parts)
        if not (step > 0.0 and stop >= start):
            raise ValueError("grid needs step > 0 and stop >= start")
        count = int(round((stop - start) / step)) + 1
        values = [start + i * step for i in range(count)]
    else:
        values = [float(v) for v in grid]
    if not values:
        raise ValueError("grid is empty")
    return values


def sweep(
    scene: Scene,
    axis: str,
    grid: str | Iterable[float],
    fixed_params: AqbfParams | None = None,
) -> str:
    """Sweep one estimator parameter on a scene; returns CSV.

    ``axis`` is ``"C"`` (sample factor), ``"N_min"`` (minimum per-cell
    samples), or ``"epsilon"`` (partition and sampling tolerances tied).
    Rows carry the grid value, relative error against the oracle, wall
    time, and subsamples drawn.
    """
    if fixed_params is None:
        fixed_params = AqbfParams()
    values = _parse_grid(grid)
    exact = exact_area(scene)
    lines = ["param_value,rel_error,time_s,total_subsamples"]
    for value in values:
        if axis == "C":
            p = replace(fixed_params, sample_factor=value)
        elif axis == "N_min":
            n_min = int(round(value))
            p = replace(
                fixed_params,
                min_samples=n_min,
                max_samples=max(fixed_params.max_samples, n_min),
            )
        elif axis == "epsilon":
            p = replace(fixed_params, partition_tol=value, sampling_tol=value)
        else:
            raise ValueError("axis must be one of 'C', 'N_min', 'epsilon'")
        result = compute_area(scene, p)
        rel = _relative_error(result.area, exact)
        lines.append(
            f"{value!r},{rel!r},{result.wall_time_seconds!r},{result.total_subsamples}"
        )
    return "\n".join(lines) + "\n"


def aqbf_work(result: AreaResult) -> int:
    """Operation-count proxy for one estimator run: every cell the quadtree
    classified plus every subsample drawn. Each split adds four children, so
    classified cells = leaves + (leaves − 1)/3."""
    return result.n_leaf + (result.n_leaf - 1) // 3 + result.total_subsamples


def _midranks(values: np.ndarray) -> np.ndarray:
    """Ranks 1..n with tied values assigned the mean of their positions."""
    order = np.argsort(values, kind="stable")
    ranks = np.empty(len(values), dtype=np.float64)
    i = 0
    while i < len(values):
        j = i
        while j + 1 < len(values) and values[order[j + 1]] == values[order[i]]:
            j += 1
        ranks[order[i : j + 1]] = 0.5 * (i + j) + 1.0
        i = j + 1
    return ranks


def _standard_normal_cdf(z: float) -> float:
    return 0.5 * math.erfc(-z / math.sqrt(2.0))


def wilcoxon_signed_rank(x: Sequence[float], y: Sequence[float]) -> TestResult:
    """Two-sided Wilcoxon signed-rank test for paired samples.

    Zero differences are dropped; ties get mid-ranks. The statistic is the
    smaller signed-rank sum. The p-value enumerates all sign patterns
    exactly for n ≤ 12 and uses the tie-corrected normal approximation with
    continuity correction otherwise.
    """
    xs = np.asarray(x, dtype=np.float64)
    ys = np.asarray(y, dtype=np.float64)
    if xs.shape != ys.shape or xs.ndim != 1:
        raise ValueError("x and y must be equal-length 1-D sequences")
    diffs = xs - ys
    diffs = diffs[diffs != 0.0]
    if len(diffs) == 0:
        raise DegenerateInputError("all differences are zero")
    n = len(diffs)
    if n < 5:
        raise ValueError("need at least 5 nonzero differences")
    ranks = _midranks(np.abs(diffs))
    w_plus = float(ranks[diffs > 0].sum())
    w_minus = float(ranks[diffs < 0].sum())
    w = min(w_plus, w_minus)
    total = n * (n + 1) / 2.0

    if n <= 12:
        count_low = 0
        count_high = 0
        eps = 1e-9
        for pattern in range(1 << n):
            t = 0.0
            for bit in range(n):
                if pattern >> bit & 1:
                    t += ranks[bit]
            if t <= w + eps:
                count_low += 1
            if t >= total - w - eps:
                count_high += 1
        p = min(1.0, (count_low + count_high) / float(1 << n))
    else:
        mean = total / 2.0
        _, tie_counts = np.unique(ranks, return_counts=True)
        tie_term = float(np.sum(tie_counts**3 - tie_counts)) / 48.0
        variance = n * (n + 1) * (2 * n + 1) / 24.0 - tie_term
        sd = math.sqrt(variance)
        z = (w - mean + 0.5) / sd
        p = min(1.0, 2.0 * _standard_normal_cdf(z))
    return TestResult(statistic=w, p_value=p, n=n)


def friedman_test(matrix: Sequence[Sequence[float]]) -> TestResult:
    """Friedman rank test over n blocks (rows) of k methods (columns).

    χ² = 12/(n·k·(k+1)) · Σ R_j² − 3n(k+1) with mid-ranked ties inside each
    block; the p-value is the chi-square upper tail with k−1 degrees of
    freedom.
    """
    a = np.asarray(matrix, dtype=np.float64)
    if a.ndim != 2:
        raise ValueError("matrix must be 2-D (blocks × methods)")
    n, k = a.shape
    if n < 2:
        raise ValueError("need at least 2 blocks")
    if k < 3:
        raise ValueError("need at least 3 methods")
    rank_sums = np.zeros(k, dtype=np.float64)
    for row in a:
        rank_sums += _midranks(row)
    statistic = 12.0 / (n * k * (k + 1)) * float(np.sum(rank_sums**2)) - 3.0 * n * (k + 1)
    statistic = max(statistic, 0.0)
    p = float(gammaincc((k - 1) / 2.0, statistic / 2.0))
    return TestResult(statistic=statistic, p_value=p, n=n)
