"""Harness: comparison records, CSV contract, sweeps, rank statistics."""
from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import quadcover.bench as bench
from quadcover import (
    AqbfParams,
    BenchParams,
    DegenerateInputError,
    GenSpec,
    aqbf_work,
    compute_area,
    exact_area,
    friedman_test,
    gen_scene,
    records_to_csv,
    run_case,
    run_comparison,
    sweep,
    wilcoxon_signed_rank,
)
from quadcover.bench import CSV_HEADER, METHOD_NAMES, _parse_grid

FAST_BENCH = BenchParams(
    methods=("bi", "mc", "tri"),
    seed=7,
    aqbf=AqbfParams(partition_tol=1e-3, sampling_tol=1e-2, min_samples=8),
    mc_samples=20_000,
    grid_resolution=60,
    integration_resolution=40,
    subdivision_depth=6,
)


@pytest.fixture(scope="module")
def small_scene():
    return gen_scene(GenSpec(n_vertices=10, n_circles=4, seed=5))


# ----------------------------------------------------------------- records


def test_run_comparison_record_fields(small_scene):
    records = run_comparison(small_scene, ("bi", "mc", "tri"), FAST_BENCH)
    assert [r.method_name for r in records] == ["bi", "mc", "tri"]
    exact = exact_area(small_scene)
    for r in records:
        assert r.n_vertices == 10 and r.n_circles == 4
        assert math.isnan(r.param_value)
        assert r.exact_area == exact
        assert r.abs_error == abs(r.area - exact)
        assert math.isfinite(r.rel_error) and r.rel_error >= 0.0
        assert r.wall_time_seconds >= 0.0
        assert r.seed == 7
    bi = records[0]
    assert bi.area == exact and bi.rel_error == 0.0


def test_run_comparison_rejects_unknown_method(small_scene):
    with pytest.raises(ValueError):
        run_comparison(small_scene, ("aqbf", "nope"), FAST_BENCH)


def test_run_comparison_skips_failing_method(small_scene, monkeypatch):
    def boom(scene):
        raise RuntimeError("synthetic failure")

    monkeypatch.setattr(bench, "triangulation", boom)
    with pytest.warns(UserWarning, match="skipped"):
        records = run_comparison(small_scene, ("bi", "tri", "mc"), FAST_BENCH)
    assert [r.method_name for r in records] == ["bi", "mc"]


def test_all_methods_produce_records(small_scene):
    params = BenchParams(
        methods=METHOD_NAMES,
        seed=3,
        aqbf=AqbfParams(partition_tol=1e-3, sampling_tol=1e-2, min_samples=8),
        mc_samples=10_000,
        grid_resolution=50,
        integration_resolution=30,
        subdivision_depth=6,
    )
    records = run_comparison(small_scene, METHOD_NAMES, params)
    assert len(records) == len(METHOD_NAMES)
    # coarse budgets; triangulation additionally overcounts disk overlap
    for r in records:
        bound = 0.6 if r.method_name == "tri" else 0.2
        assert r.rel_error < bound


# --------------------------------------------------------------------- csv


def test_csv_header_and_ordering(small_scene):
    records = run_comparison(small_scene, ("tri", "bi", "mc"), FAST_BENCH)
    text = records_to_csv(records)
    lines = text.strip().split("\n")
    assert lines[0] == CSV_HEADER
    methods = [line.split(",")[2] for line in lines[1:]]
    assert methods == sorted(methods)  # rows sorted by method within a trial
    # every float token round-trips
    for line in lines[1:]:
        tokens = line.split(",")
        float(tokens[6]); float(tokens[7]); float(tokens[8]); float(tokens[9])
        assert float(tokens[9]) >= 0.0


def test_csv_sorts_by_case_param_trial(small_scene):
    records = []
    for case_id in (2, 1):
        for trial in (1, 0):
            records.extend(
                run_comparison(
                    small_scene, ("mc",), FAST_BENCH,
                    case_id=case_id, trial_index=trial, param_value=float(case_id),
                )
            )
    lines = records_to_csv(records).strip().split("\n")[1:]
    keys = [(int(l.split(",")[0]), int(l.split(",")[1])) for l in lines]
    assert keys == sorted(keys)


def test_run_case_row_counts_and_report():
    lines: list[str] = []
    csv_text = run_case(2, 1, FAST_BENCH, report=lines.append)
    rows = csv_text.strip().split("\n")[1:]
    assert len(rows) == 30 * len(FAST_BENCH.methods)  # 1..30 circles
    assert len(lines) == 30 * len(FAST_BENCH.methods)
    assert all("mean_rel_error=" in line for line in lines)
    # param_value column carries the circle count
    params = sorted({float(r.split(",")[5]) for r in rows})
    assert params == [float(n) for n in range(1, 31)]


def test_run_case_validates_inputs():
    with pytest.raises(ValueError):
        run_case(3, 1, FAST_BENCH)
    with pytest.raises(ValueError):
        run_case(1, 0, FAST_BENCH)


# ------------------------------------------------------------------- sweeps


def test_parse_grid_forms():
    assert _parse_grid("1:3:1") == [1.0, 2.0, 3.0]
    assert len(_parse_grid("0.1:7.0:0.1")) == 70
    assert _parse_grid([2.0, 1.0]) == [2.0, 1.0]
    with pytest.raises(ValueError):
        _parse_grid("1:2")
    with pytest.raises(ValueError):
        _parse_grid("3:1:1")
    with pytest.raises(ValueError):
        _parse_grid([])


def test_sweep_over_sample_factor(small_scene):
    fixed = AqbfParams(partition_tol=1e-3, sampling_tol=5e-3, min_samples=8, seed=1)
    text = sweep(small_scene, "C", "1:3:1", fixed)
    lines = text.strip().split("\n")
    assert lines[0] == "param_value,rel_error,time_s,total_subsamples"
    assert len(lines) == 4
    rows = [line.split(",") for line in lines[1:]]
    assert [float(r[0]) for r in rows] == [1.0, 2.0, 3.0]
    for r in rows:
        assert float(r[1]) >= 0.0 and math.isfinite(float(r[1]))
        assert int(r[3]) > 0
    # a larger sample factor never draws fewer subsamples
    samples = [int(r[3]) for r in rows]
    assert samples == sorted(samples)


def test_sweep_minimum_samples_axis_monotone(small_scene):
    fixed = AqbfParams(partition_tol=1e-3, sampling_tol=0.9, min_samples=8, seed=1)
    text = sweep(small_scene, "N_min", "10:30:10", fixed)
    rows = [line.split(",") for line in text.strip().split("\n")[1:]]
    samples = [int(r[3]) for r in rows]
    assert samples == sorted(samples)
    assert samples[0] < samples[-1]


def test_sweep_epsilon_axis_tightens_error(small_scene):
    fixed = AqbfParams(min_samples=8, seed=1)
    text = sweep(small_scene, "epsilon", [1e-2, 1e-4], fixed)
    rows = [line.split(",") for line in text.strip().split("\n")[1:]]
    assert float(rows[1][1]) < float(rows[0][1])


def test_sweep_rejects_unknown_axis(small_scene):
    with pytest.raises(ValueError):
        sweep(small_scene, "gamma", "1:2:1")


def test_aqbf_work_counts_cells_and_samples(small_scene):
    result = compute_area(small_scene, FAST_BENCH.aqbf)
    # internal nodes of a quadtree with L leaves number (L-1)/3
    assert aqbf_work(result) == result.n_leaf + (result.n_leaf - 1) // 3 + result.total_subsamples


# ------------------------------------------------------ wilcoxon signed-rank


def _brute_wilcoxon(diffs):
    d = [x for x in diffs if x != 0]
    n = len(d)
    order = sorted((abs(x), i) for i, x in enumerate(d))
    ranks = [0.0] * n
    i = 0
    while i < n:
        j = i
        while j < n and order[j][0] == order[i][0]:
            j += 1
        for k in range(i, j):
            ranks[order[k][1]] = (i + j + 1) / 2.0
        i = j
    w_plus = sum(r for r, x in zip(ranks, d) if x > 0)
    total = n * (n + 1) / 2.0
    stat = min(w_plus, total - w_plus)
    count = sum(
        1
        for mask in range(1 << n)
        if (t := sum(ranks[k] for k in range(n) if mask >> k & 1)) <= stat + 1e-9
        or t >= total - stat - 1e-9
    )
    return stat, min(1.0, count / float(1 << n))


def test_wilcoxon_all_positive_small():
    r = wilcoxon_signed_rank([2, 3, 4, 5, 6], [1, 1, 1, 1, 1])
    assert (r.statistic, r.p_value) == (0.0, 0.0625)
    assert r.n == 5


def test_wilcoxon_mixed_and_tied_magnitudes():
    r = wilcoxon_signed_rank([1, -2, 3, -4, 5, 6], [0, 0, 0, 0, 0, 0])
    assert (r.statistic, r.p_value) == (6.0, 0.4375)
    r = wilcoxon_signed_rank([1, 1, -1, 2, 2], [0, 0, 0, 0, 0])
    assert (r.statistic, r.p_value) == (2.0, 0.25)


def test_wilcoxon_matches_brute_force_spot_checks():
    rng = np.random.default_rng(0)
    for n in (6, 8, 9):
        for _ in range(25):
            diffs = rng.integers(-20, 21, size=n)
            if np.all(diffs == 0) or np.count_nonzero(diffs) < 5:
                continue
            got = wilcoxon_signed_rank(diffs.tolist(), [0] * n)
            stat, p = _brute_wilcoxon(diffs.tolist())
            assert got.statistic == pytest.approx(stat, abs=1e-12)
            assert got.p_value == pytest.approx(p, abs=1e-9)


def test_wilcoxon_zero_differences_dropped():
    r = wilcoxon_signed_rank([5, 1, 2, 3, 4, 5], [5, 0, 0, 0, 0, 0])
    assert r.n == 5
    assert (r.statistic, r.p_value) == (0.0, 0.0625)


def test_wilcoxon_normal_approximation_large_n():
    r = wilcoxon_signed_rank(list(range(1, 21)), [0] * 20)
    mu = 20 * 21 / 4.0
    sigma = math.sqrt(20 * 21 * 41 / 24.0)
    z = (0.0 - mu + 0.5) / sigma
    expected = 2.0 * 0.5 * math.erfc(-z / math.sqrt(2.0))
    assert r.p_value == pytest.approx(expected, rel=1e-12)
    assert r.p_value == pytest.approx(9.56917315705946e-05, rel=1e-10)


def test_wilcoxon_error_contracts():
    with pytest.raises(DegenerateInputError):
        wilcoxon_signed_rank([1.0, 2.0, 3.0, 4.0, 5.0], [1.0, 2.0, 3.0, 4.0, 5.0])
    with pytest.raises(ValueError):
        wilcoxon_signed_rank([1, 2, 3, 4], [0, 0, 0, 0])
    with pytest.raises(ValueError):
        wilcoxon_signed_rank([1, 2, 3], [1, 2])  # length mismatch


# ------------------------------------------------------------------ friedman


def test_friedman_known_case():
    # two blocks ranking three methods identically
    r = friedman_test([[1.0, 2.0, 3.0], [10.0, 20.0, 30.0]])
    assert r.statistic == pytest.approx(4.0, abs=1e-12)
    assert r.p_value == pytest.approx(0.1353352832366127, rel=1e-12)
    assert r.n == 2


def test_friedman_needs_three_methods_two_blocks():
    with pytest.raises(ValueError):
        friedman_test([[1.0, 2.0]] * 4)
    with pytest.raises(ValueError):
        friedman_test([[1.0, 2.0, 3.0]])


def test_friedman_all_equal_blocks():
    r = friedman_test([[1.0, 1.0, 1.0]] * 3)
    assert r.statistic == 0.0
    assert r.p_value == 1.0


@given(
    st.lists(
        st.lists(st.integers(min_value=-100, max_value=100), min_size=3, max_size=3),
        min_size=2,
        max_size=6,
    )
)
def test_friedman_invariant_under_monotone_block_transforms(matrix):
    # integer values keep the transforms collision-free in float arithmetic
    base = friedman_test(matrix)
    transformed = [[2.0 * v + 1.0 for v in row] for row in matrix]
    cubed = [[float(v) ** 3 for v in row] for row in matrix]
    assert friedman_test(transformed).statistic == pytest.approx(base.statistic, abs=1e-9)
    assert friedman_test(cubed).statistic == pytest.approx(base.statistic, abs=1e-9)


def test_friedman_strong_separation_many_blocks():
    rng = np.random.default_rng(1)
    blocks = []
    for _ in range(100):
        noise = rng.normal(0.0, 0.01, size=6)
        row = [1.0 + noise[0]] + [5.0 + k + noise[k] for k in range(1, 6)]
        blocks.append(row)
    r = friedman_test(blocks)
    assert r.p_value < 1e-3
