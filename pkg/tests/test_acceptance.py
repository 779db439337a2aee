"""Acceptance criteria; one test per criterion, each with its runtime budget.

A pass/fail line per criterion is printed in the terminal summary.
"""

import random
import time
from contextlib import contextmanager

import numpy as np
import pytest

from sl2tiling.cli import main
from sl2tiling.descent import nonexistence_scan, staircase_pairs, uniqueness_scan
from sl2tiling.engine import (
    build_tiling,
    check_constant_slices,
    cube_consistency,
    flip_tiling,
    verify_diagonal_relation,
    verify_window,
)
from sl2tiling.errors import DisagreeingTops
from sl2tiling.fibonacci import check_odd_fib_identity, staircase_plane, staircase_value
from sl2tiling.frontier import Frontier, complete_frontier, staircase_frontier
from sl2tiling.lattice import SignatureMatrix, Window, cube_window, dumps_tiling, loads_tiling
from sl2tiling.signatures import (
    all_signature_matrices,
    enumerate_admissible,
    flip,
    is_admissible,
    orbit_of_anti,
)

# rows of the printed figure, top (i = 0) to bottom (i = -7), columns j = 0..7
FIGURE = [
    [1, 1, 2, 5, 13, 34, 89, 233],
    [2, 1, 1, 2, 5, 13, 34, 89],
    [5, 2, 1, 1, 2, 5, 13, 34],
    [13, 5, 2, 1, 1, 2, 5, 13],
    [34, 13, 5, 2, 1, 1, 2, 5],
    [89, 34, 13, 5, 2, 1, 1, 2],
    [233, 89, 34, 13, 5, 2, 1, 1],
    [610, 233, 89, 34, 13, 5, 2, 1],
]
FIGURE_TEXT = "".join(" ".join(str(v).rjust(3) for v in row) + "\n" for row in FIGURE)

WINDOW_CASES = [(n, eps, t) for n in (3, 4, 5) for eps in enumerate_admissible(n) for t in range(-3, 4)]


@contextmanager
def budget(seconds):
    start = time.perf_counter()
    yield
    elapsed = time.perf_counter() - start
    assert elapsed < seconds, f"took {elapsed:.2f}s, budget {seconds}s"


@pytest.mark.criterion(1, "golden figure: staircase 8 8 reproduces the 64 printed values")
def test_criterion_1_golden_figure(capsys):
    with budget(1):
        code = main(["staircase", "8", "8"])
    out = capsys.readouterr().out
    assert code == 0
    assert out == FIGURE_TEXT
    assert [[int(v) for v in line.split()] for line in out.splitlines()] == FIGURE


@pytest.mark.criterion(2, "odd Fibonacci identity exact for r = 1..500")
def test_criterion_2_odd_fibonacci_identity():
    with budget(1):
        assert check_odd_fib_identity(500)


@pytest.mark.criterion(3, "classification: 2^(n-1) admissible matrices; three-way set equality n = 3..7")
def test_criterion_3_classification():
    assert len(enumerate_admissible(3)) == 4
    for n in range(3, 11):
        assert len(enumerate_admissible(n)) == 2 ** (n - 1)
    for n in range(3, 8):
        with budget(30):
            filtered = {m for m in all_signature_matrices(n) if is_admissible(m)}
            assert filtered == set(enumerate_admissible(n)) == set(orbit_of_anti(n))


def _slices_are_staircase(t, translation):
    # every 2-D slice (all but two coordinates fixed) is a translate of the staircase plane
    a = t.array
    n = t.n
    lo = t.window.lo
    for k in range(n):
        for l in range(k + 1, n):
            others = [m for m in range(n) if m not in (k, l)]
            moved = np.moveaxis(a, (k, l), (0, 1))
            for idx in np.ndindex(*[a.shape[m] for m in others]):
                shift = sum(lo[m] + i for m, i in zip(others, idx)) + translation
                win = Window((lo[k] + shift, lo[l]), (t.window.hi[k] + shift, t.window.hi[l]))
                if not np.array_equal(moved[(slice(None), slice(None)) + idx], staircase_plane(win).array):
                    return False
    return True


@pytest.mark.criterion(4, "construction passes verify_window / diagonal / slices for n = 3,4,5, t = -3..3")
def test_criterion_4_construction():
    with budget(60):
        for n, eps, t in WINDOW_CASES:
            tiling = build_tiling(eps, cube_window(n, -3, 3), t)
            assert verify_window(tiling).ok, (n, eps, t)
            assert verify_diagonal_relation(tiling).ok, (n, eps, t)
            if eps.is_constant(-1):
                assert check_constant_slices(tiling)
                assert _slices_are_staircase(tiling, t)


@pytest.mark.criterion(5, "nonexistence scan B=200, K=202 certifies all 40000 seeds")
def test_criterion_5_nonexistence():
    with budget(60):
        certs = nonexistence_scan(200, 202, sign=1)
    assert len(certs) == 40000
    assert len({c.seed for c in certs}) == 40000
    assert all(c.failure_step <= 202 for c in certs)


@pytest.mark.criterion(6, "uniqueness scan B=200, K=12 survivors = staircase-adjacent pairs")
def test_criterion_6_uniqueness():
    with budget(60):
        res = uniqueness_scan(200, 12, sign=-1)
    expected = {(1, 1), (1, 2), (2, 1), (2, 5), (5, 2), (5, 13), (13, 5), (13, 34), (34, 13), (34, 89), (89, 34)}
    assert staircase_pairs(200) == expected
    assert set(res.survivors) == expected
    assert res.matches


@pytest.mark.criterion(7, "flip coherence: flip_tiling(build(eps), r) == build(flip(eps, r)) pointwise")
def test_criterion_7_flip_coherence():
    mismatches = []
    with budget(30):
        for n in (3, 4):
            w = cube_window(n, -3, 3)
            for eps in enumerate_admissible(n):
                base = build_tiling(eps, w)
                for r in range(1, n + 1):
                    if flip_tiling(base, r) != build_tiling(flip(eps, r), w):
                        mismatches.append((n, eps.upper(), r))
    assert not mismatches, f"{len(mismatches)} (n, eps, axis) cases differ, e.g. {mismatches[:3]}"


@pytest.mark.criterion(8, "cube consistency: staircase quadruples agree; (1,1,2,1) rejected")
def test_criterion_8_cube_consistency():
    rng = random.Random(8)
    for _ in range(200):
        r = rng.randint(-40, 40)
        a, x = staircase_value(r), staircase_value(r + 1)
        res = cube_consistency(a, x, x, x, -1)
        assert res.faces == (staircase_value(r + 2),) * 3
        assert res.tops == (staircase_value(r + 3),) * 3
    tiling = build_tiling(SignatureMatrix.anti(4), cube_window(4, -2, 1), 1)
    for p in tiling.window.cells():
        if max(p) > 0:
            continue
        for j, k, l in ((0, 1, 2), (0, 1, 3), (1, 2, 3)):
            nb = [tuple(v + (m == ax) for m, v in enumerate(p)) for ax in (j, k, l)]
            top = tuple(v + (m in (j, k, l)) for m, v in enumerate(p))
            res = cube_consistency(tiling[p], *(tiling[q] for q in nb), -1)
            assert res.tops == (tiling[top],) * 3
    with pytest.raises(DisagreeingTops):
        cube_consistency(1, 1, 2, 1, -1)


@pytest.mark.criterion(9, "frontier completion: 50 random frontiers clean; staircase frontier matches figure")
def test_criterion_9_frontiers():
    rng = random.Random(2024)
    with budget(30):
        for _ in range(50):
            steps = "".join(rng.choice("RD") for _ in range(rng.randint(0, 20)))
            f = Frontier((rng.randint(-5, 5), rng.randint(-5, 5)), steps)
            depth = rng.randint(1, 12)
            c = complete_frontier(f, depth, -1)
            assert all(type(v) is int and v >= 1 for v in c.cells.values())
            assert c.verify().ok
            if c.is_complete():
                assert verify_window(c.to_tiling()).ok
        c = complete_frontier(staircase_frontier(8), 12, -1)
        t = c.to_tiling(Window((-7, 0), (0, 7)))
        assert [[t[i, j] for j in range(8)] for i in range(0, -8, -1)] == FIGURE
        assert verify_window(c.to_tiling()).ok


@pytest.mark.criterion(10, "document round-trip byte-stable and verify exit 0 for all criterion-4 cases")
def test_criterion_10_roundtrip(tmp_path, capsys):
    for idx, (n, eps, t) in enumerate(WINDOW_CASES):
        tiling = build_tiling(eps, cube_window(n, -3, 3), t)
        doc = dumps_tiling(tiling)
        back = loads_tiling(doc)
        assert back == tiling
        assert dumps_tiling(back) == doc
        path = tmp_path / f"case{idx}.json"
        path.write_bytes(doc.encode())
        assert main(["verify", str(path), "--quiet"]) == 0
        assert path.read_bytes() == doc.encode()
    capsys.readouterr()
