"""Clique spectra and the search-based gamma curve."""

import random
from fractions import Fraction

import pytest

from edcycles.errors import TruncatedSpectrumError
from edcycles.gfunction import g_krs
from edcycles.graphs import Graph, PowerCycleParams, power_cycle
from edcycles.spectrum import (
    clique_spectrum,
    gamma,
    gamma_curve,
    gamma_curve_csv,
    gamma_with_branch,
    power_cycle_spectrum,
)


def complete_graph(n):
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def random_graph(rng, n, density=0.5):
    edges = [
        (i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < density
    ]
    return Graph.from_edges(n, edges)


def test_c5_extreme_points():
    spec = power_cycle_spectrum(PowerCycleParams(5, 1))
    assert spec.extreme_points == ((0, 2), (1, 1), (2, 0))
    assert not spec.truncated


def test_c13_2_extreme_points():
    spec = power_cycle_spectrum(PowerCycleParams(13, 2))
    assert spec.extreme_points == ((0, 4), (1, 3), (2, 2), (3, 0))


def test_complete_graph_anchors():
    # forbidding a clique pins the curve to p/(h-1)
    for h in (3, 4):
        spec = clique_spectrum(complete_graph(h), r_max=8, s_max=8)
        assert spec.extreme_points == ((h - 1, 0),)
        for p in (Fraction(1, 4), Fraction(2, 3)):
            assert gamma(spec, p) == p / (h - 1)


def test_ferrers_property():
    rng = random.Random(43)
    for _ in range(20):
        H = random_graph(rng, rng.randint(1, 8))
        spec = clique_spectrum(H)
        for r, s in spec.pairs:
            if r >= 1:
                assert (r - 1, s) in spec.pairs
            if s >= 1:
                assert (r, s - 1) in spec.pairs


def test_extreme_points_incomparable():
    rng = random.Random(47)
    for _ in range(20):
        H = random_graph(rng, rng.randint(1, 8))
        spec = clique_spectrum(H)
        pts = spec.extreme_points
        for i, (r1, s1) in enumerate(pts):
            for r2, s2 in pts[i + 1 :]:
                assert not (r1 <= r2 and s1 <= s2)
                assert not (r2 <= r1 and s2 <= s1)


def test_gamma_c5_at_half():
    spec = power_cycle_spectrum(PowerCycleParams(5, 1))
    point = gamma_with_branch(spec, Fraction(1, 2))
    assert point.value == Fraction(1, 4)
    # all three branches tie at 1/4; the lexicographically least wins
    assert point.branch == (0, 2)


def test_gamma_full_spectrum_equals_extreme_only():
    rng = random.Random(53)
    for _ in range(10):
        H = random_graph(rng, rng.randint(2, 8))
        spec = clique_spectrum(H)
        if not spec.extreme_points:
            continue
        for k in range(0, 11):
            p = Fraction(k, 10)
            full = min(g_krs(r, s, p) for r, s in spec.pairs if (r, s) != (0, 0))
            assert gamma(spec, p) == full


def test_gamma_concave_on_grid():
    spec = power_cycle_spectrum(PowerCycleParams(9, 1))
    grid = [Fraction(k, 60) for k in range(61)]
    values = [gamma(spec, p) for p in grid]
    for i in range(len(grid) - 2):
        assert values[i + 1] >= (values[i] + values[i + 2]) / 2


def test_gamma_endpoints():
    spec = power_cycle_spectrum(PowerCycleParams(8, 1))
    assert gamma(spec, Fraction(0)) == 0
    assert gamma(spec, Fraction(1)) == 0


def test_gamma_curve_and_csv():
    spec = power_cycle_spectrum(PowerCycleParams(8, 1))
    grid = [Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)]
    points = gamma_curve(spec, grid)
    assert [pt.p for pt in points] == grid
    # branch switches from the (1, ell(1)-1) pair to the (0, ell(0)-1) pair
    assert points[0].branch == (1, 2)
    assert points[-1].branch == (0, 3)
    csv_text = gamma_curve_csv(points)
    assert csv_text.splitlines()[0] == "p,gamma,branch_r,branch_s"
    assert len(csv_text.splitlines()) == 4
    assert gamma_curve(spec, []) == []


def test_truncated_spectrum_refuses_gamma():
    spec = clique_spectrum(power_cycle(8, 1), r_max=1, s_max=1)
    assert spec.truncated
    with pytest.raises(TruncatedSpectrumError):
        gamma(spec, Fraction(1, 2))


def test_explicit_bounds_not_truncated_when_wide():
    spec = clique_spectrum(power_cycle(5, 1), r_max=4, s_max=4)
    assert not spec.truncated
    assert spec.extreme_points == ((0, 2), (1, 1), (2, 0))


def test_single_point_grid():
    spec = power_cycle_spectrum(PowerCycleParams(6, 1))
    points = gamma_curve(spec, [Fraction(1, 3)])
    assert len(points) == 1
    assert points[0].value == gamma(spec, Fraction(1, 3))
