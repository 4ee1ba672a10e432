"""Simplex optimization of the rate form: exact and numeric paths."""

import random
from fractions import Fraction

import pytest

from edcycles.crg import (
    BLACK,
    WHITE,
    component_sets,
    crg_from_pairs,
    k_rs,
    random_crg,
    standard_corpus,
    sub_crg,
)
from edcycles.errors import ParameterDomainError, SizeExceededError
from edcycles.gfunction import (
    degree_report,
    g_endpoint,
    g_krs,
    g_value,
    rate_matrix,
)


def grid_minimum_two_vertices(M, resolution=10**4) -> float:
    """Brute grid oracle over the 1-simplex."""
    best = None
    for k in range(resolution + 1):
        x0 = k / resolution
        x1 = 1.0 - x0
        value = M[0][0] * x0 * x0 + 2 * M[0][1] * x0 * x1 + M[1][1] * x1 * x1
        if best is None or value < best:
            best = value
    return best


def random_feasible_point(rng, n):
    cuts = sorted(rng.random() for _ in range(n - 1))
    points = [0.0] + cuts + [1.0]
    return [points[i + 1] - points[i] for i in range(n)]


@pytest.mark.parametrize("r,s", [(1, 0), (0, 1), (1, 1), (2, 3), (5, 5), (0, 4)])
@pytest.mark.parametrize("p", [Fraction(1, 10), Fraction(1, 2), Fraction(7, 10)])
def test_all_gray_closed_form(r, s, p):
    gv = g_value(k_rs(r, s), p)
    assert gv.value == g_krs(r, s, p)
    assert gv.value == 1 / (r / p + s / (1 - p))
    assert sum(gv.weights) == 1
    assert all(w >= 0 for w in gv.weights)


def test_single_vertices():
    p = Fraction(2, 7)
    assert g_value(k_rs(1, 0), p).value == p
    assert g_value(k_rs(0, 1), p).value == 1 - p


def test_k11_is_p_one_minus_p():
    for p in (Fraction(1, 3), Fraction(1, 7), Fraction(4, 5)):
        assert g_value(k_rs(1, 1), p).value == p * (1 - p)


def test_two_blacks_white_edge_against_grid_oracle():
    K = crg_from_pairs((BLACK, BLACK), [(0, 1, WHITE)])
    p = Fraction(1, 3)
    gv = g_value(K, p)
    assert gv.value == Fraction(1, 2)
    assert gv.weights == (Fraction(1, 2), Fraction(1, 2))
    M = [[float(v) for v in row] for row in rate_matrix(K, 1 / 3).entries]
    assert abs(grid_minimum_two_vertices(M) - 0.5) < 1e-7


def test_indefinite_form_grid_oracle():
    # white pair joined by a black edge: the form is indefinite for small p
    # and the optimum sits at a simplex vertex
    K = crg_from_pairs((WHITE, WHITE), [(0, 1, BLACK)])
    p = Fraction(1, 5)
    gv = g_value(K, p)
    assert gv.value == p
    M = [[float(v) for v in row] for row in rate_matrix(K, 0.2).entries]
    assert abs(grid_minimum_two_vertices(M) - 0.2) < 1e-7


def test_flat_optimal_face_with_singular_system():
    # identical rows make the pair face singular; the whole segment is
    # optimal and the vertex candidates must still deliver the value
    K = crg_from_pairs((WHITE, WHITE), [(0, 1, WHITE)])
    for p in (Fraction(1, 3), Fraction(1, 2), Fraction(4, 5)):
        gv = g_value(K, p)
        assert gv.value == p
        assert len(gv.support) == 1
    K3 = crg_from_pairs(
        (WHITE, WHITE, WHITE), [(0, 1, WHITE), (0, 2, WHITE), (1, 2, WHITE)]
    )
    assert g_value(K3, Fraction(2, 7)).value == Fraction(2, 7)


def test_three_vertex_grid_oracle():
    # vectorized sweep of the 2-simplex against the exact optimum
    import numpy as np

    rng = random.Random(61)
    resolution = 400
    ii, jj = np.meshgrid(
        np.arange(resolution + 1), np.arange(resolution + 1), indexing="ij"
    )
    keep = ii + jj <= resolution
    x0 = (ii[keep] / resolution).astype(float)
    x1 = (jj[keep] / resolution).astype(float)
    x2 = 1.0 - x0 - x1
    for _ in range(12):
        K = random_crg(rng, 3)
        p = Fraction(rng.randint(1, 9), 10)
        M = [[float(v) for v in row] for row in rate_matrix(K, float(p)).entries]
        values = (
            M[0][0] * x0 * x0
            + M[1][1] * x1 * x1
            + M[2][2] * x2 * x2
            + 2 * (M[0][1] * x0 * x1 + M[0][2] * x0 * x2 + M[1][2] * x1 * x2)
        )
        exact = float(g_value(K, p).value)
        assert values.min() >= exact - 1e-12
        assert values.min() - exact < 1e-4


def test_value_consistent_with_weights():
    rng = random.Random(23)
    for _ in range(25):
        K = random_crg(rng, rng.randint(1, 7))
        p = Fraction(rng.randint(1, 9), 10)
        gv = g_value(K, p)
        M = rate_matrix(K, p).entries
        direct = sum(
            M[i][j] * gv.weights[i] * gv.weights[j]
            for i in range(K.n)
            for j in range(K.n)
        )
        assert direct == gv.value
        assert sum(gv.weights) == 1
        assert gv.support == tuple(i for i, w in enumerate(gv.weights) if w > 0)


def test_component_recombination_identity():
    rng = random.Random(31)
    p = Fraction(1, 4)
    for _ in range(20):
        K = random_crg(rng, rng.randint(2, 7))
        joint = g_value(K, p, decompose=False).value
        split = g_value(K, p, decompose=True).value
        assert joint == split
        recombined = 1 / sum(
            1 / g_value(sub_crg(K, vs), p).value for vs in component_sets(K)
        )
        assert joint == recombined


def test_random_feasible_points_never_beat_optimum():
    rng = random.Random(37)
    for _ in range(15):
        K = random_crg(rng, rng.randint(2, 6))
        p = rng.choice((0.25, 0.5, 0.75))
        gv = g_value(K, Fraction(p))
        M = [[float(v) for v in row] for row in rate_matrix(K, p).entries]
        for _ in range(50):
            x = random_feasible_point(rng, K.n)
            value = sum(
                M[i][j] * x[i] * x[j] for i in range(K.n) for j in range(K.n)
            )
            assert value >= float(gv.value) - 1e-12


def test_numeric_weights_form_a_distribution():
    for K in standard_corpus(5, count=20):
        gv = g_value(K, 0.35, mode="numeric")
        assert abs(sum(gv.weights) - 1) <= 1e-12
        assert all(w >= 0 for w in gv.weights)
        assert gv.mode == "numeric"


def test_exact_numeric_agreement_on_corpus():
    for K in standard_corpus(71, count=40):
        for p in (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)):
            exact = g_value(K, p).value
            numeric = g_value(K, float(p), mode="numeric").value
            assert abs(float(exact) - numeric) <= 1e-9, (K, p)


def test_exact_mode_rejects_endpoints_and_oversize():
    with pytest.raises(ParameterDomainError):
        g_value(k_rs(1, 1), Fraction(0))
    with pytest.raises(SizeExceededError):
        K = crg_from_pairs((BLACK,) * 13, [(i, i + 1, BLACK) for i in range(12)])
        g_value(K, Fraction(1, 2))


def test_g_endpoint_conventions():
    assert g_endpoint(k_rs(1, 0), 0) == 0
    assert g_endpoint(k_rs(0, 3), 0) == Fraction(1, 3)
    assert g_endpoint(k_rs(1, 1), 0) == 0
    assert g_endpoint(k_rs(1, 1), 1) == 0
    assert g_endpoint(k_rs(4, 0), 1) == Fraction(1, 4)
    with pytest.raises(ParameterDomainError):
        g_endpoint(k_rs(1, 1), Fraction(1, 2))


def test_g_endpoint_with_singular_pair_face():
    # black pair joined by a black edge at p=0: the pair face is flat and
    # singular, the value comes from the vertices
    K = crg_from_pairs((BLACK, BLACK), [(0, 1, BLACK)])
    assert g_endpoint(K, 0) == 1


def test_g_krs_matches_endpoint_conventions():
    assert g_krs(1, 1, 0) == 0
    assert g_krs(0, 3, 0) == Fraction(1, 3)
    assert g_krs(3, 0, 1) == Fraction(1, 3)
    assert g_krs(2, 1, 1) == 0


def test_degree_report_all_gray():
    p = Fraction(1, 3)
    K = k_rs(2, 2)
    gv = g_value(K, p)
    report = degree_report(K, gv)
    for v in range(K.n):
        assert report.gray[v] == 1 - gv.weights[v]
        assert report.gray_neighbor_count[v] == K.n - 1


def test_degree_report_k11_values():
    K = k_rs(1, 1)
    gv = g_value(K, Fraction(1, 3))
    assert gv.weights == (Fraction(2, 3), Fraction(1, 3))
    report = degree_report(K, gv)
    assert report.white[0] == Fraction(2, 3)
    assert report.gray[0] == Fraction(1, 3)


def test_degree_report_partition_of_weight():
    rng = random.Random(41)
    for _ in range(20):
        K = random_crg(rng, rng.randint(1, 7))
        gv = g_value(K, Fraction(2, 5))
        report = degree_report(K, gv)
        for v in range(K.n):
            assert report.gray[v] + report.white[v] + report.black[v] == 1


def test_degree_report_codegree():
    K = k_rs(1, 2)
    gv = g_value(K, Fraction(1, 2))
    report = degree_report(K, gv)
    # all-gray triangle: common gray neighborhood of a pair is the third vertex
    assert report.gray_codegree[(0, 1)] == gv.weights[2]
    assert report.gray_codegree[(0, 2)] == gv.weights[1]
    assert report.gray_codegree[(1, 2)] == gv.weights[0]
