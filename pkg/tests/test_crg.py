"""CRG structure, rate matrices, components, and p-core certification."""

import itertools
import random
from fractions import Fraction

import pytest

from edcycles.crg import (
    BLACK,
    GRAY,
    WHITE,
    component_sets,
    components,
    crg_from_json,
    crg_from_pairs,
    crg_to_json,
    k_rs,
    random_crg,
    rate_matrix,
    standard_corpus,
    sub_crg,
)
from edcycles.errors import ParameterDomainError, SizeExceededError
from edcycles.gfunction import g_value, is_p_core, p_core_structure_ok


def test_k_rs_shape():
    K = k_rs(2, 3)
    assert K.n == 5
    assert K.vertex_colors == (WHITE, WHITE, BLACK, BLACK, BLACK)
    assert all(color == GRAY for _, _, color in K.pairs())
    assert sum(1 for _ in K.pairs()) == 10


def test_k_rs_rejects_empty():
    with pytest.raises(ParameterDomainError):
        k_rs(0, 0)


def test_rate_matrix_k11():
    M = rate_matrix(k_rs(1, 1), Fraction(1, 3))
    assert M.entries == (
        (Fraction(1, 3), Fraction(0)),
        (Fraction(0), Fraction(2, 3)),
    )


def test_rate_matrix_single_black():
    p = Fraction(1, 5)
    assert rate_matrix(k_rs(0, 1), p).entries == ((1 - p,),)


def test_rate_matrix_white_edge_between_blacks():
    K = crg_from_pairs((BLACK, BLACK), [(0, 1, WHITE)])
    M = rate_matrix(K, Fraction(1, 3))
    assert M.entries == (
        (Fraction(2, 3), Fraction(1, 3)),
        (Fraction(1, 3), Fraction(2, 3)),
    )


def test_rate_matrix_half_is_flat():
    rng = random.Random(3)
    for _ in range(10):
        K = random_crg(rng, rng.randint(1, 6))
        M = rate_matrix(K, Fraction(1, 2))
        for i in range(K.n):
            for j in range(K.n):
                assert M[i, j] in (Fraction(0), Fraction(1, 2))


def test_rate_matrix_complement_consistency():
    # nonzero entries of M(p) and M(1-p) pair up to 1; gray stays 0 in both
    rng = random.Random(5)
    p = Fraction(2, 7)
    for _ in range(20):
        K = random_crg(rng, rng.randint(1, 7))
        M = rate_matrix(K, p)
        W = rate_matrix(K, 1 - p)
        for i in range(K.n):
            for j in range(K.n):
                if i != j and K.edge_color(i, j) == GRAY:
                    assert M[i, j] == W[i, j] == 0
                else:
                    assert M[i, j] + W[i, j] == 1


def test_rate_matrix_rejects_bad_p():
    with pytest.raises(ParameterDomainError):
        rate_matrix(k_rs(1, 1), Fraction(3, 2))


def test_components_all_gray_is_singletons():
    assert component_sets(k_rs(3, 2)) == [(0,), (1,), (2,), (3,), (4,)]


def test_components_black_edge_joins():
    K = crg_from_pairs((BLACK, BLACK), [(0, 1, BLACK)])
    assert component_sets(K) == [(0, 1)]


def test_components_mixed():
    K = crg_from_pairs((BLACK, BLACK, WHITE), [(0, 1, BLACK)])
    assert component_sets(K) == [(0, 1), (2,)]


def test_components_partition_property():
    rng = random.Random(9)
    for _ in range(30):
        K = random_crg(rng, rng.randint(1, 8))
        sets = component_sets(K)
        flat = sorted(v for s in sets for v in s)
        assert flat == list(range(K.n))
        for piece, vs in zip(components(K), sets):
            assert piece.n == len(vs)


def test_sub_crg_identity_and_singleton():
    K = k_rs(2, 3)
    assert sub_crg(K, range(5)) == K
    assert sub_crg(K, [0]).vertex_colors == (WHITE,)
    assert sub_crg(K, [0, 1]) == k_rs(2, 0)


def test_sub_crg_keeps_edge_colors():
    K = crg_from_pairs((BLACK, WHITE, BLACK), [(0, 2, BLACK), (1, 2, WHITE)])
    S = sub_crg(K, [1, 2])
    assert S.vertex_colors == (WHITE, BLACK)
    assert S.edge_color(0, 1) == WHITE


def test_sub_crg_rejects_empty():
    with pytest.raises(ParameterDomainError):
        sub_crg(k_rs(1, 1), [])


def test_crg_json_roundtrip():
    rng = random.Random(13)
    for _ in range(20):
        K = random_crg(rng, rng.randint(1, 7))
        blob = crg_to_json(K)
        assert crg_from_json(blob) == K


def test_crg_json_default_compresses():
    blob = crg_to_json(k_rs(2, 2))
    assert blob["edges"]["default"] == GRAY
    assert blob["edges"]["overrides"] == []


def test_is_p_core_examples():
    p = Fraction(1, 4)
    assert is_p_core(k_rs(0, 4), p)
    assert is_p_core(k_rs(1, 0), p)
    black_pair = crg_from_pairs((BLACK, BLACK), [(0, 1, BLACK)])
    assert not is_p_core(black_pair, p)


def test_is_p_core_matches_direct_sub_crg_comparison():
    rng = random.Random(17)
    p = Fraction(1, 4)
    for _ in range(25):
        K = random_crg(rng, rng.randint(2, 6), gray_weight=4.0)
        g_full = g_value(K, p).value
        direct = all(
            g_value(sub_crg(K, S), p).value > g_full
            for size in range(1, K.n)
            for S in itertools.combinations(range(K.n), size)
        )
        assert is_p_core(K, p) == direct


def test_p_core_structure_on_certified_cores():
    for p in (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)):
        for K in standard_corpus(99, count=60):
            if is_p_core(K, p):
                assert p_core_structure_ok(K, p), (K, p)


def test_is_p_core_float_entry_agrees_with_exact():
    for K in standard_corpus(7, count=30):
        assert is_p_core(K, 0.25) == is_p_core(K, Fraction(1, 4))


def test_is_p_core_bound():
    with pytest.raises(SizeExceededError):
        is_p_core(k_rs(8, 8), Fraction(1, 4))


def test_standard_corpus_deterministic():
    assert standard_corpus(42, count=30) == standard_corpus(42, count=30)
    assert len(standard_corpus(1, count=17)) == 17
