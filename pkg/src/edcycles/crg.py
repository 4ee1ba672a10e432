"""Colored regularity graphs and their aggregate rate matrix.

A colored regularity graph (CRG) is a complete graph whose vertices are
colored white or black and whose edges are colored white, gray, or black.
Small and dense, so edge colors live in a flat upper-triangular tuple.
All values are immutable; operations are pure.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import ParameterDomainError
from .rationals import Number

WHITE = "white"
GRAY = "gray"
BLACK = "black"
VERTEX_COLORS = (WHITE, BLACK)
EDGE_COLORS = (WHITE, GRAY, BLACK)


def _pair_index(n: int, i: int, j: int) -> int:
    """Index of unordered pair (i, j), i < j, in row-major upper-triangular order."""
    return i * (2 * n - i - 1) // 2 + (j - i - 1)


@dataclass(frozen=True)
class Crg:
    """Complete 2-colored-vertex, 3-colored-edge graph on vertices 0..n-1."""

    n: int
    vertex_colors: tuple[str, ...]
    edge_colors: tuple[str, ...]

    def __post_init__(self):
        if self.n < 0:
            raise ParameterDomainError("vertex count must be nonnegative")
        if len(self.vertex_colors) != self.n:
            raise ParameterDomainError("vertex color list length mismatch")
        if len(self.edge_colors) != self.n * (self.n - 1) // 2:
            raise ParameterDomainError("edge color list must cover every unordered pair")
        for c in self.vertex_colors:
            if c not in VERTEX_COLORS:
                raise ParameterDomainError(f"bad vertex color {c!r}")
        for c in self.edge_colors:
            if c not in EDGE_COLORS:
                raise ParameterDomainError(f"bad edge color {c!r}")

    def vertex_color(self, v: int) -> str:
        return self.vertex_colors[v]

    def edge_color(self, i: int, j: int) -> str:
        if i == j:
            raise ParameterDomainError("no self-pairs in a CRG")
        if i > j:
            i, j = j, i
        return self.edge_colors[_pair_index(self.n, i, j)]

    def white_vertices(self) -> list[int]:
        return [v for v in range(self.n) if self.vertex_colors[v] == WHITE]

    def black_vertices(self) -> list[int]:
        return [v for v in range(self.n) if self.vertex_colors[v] == BLACK]

    def pairs(self) -> Iterable[tuple[int, int, str]]:
        for i in range(self.n):
            for j in range(i + 1, self.n):
                yield i, j, self.edge_colors[_pair_index(self.n, i, j)]


def crg_from_pairs(
    vertex_colors: Sequence[str],
    colored_pairs: Iterable[tuple[int, int, str]] = (),
    default: str = GRAY,
) -> Crg:
    """Build a CRG from a default edge color plus explicit overrides."""
    n = len(vertex_colors)
    edge_colors = [default] * (n * (n - 1) // 2)
    for i, j, color in colored_pairs:
        if i == j:
            raise ParameterDomainError("no self-pairs in a CRG")
        if i > j:
            i, j = j, i
        edge_colors[_pair_index(n, i, j)] = color
    return Crg(n, tuple(vertex_colors), tuple(edge_colors))


def k_rs(r: int, s: int) -> Crg:
    """All-gray CRG with r white vertices followed by s black vertices."""
    if r < 0 or s < 0:
        raise ParameterDomainError("vertex counts must be nonnegative")
    if r + s == 0:
        raise ParameterDomainError("a CRG needs at least one vertex")
    return crg_from_pairs((WHITE,) * r + (BLACK,) * s)


@dataclass(frozen=True)
class RateMatrix:
    """Symmetric matrix of edit rates: p for white, 1-p for black, 0 for gray.

    The diagonal entry of a vertex is p when white and 1-p when black.
    Entries share the number kind of p (exact Fractions or floats).
    """

    p: Number
    entries: tuple[tuple[Number, ...], ...]

    def __getitem__(self, ij: tuple[int, int]) -> Number:
        return self.entries[ij[0]][ij[1]]


def rate_matrix(K: Crg, p: Number) -> RateMatrix:
    if not 0 <= p <= 1:
        raise ParameterDomainError(f"p={p} outside [0, 1]")
    one = Fraction(1) if isinstance(p, (Fraction, int)) else 1.0
    by_color = {WHITE: one * p, BLACK: one - p, GRAY: one * 0}
    rows = [[one * 0] * K.n for _ in range(K.n)]
    for v in range(K.n):
        rows[v][v] = by_color[K.vertex_colors[v]]
    for i, j, color in K.pairs():
        rows[i][j] = rows[j][i] = by_color[color]
    return RateMatrix(p, tuple(tuple(row) for row in rows))


def component_sets(K: Crg) -> list[tuple[int, ...]]:
    """Vertex sets of the components of the non-gray (white or black) edge graph."""
    parent = list(range(K.n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, j, color in K.pairs():
        if color != GRAY:
            parent[find(i)] = find(j)

    groups: dict[int, list[int]] = {}
    for v in range(K.n):
        groups.setdefault(find(v), []).append(v)
    return sorted(tuple(sorted(g)) for g in groups.values())


def components(K: Crg) -> list[Crg]:
    """Induced sub-CRGs on the components of the non-gray edge graph."""
    return [sub_crg(K, vs) for vs in component_sets(K)]


def sub_crg(K: Crg, vertices: Iterable[int]) -> Crg:
    """Induced sub-CRG on the given vertex subset (kept in sorted order)."""
    vs = sorted(set(vertices))
    if not vs:
        raise ParameterDomainError("sub-CRG needs a nonempty vertex set")
    for v in vs:
        if not 0 <= v < K.n:
            raise ParameterDomainError(f"vertex {v} out of range")
    colors = tuple(K.vertex_colors[v] for v in vs)
    pairs = [
        (a, b, K.edge_color(vs[a], vs[b]))
        for a in range(len(vs))
        for b in range(a + 1, len(vs))
    ]
    return crg_from_pairs(colors, pairs)


def crg_to_json(K: Crg) -> dict:
    """Schema: vertices list plus a default edge color with explicit overrides."""
    counts: dict[str, int] = {}
    for _, _, color in K.pairs():
        counts[color] = counts.get(color, 0) + 1
    default = GRAY
    if counts:
        default = max(EDGE_COLORS, key=lambda c: counts.get(c, 0))
    overrides = [[i, j, c] for i, j, c in K.pairs() if c != default]
    return {
        "vertices": list(K.vertex_colors),
        "edges": {"default": default, "overrides": overrides},
    }


def crg_from_json(obj) -> Crg:
    if isinstance(obj, str):
        obj = json.loads(obj)
    edges = obj.get("edges", {})
    return crg_from_pairs(
        tuple(obj["vertices"]),
        [(int(i), int(j), c) for i, j, c in edges.get("overrides", [])],
        default=edges.get("default", GRAY),
    )


def random_crg(rng: random.Random, n: int, gray_weight: float = 1.0) -> Crg:
    """One random CRG; higher gray_weight biases edges toward gray."""
    colors = tuple(rng.choice(VERTEX_COLORS) for _ in range(n))
    weights = [1.0, gray_weight, 1.0]
    m = n * (n - 1) // 2
    edge_colors = tuple(rng.choices(EDGE_COLORS, weights=weights, k=m)) if m else ()
    return Crg(n, colors, edge_colors)


def standard_corpus(seed: int, count: int = 200, max_vertices: int = 8) -> list[Crg]:
    """Seeded CRG corpus for randomized property suites.

    Mixes three styles: uniform edge colors, gray-dominated edge colors (the
    shape p-core CRGs actually take), and all-gray CRGs with random vertex
    colors.  Deterministic for a fixed seed.
    """
    rng = random.Random(seed)
    corpus = []
    for i in range(count):
        n = rng.randint(1, max_vertices)
        style = i % 3
        if style == 0:
            corpus.append(random_crg(rng, n))
        elif style == 1:
            corpus.append(random_crg(rng, n, gray_weight=8.0))
        else:
            r = rng.randint(0, n)
            corpus.append(k_rs(r, n - r))
    return corpus
