"""Shared fixtures and small independent oracles for the test suite."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from tightspan.facevectors import tightspan_vectors
from tightspan.metrics import Metric, gen_dmax, gen_dmin, gen_random, validate_metric
from tightspan.subdivision import FaceSet, Subdivision, all_faces, enumerate_cells

FOUR_POINTS = [[0, 2, 3, 2], [2, 0, 2, 3], [3, 2, 0, 2], [2, 3, 2, 0]]
IDEAL_FOUR = [[0, 1, 2, 1], [1, 0, 1, 2], [2, 1, 0, 1], [1, 2, 1, 0]]


@lru_cache(maxsize=None)
def metric(name: str) -> Metric:
    kind, _, arg = name.partition("-")
    if kind == "4points":
        return validate_metric(FOUR_POINTS)
    if kind == "ideal":
        return validate_metric(IDEAL_FOUR)
    if kind == "dmax":
        return gen_dmax(int(arg))
    if kind == "dmin":
        return gen_dmin(int(arg))
    if kind == "rand":
        n, seed = arg.split(".")
        return gen_random(int(n), int(seed))
    raise KeyError(name)


@lru_cache(maxsize=None)
def subdivision(name: str) -> Subdivision:
    return enumerate_cells(metric(name))


@lru_cache(maxsize=None)
def faces(name: str) -> FaceSet:
    return all_faces(subdivision(name))


@lru_cache(maxsize=None)
def tsv(name: str):
    return tightspan_vectors(metric(name), subdivision(name), faces(name))


# -- independent oracles -------------------------------------------------------


def det_int(rows: list[list[int]]) -> int:
    """Exact integer determinant by fraction-free elimination."""
    n = len(rows)
    M = [row[:] for row in rows]
    sign = 1
    prev = 1
    for k in range(n):
        piv = next((r for r in range(k, n) if M[r][k]), None)
        if piv is None:
            return 0
        if piv != k:
            M[k], M[piv] = M[piv], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
            M[i][k] = 0
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def rank_int(rows: list[list[int]]) -> int:
    """Exact rank over the rationals by integer elimination."""
    M = [row[:] for row in rows]
    rank = 0
    cols = len(M[0]) if M else 0
    for c in range(cols):
        piv = next((r for r in range(rank, len(M)) if M[r][c]), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        for r in range(len(M)):
            if r != rank and M[r][c]:
                a, b = M[rank][c], M[r][c]
                M[r] = [a * x - b * y for x, y in zip(M[r], M[rank])]
        rank += 1
        if rank == len(M):
            break
    return rank


def incidence_rows(n: int, edges) -> list[list[int]]:
    """Vertex vectors e_i + e_j of the given edges of K_n."""
    rows = []
    for i, j in edges:
        row = [0] * n
        row[i - 1] = 1
        row[j - 1] = 1
        rows.append(row)
    return rows


def spanning_subgraph_masks(n: int, m_edges: int):
    """All m_edges-subsets of K_n edges covering every node (brute force)."""
    from tightspan.common import num_pairs, pair_table

    pairs = pair_table(n)
    for combo in combinations(range(num_pairs(n)), m_edges):
        covered = set()
        for p in combo:
            covered.update(pairs[p])
        if len(covered) == n:
            yield combo


def best_perfect_matching(d: Metric) -> tuple[Fraction, frozenset]:
    """Maximum-weight perfect matching by exhaustive recursion (small n, n even)."""
    n = d.n
    best: list = [None, None]

    def rec(free: frozenset, acc: Fraction, used: frozenset) -> None:
        if not free:
            if best[0] is None or acc > best[0]:
                best[0], best[1] = acc, used
            return
        i = min(free)
        for j in sorted(free - {i}):
            rec(free - {i, j}, acc + d.d(i, j), used | {(i, j)})

    rec(frozenset(range(1, n + 1)), Fraction(0), frozenset())
    return best[0], best[1]
