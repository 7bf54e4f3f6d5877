"""Exact rational metrics: validation, generators, and metric-level predicates.

All distances are fractions.Fraction values (arbitrary precision, always in
lowest terms); no floating point enters anywhere.  A Metric stores only the
upper triangle in lexicographic pair order, so symmetry and the zero diagonal
are structural.  Validation computes the non-negativity and triangle flags
and rejects malformed tables instead of repairing them.

The canonical file format is JSON: {"n": <int>, "upper": ["p/q", ...]} with
entries in lexicographic pair order; floating-point literals are rejected.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .common import format_rational, num_pairs, pair_index, pair_table, parse_rational
from .common import Verdict
from .errors import (
    AsymmetricInput,
    BadArity,
    NodeOutOfRange,
    NonzeroDiagonal,
    SubsetTooSmall,
)
from .graphs import EdgeGraph


@dataclass(frozen=True)
class Metric:
    """Symmetric rational distance function on points 1..n with validation flags."""

    n: int
    entries: tuple[Fraction, ...]  # upper triangle, lexicographic pair order
    is_nonnegative: bool
    satisfies_triangle: bool

    def d(self, i: int, j: int) -> Fraction:
        """Distance between i and j; d(i,i) = 0 by convention."""
        if i == j:
            return Fraction(0)
        return self.entries[pair_index(self.n, i, j)]

    def as_table(self) -> list[list[Fraction]]:
        table = [[Fraction(0)] * self.n for _ in range(self.n)]
        for (i, j), value in zip(pair_table(self.n), self.entries):
            table[i - 1][j - 1] = value
            table[j - 1][i - 1] = value
        return table


@dataclass(frozen=True)
class IsolatedDistance:
    """Distance function equal to a constant on the star of one node, zero elsewhere."""

    node: int
    value: Fraction


def validate_metric(table: Sequence[Sequence[object]]) -> Metric:
    """Build a Metric from a square distance table, computing the flags.

    Rejects non-square or asymmetric tables, nonzero diagonals and n < 3;
    never repairs values.
    """
    n = len(table)
    if n < 3:
        raise BadArity(f"need at least 3 points, got {n}")
    rows = [[parse_rational(x) for x in row] for row in table]
    for row in rows:
        if len(row) != n:
            raise AsymmetricInput("table is not square")
    for i in range(n):
        if rows[i][i] != 0:
            raise NonzeroDiagonal(f"d({i + 1},{i + 1}) = {rows[i][i]} != 0")
        for j in range(i + 1, n):
            if rows[i][j] != rows[j][i]:
                raise AsymmetricInput(
                    f"d({i + 1},{j + 1}) = {rows[i][j]} but d({j + 1},{i + 1}) = {rows[j][i]}"
                )
    entries = tuple(rows[i - 1][j - 1] for i, j in pair_table(n))
    nonneg = all(e >= 0 for e in entries)
    triangle = True
    for i in range(n):
        for j in range(n):
            if j == i:
                continue
            for k in range(n):
                if k == i or k == j:
                    continue
                if rows[i][k] > rows[i][j] + rows[j][k]:
                    triangle = False
    return Metric(n, entries, nonneg, triangle)


def metric_from_upper(n: int, upper: Sequence[Fraction]) -> Metric:
    """Metric from an upper-triangle entry list (validated via the full table)."""
    if len(upper) != num_pairs(n):
        raise BadArity(f"expected {num_pairs(n)} entries for n={n}, got {len(upper)}")
    table = [[Fraction(0)] * n for _ in range(n)]
    for (i, j), value in zip(pair_table(n), upper):
        table[i - 1][j - 1] = value
        table[j - 1][i - 1] = value
    return validate_metric(table)


def gen_dmax(n: int) -> Metric:
    """The perturbed unit metric 1 + 1/(n^2 + i*n + j); attains every upper bound."""
    if n < 3:
        raise BadArity(f"need n >= 3, got {n}")
    upper = tuple(
        Fraction(1) + Fraction(1, n * n + i * n + j) for i, j in pair_table(n)
    )
    return metric_from_upper(n, upper)


def gen_dgamma(n: int, graph: EdgeGraph) -> Metric:
    """Graph-weighted metric: distance 2 on edges of the graph, dmax values elsewhere."""
    if n < 3:
        raise BadArity(f"need n >= 3, got {n}")
    if graph.n != n:
        raise NodeOutOfRange(f"graph on {graph.n} nodes cannot weight a {n}-point metric")
    upper = tuple(
        Fraction(2) if graph.has_edge(i, j) else Fraction(1) + Fraction(1, n * n + i * n + j)
        for i, j in pair_table(n)
    )
    return metric_from_upper(n, upper)


def dmin_graph(n: int) -> EdgeGraph:
    """Cluster graph of floor(n/3) triangles with n mod 3 isolated nodes.

    Nodes group as {1,2,3},{4,5,6},...; when n = 2 (mod 3) the last node is
    kept isolated even though its group would otherwise pair it with n-1.
    """
    if n < 3:
        raise BadArity(f"need n >= 3, got {n}")
    edges = []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            if (i - 1) // 3 != (j - 1) // 3:
                continue
            if n % 3 == 2 and j >= n:
                continue
            edges.append((i, j))
    return EdgeGraph.from_edges(n, edges)


def gen_dmin(n: int) -> Metric:
    """Triangle-cluster metric attaining the top-dimension lower bound."""
    return gen_dgamma(n, dmin_graph(n))


def gen_random(n: int, seed: int, resolution: int = 0) -> Metric:
    """Deterministic random metric with entries 1 + k/resolution, k in [1, resolution/n].

    All entries lie in (1, 1 + 1/n], so any two are within a factor below 2
    and the triangle inequality holds structurally.  Genericity is not
    guaranteed; test it.  resolution defaults to max(10^4, n^4).
    """
    if n < 3:
        raise BadArity(f"need n >= 3, got {n}")
    if resolution <= 0:
        resolution = max(10_000, n**4)
    rng = random.Random(seed)
    top = max(1, resolution // n)
    upper = tuple(
        Fraction(1) + Fraction(rng.randint(1, top), resolution) for _ in pair_table(n)
    )
    return metric_from_upper(n, upper)


def shift_by_isolated(
    d: Metric, shifts: Iterable[IsolatedDistance]
) -> list[list[Fraction]]:
    """Pointwise sum of d with isolated distance functions, as a raw table.

    The result may violate the metric axioms; callers re-validate.
    """
    table = d.as_table()
    for shift in shifts:
        i = shift.node - 1
        if not (0 <= i < d.n):
            raise NodeOutOfRange(f"node {shift.node} not in 1..{d.n}")
        for j in range(d.n):
            if j != i:
                table[i][j] += shift.value
                table[j][i] += shift.value
    return table


def submetric(d: Metric, nodes: Iterable[int]) -> Metric:
    """Metric induced on a node subset, relabeled 1..|S| preserving order."""
    subset = sorted(set(nodes))
    if len(subset) < 3:
        raise SubsetTooSmall(f"need at least 3 nodes, got {len(subset)}")
    for v in subset:
        if not (1 <= v <= d.n):
            raise NodeOutOfRange(f"node {v} not in 1..{d.n}")
    m = len(subset)
    upper = tuple(
        d.d(subset[i - 1], subset[j - 1]) for i, j in pair_table(m)
    )
    return metric_from_upper(m, upper)


def check_dmax_property(d: Metric) -> Verdict:
    """Monotone difference test over all quadruples i <= j <= k <= l.

    Checks d(i,j)-d(i,k) <= d(j,l)-d(k,l) and d(i,l)-d(i,k) <= d(j,l)-d(j,k),
    with coinciding indices allowed (d(x,x) = 0).  Returns the first failing
    quadruple as witness.
    """
    n = d.n
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            for k in range(j, n + 1):
                for l in range(k, n + 1):
                    if d.d(i, j) - d.d(i, k) > d.d(j, l) - d.d(k, l):
                        return Verdict(False, (i, j, k, l))
                    if d.d(i, l) - d.d(i, k) > d.d(j, l) - d.d(j, k):
                        return Verdict(False, (i, j, k, l))
    return Verdict(True)


def strict_triangle_nodes(d: Metric) -> frozenset[int]:
    """Nodes i with d(i,j) + d(i,k) > d(j,k) strictly for all j,k != i.

    These are the nodes whose corner simplex survives in the tight span
    (one extra vertex and edge each).
    """
    out = []
    for i in range(1, d.n + 1):
        strict = True
        for j in range(1, d.n + 1):
            if j == i:
                continue
            for k in range(j + 1, d.n + 1):
                if k == i:
                    continue
                if d.d(i, j) + d.d(i, k) <= d.d(j, k):
                    strict = False
        if strict:
            out.append(i)
    return frozenset(out)


# -- canonical JSON file format -------------------------------------------------


def metric_to_json(d: Metric) -> str:
    payload = {"n": d.n, "upper": [format_rational(e) for e in d.entries]}
    return json.dumps(payload, indent=None, separators=(", ", ": ")) + "\n"


def _reject_float(text: str) -> Fraction:
    raise ValueError(f"floating-point literal rejected: {text!r}")


def metric_from_json(text: str) -> Metric:
    payload = json.loads(text, parse_float=_reject_float)
    if not isinstance(payload, dict) or "n" not in payload or "upper" not in payload:
        raise ValueError('metric JSON must be {"n": ..., "upper": [...]}')
    n = payload["n"]
    if not isinstance(n, int):
        raise ValueError("n must be an integer")
    upper = [parse_rational(x) for x in payload["upper"]]
    return metric_from_upper(n, tuple(upper))


def load_metric(path: str) -> Metric:
    with open(path, "r", encoding="utf-8") as fh:
        return metric_from_json(fh.read())


def save_metric(d: Metric, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(metric_to_json(d))
