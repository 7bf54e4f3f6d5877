"""Independent ground truth from the tight-span polyhedron itself.

The polyhedron {x : x_i + x_j >= d(i,j) for all i <= j} (the diagonal gives
x_i >= 0) is attacked head on: vertices by exhaustive basis enumeration with
exact solves, bounded faces as intersection-closed tight-set patterns, and
the h-vector by counting descending edges under a generic positive
objective.  Deliberately small and slow; everything dual-side is checked
against it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Optional, Sequence

from .common import num_pairs, pair_index, pair_table
from .errors import Mismatch, NonSimple, PreconditionViolated, ScaleExceeded
from .graphs import EdgeGraph, LoopyGraph
from .metrics import Metric


@dataclass(frozen=True)
class PrimalVertex:
    coords: tuple[Fraction, ...]
    tight: LoopyGraph
    simple: bool  # exactly n tight constraints


@dataclass(frozen=True)
class BoundedFace:
    tight: LoopyGraph
    vertex_ids: tuple[int, ...]
    dim: int


@dataclass(frozen=True)
class BoundedFacePoset:
    n: int
    vertices: tuple[PrimalVertex, ...]
    faces: tuple[BoundedFace, ...]
    f_vector: tuple[int, ...]
    covering: tuple[tuple[int, int], ...]  # (face index, covered face index)


@dataclass(frozen=True)
class OrientationSpec:
    """Strictly positive objective with a fixed lexicographic tie-break."""

    alpha: tuple[Fraction, ...]

    @staticmethod
    def ones(n: int) -> "OrientationSpec":
        return OrientationSpec(tuple(Fraction(1) for _ in range(n)))


def _solve_int(A: list[list[int]], b: list[int]) -> Optional[list[Fraction]]:
    """Exact solve of a square integer system by fraction-free elimination."""
    n = len(A)
    M = [A[i][:] + [b[i]] for i in range(n)]
    prev = 1
    for k in range(n):
        piv = next((r for r in range(k, n) if M[r][k]), None)
        if piv is None:
            return None
        if piv != k:
            M[k], M[piv] = M[piv], M[k]
        for i in range(k + 1, n):
            for j in range(k + 1, n + 1):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
            M[i][k] = 0
        prev = M[k][k]
    x = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        s = Fraction(M[i][n])
        for j in range(i + 1, n):
            s -= M[i][j] * x[j]
        x[i] = s / M[i][i]
    return x


def _int_rank(rows: list[tuple[int, ...]]) -> int:
    M = [list(r) for r in rows]
    rank = 0
    cols = len(M[0]) if M else 0
    for c in range(cols):
        piv = next((r for r in range(rank, len(M)) if M[r][c]), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        for r in range(len(M)):
            if r != rank and M[r][c]:
                f_a, f_b = M[rank][c], M[r][c]
                M[r] = [f_a * x - f_b * y for x, y in zip(M[r], M[rank])]
        rank += 1
        if rank == len(M):
            break
    return rank


def _constraints(d: Metric) -> tuple[list[tuple[int, ...]], list[Fraction]]:
    """Rows and right-hand sides: pair constraints first, then x_i >= 0."""
    n = d.n
    rows: list[tuple[int, ...]] = []
    rhs: list[Fraction] = []
    for p, (i, j) in enumerate(pair_table(n)):
        row = [0] * n
        row[i - 1] = 1
        row[j - 1] = 1
        rows.append(tuple(row))
        rhs.append(d.entries[p])
    for i in range(n):
        row = [0] * n
        row[i] = 1
        rows.append(tuple(row))
        rhs.append(Fraction(0))
    return rows, rhs


def enumerate_vertices(d: Metric) -> tuple[PrimalVertex, ...]:
    """All vertices of the tight-span polyhedron by exact basis enumeration."""
    n = d.n
    if n > 7:
        raise ScaleExceeded("vertex enumeration is capped at n = 7")
    rows, rhs = _constraints(d)
    denom = 1
    for v in rhs:
        denom = denom * v.denominator // _gcd(denom, v.denominator)
    rhs_int = [int(v * denom) for v in rhs]
    m = len(rows)

    found: dict[tuple[Fraction, ...], None] = {}
    for subset in combinations(range(m), n):
        A = [list(rows[i]) for i in subset]
        b = [rhs_int[i] for i in subset]
        x = _solve_int(A, b)
        if x is None:
            continue
        x = [v / denom for v in x]
        if all(
            sum(r * xi for r, xi in zip(rows[c], x)) >= rhs[c] for c in range(m)
        ):
            found.setdefault(tuple(x))

    vertices = []
    for coords in sorted(found):
        edges = []
        loops = []
        for c in range(m):
            if sum(r * xi for r, xi in zip(rows[c], coords)) == rhs[c]:
                if c < num_pairs(n):
                    edges.append(pair_table(n)[c])
                else:
                    loops.append(c - num_pairs(n) + 1)
        tight = LoopyGraph(EdgeGraph.from_edges(n, edges), frozenset(loops))
        simple = len(edges) + len(loops) == n
        vertices.append(PrimalVertex(coords, tight, simple))
    return tuple(vertices)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def _tight_ids(d: Metric, v: PrimalVertex) -> frozenset[int]:
    n = d.n
    ids = [pair_index(n, i, j) for i, j in v.tight.base.edges()]
    ids += [num_pairs(n) + i - 1 for i in v.tight.loops]
    return frozenset(ids)


def bounded_faces(
    d: Metric, vertices: Optional[Sequence[PrimalVertex]] = None
) -> BoundedFacePoset:
    """Intersection closure of vertex tight sets, keeping the bounded patterns.

    A pattern is bounded exactly when its constraints touch every node: the
    recession cone of the polyhedron is the non-negative orthant, so any
    node free of tight constraints yields an escape ray.
    """
    n = d.n
    if vertices is None:
        vertices = enumerate_vertices(d)
    rows, _ = _constraints(d)
    tights = [_tight_ids(d, v) for v in vertices]

    patterns: set[frozenset[int]] = set(tights)
    work = list(patterns)
    while work:
        F = work.pop()
        for t in tights:
            G = F & t
            if G and G not in patterns:
                patterns.add(G)
                work.append(G)

    faces = []
    for F in patterns:
        covered = set()
        for c in F:
            if c < num_pairs(n):
                covered.update(pair_table(n)[c])
            else:
                covered.add(c - num_pairs(n) + 1)
        if len(covered) < n:
            continue  # unbounded: a free node spans an escape ray
        vertex_ids = tuple(
            i for i, t in enumerate(tights) if F <= t
        )
        dim = n - _int_rank([rows[c] for c in F])
        edges = [pair_table(n)[c] for c in sorted(F) if c < num_pairs(n)]
        loops = frozenset(c - num_pairs(n) + 1 for c in F if c >= num_pairs(n))
        faces.append(
            BoundedFace(
                LoopyGraph(EdgeGraph.from_edges(n, edges), loops), vertex_ids, dim
            )
        )
    faces.sort(key=lambda f: (f.dim, f.vertex_ids))

    max_dim = max((f.dim for f in faces), default=-1)
    fvec = tuple(
        sum(1 for f in faces if f.dim == k) for k in range(max_dim + 1)
    )
    covering = []
    for a, fa in enumerate(faces):
        for b, fb in enumerate(faces):
            if fb.dim == fa.dim - 1 and set(fb.vertex_ids) <= set(fa.vertex_ids):
                covering.append((a, b))
    return BoundedFacePoset(n, tuple(vertices), tuple(faces), fvec, tuple(covering))


def h_by_outdegree(
    d: Metric,
    spec: Optional[OrientationSpec] = None,
    poset: Optional[BoundedFacePoset] = None,
) -> tuple[int, ...]:
    """Vertex counts by number of descending bounded edges.

    Requires a simple polyhedron.  The objective is any strictly positive
    vector; ties between vertices break lexicographically on coordinates,
    and positivity keeps every unbounded edge ascending, so out-degrees only
    count bounded edges.
    """
    n = d.n
    if poset is None:
        poset = bounded_faces(d)
    if any(not v.simple for v in poset.vertices):
        raise NonSimple("out-degree counts require a simple polyhedron")
    if spec is None:
        spec = OrientationSpec.ones(n)
    if len(spec.alpha) != n or any(a <= 0 for a in spec.alpha):
        raise PreconditionViolated("objective must be strictly positive of length n")

    def key(vid: int):
        x = poset.vertices[vid].coords
        return (sum(a * xi for a, xi in zip(spec.alpha, x)),) + x

    outdeg = [0] * len(poset.vertices)
    for face in poset.faces:
        if face.dim != 1:
            continue
        a, b = face.vertex_ids
        if key(a) > key(b):
            outdeg[a] += 1
        else:
            outdeg[b] += 1
    h = [0] * (n + 1)
    for v in outdeg:
        h[v] += 1
    return tuple(h)


@dataclass(frozen=True)
class CrosscheckReport:
    ok: bool
    f_primal: tuple[int, ...]
    f_dual: tuple[int, ...]
    h_primal: tuple[int, ...]
    h_dual: tuple[int, ...]
    faces_matched: int


def crosscheck(d: Metric) -> CrosscheckReport:
    """Full dual pipeline against the full primal pipeline.

    Face vectors, h-vectors (out-degree against binomial inversion and the
    glued-ball transform), and the face-by-face bijection between tight
    patterns and interior dual faces must all agree; the first difference
    raises Mismatch.
    """
    from .facevectors import glued_ball_f, h_from_f, tightspan_vectors
    from .subdivision import all_faces, enumerate_cells, _node_edge_masks

    n = d.n
    if n > 6:
        raise ScaleExceeded("crosscheck is capped at n = 6")
    S = enumerate_cells(d)
    F = all_faces(S)
    tv = tightspan_vectors(d, S, F)

    poset = bounded_faces(d)
    f_primal = poset.f_vector
    if f_primal != tv.fT:
        raise Mismatch(f"f-vectors differ: primal {f_primal}, dual {tv.fT}")

    h_primal = h_by_outdegree(d, poset=poset)
    h_dual = tv.hT + (0,) * (n + 1 - len(tv.hT))
    if h_primal != h_dual:
        raise Mismatch(f"h-vectors differ: primal {h_primal}, dual {h_dual}")

    hB = h_from_f(glued_ball_f(F, len(tv.glued)))
    if tuple(hB) != h_dual:
        raise Mismatch(
            f"glued-ball h-vector {hB} differs from out-degree h {h_dual}"
        )

    # bijection between primal tight patterns and interior faces of the glued ball
    primal_patterns = {
        (f.tight.base.bits, f.tight.loops) for f in poset.faces
    }
    node_masks = _node_edge_masks(n)
    dual_patterns: set[tuple[int, frozenset[int]]] = set()
    for level in F.interior_by_dim:
        for mask in level:
            dual_patterns.add((mask, frozenset()))
    for i in sorted(tv.glued):
        star = node_masks[i - 1]
        dual_patterns.add((star, frozenset()))
        dual_patterns.add((star, frozenset([i])))
    if primal_patterns != dual_patterns:
        missing = dual_patterns - primal_patterns
        extra = primal_patterns - dual_patterns
        raise Mismatch(f"face bijection failed: missing {missing}, extra {extra}")

    return CrosscheckReport(
        True, f_primal, tv.fT, h_primal, h_dual, len(poset.faces)
    )
