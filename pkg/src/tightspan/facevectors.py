"""f/h/g-vector calculus, sphere and ball identities, and tight-span vectors.

Conventions.  An FVector for a d-dimensional complex stores (f_0, ..., f_d)
plus the empty-face count f_{-1} (1 for honest complexes, 0 for the interior
pseudo-complex of a ball, whose empty face belongs to the boundary).  Its
h-vector has entries 0..d+1 through the binomial transform; the g-vector is
g_0 = 1 with successive h differences.

The tight span of a generic metric reads off the dual triangulation: its
k-faces match the interior (n-1-k)-faces, plus one extra vertex and edge for
every node whose corner simplex survives (all n of them for generic input).
The tight-span h-vector comes from the out-degree transform, inverted here
by binomial inversion.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Optional, Sequence

from .common import Verdict
from .errors import InapplicablePremise, NotGeneric, PreconditionViolated
from .metrics import Metric, strict_triangle_nodes
from .subdivision import FaceSet, Subdivision, all_faces, _node_edge_masks


@dataclass(frozen=True)
class FVector:
    """Face counts (f_0, ..., f_dim) with an explicit empty-face count."""

    counts: tuple[int, ...]
    empty: int = 1

    @property
    def dim(self) -> int:
        return len(self.counts) - 1

    def at(self, k: int) -> int:
        if k == -1:
            return self.empty
        if 0 <= k < len(self.counts):
            return self.counts[k]
        return 0

    def euler(self) -> int:
        return sum((-1) ** k * c for k, c in enumerate(self.counts))


def h_from_f(f: FVector) -> tuple[int, ...]:
    """Binomial transform: h_k = sum_i (-1)^(k-i) C(dim+1-i, dim+1-k) f_{i-1}."""
    d = f.dim
    out = []
    for k in range(d + 2):
        total = 0
        for i in range(k + 1):
            total += (-1) ** (k - i) * comb(d + 1 - i, d + 1 - k) * f.at(i - 1)
        out.append(total)
    return tuple(out)


def f_from_h(h: Sequence[int]) -> FVector:
    """Inverse transform; h has entries 0..dim+1 for a dim-dimensional complex."""
    d = len(h) - 2
    counts = []
    for k in range(d + 1):
        counts.append(sum(comb(d + 1 - i, d - k) * h[i] for i in range(k + 2)))
    empty = h[0]
    return FVector(tuple(counts), empty)


def g_from_h(h: Sequence[int]) -> tuple[int, ...]:
    """g_0 = 1 and g_k = h_k - h_{k-1}."""
    return (1,) + tuple(h[k] - h[k - 1] for k in range(1, len(h)))


def split_interior_boundary(F: FaceSet) -> tuple[FVector, FVector, FVector]:
    """(total, boundary, interior) face counts of a triangulated ball.

    The boundary complex has dimension n-2; the interior pseudo-vector keeps
    full length with empty count 0.
    """
    n = F.n
    total = list(F.face_counts())
    inner = list(F.interior_counts())
    boundary = [t - i for t, i in zip(total, inner)]
    if boundary[-1] != 0:
        raise PreconditionViolated("top-dimensional faces cannot lie on the boundary")
    return (
        FVector(tuple(total), 1),
        FVector(tuple(boundary[: n - 1]), 1),
        FVector(tuple(inner), 0),
    )


@dataclass(frozen=True)
class TightSpanVectors:
    """Face and h-vectors of the tight span, with and without corner gluing."""

    fT: tuple[int, ...]
    hT: tuple[int, ...]
    glued: frozenset[int]
    ideal_fT: tuple[int, ...]
    ideal_hT: tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.fT) - 1


def _invert_outdegree(f: Sequence[int]) -> tuple[int, ...]:
    """h_j = sum_k (-1)^(k-j) C(k,j) f_k, inverting f_k = sum_i C(i,k) h_i."""
    return tuple(
        sum((-1) ** (k - j) * comb(k, j) * f[k] for k in range(j, len(f)))
        for j in range(len(f))
    )


def tightspan_vectors(
    d: Metric, S: Subdivision, faces: Optional[FaceSet] = None
) -> TightSpanVectors:
    """Tight-span f/h-vectors from the dual triangulation.

    fT_k before gluing is the count of interior (n-1-k)-faces; each strictly
    positive corner node then contributes one vertex and one edge.
    """
    if not S.generic:
        raise NotGeneric("tight-span vectors are defined for generic metrics")
    F = faces if faces is not None else all_faces(S)
    n = S.n
    interior = F.interior_counts()
    ideal = [interior[n - 1 - k] for k in range(n)]
    while ideal and ideal[-1] == 0:
        ideal.pop()
    glued = strict_triangle_nodes(d)
    fT = list(ideal)
    if glued:
        while len(fT) < 2:
            fT.append(0)
        fT[0] += len(glued)
        fT[1] += len(glued)
    return TightSpanVectors(
        tuple(fT),
        _invert_outdegree(fT),
        glued,
        tuple(ideal),
        _invert_outdegree(ideal),
    )


def glued_ball_f(F: FaceSet, glued_count: int) -> FVector:
    """f-vector of the triangulation with a corner simplex glued at each counted node.

    A glued corner simplex at node i has the star edges plus one new vertex;
    it contributes C(n-1, k) new k-faces.
    """
    n = F.n
    total = list(F.face_counts())
    for k in range(n):
        total[k] += glued_count * comb(n - 1, k)
    return FVector(tuple(total), 1)


def check_dehn_sommerville(f_boundary: FVector) -> Verdict:
    """Sphere symmetry h_k = h_{dim+1-k}; witness is the first failing index."""
    h = h_from_f(f_boundary)
    top = len(h) - 1
    for k in range(len(h)):
        if h[k] != h[top - k]:
            return Verdict(False, (k, h))
    return Verdict(True, h)


def check_ball_relations(F: FaceSet) -> Verdict:
    """Ball-boundary identities g_k(bd) = h_k(B) - h_{n-k}(B) and h_{n-k}(B) = h_k(int)."""
    f_total, f_bd, f_int = split_interior_boundary(F)
    return ball_relations_from_vectors(f_total, f_bd, f_int)


def ball_relations_from_vectors(
    f_total: FVector, f_bd: FVector, f_int: FVector
) -> Verdict:
    n = f_total.dim + 1
    hB = h_from_f(f_total)
    h_int = h_from_f(f_int)
    g_bd = g_from_h(h_from_f(f_bd))
    for k in range(n):
        if g_bd[k] != hB[k] - hB[n - k]:
            return Verdict(False, ("boundary-g", k, g_bd[k], hB[k] - hB[n - k]))
    for k in range(n + 1):
        if hB[n - k] != h_int[k]:
            return Verdict(False, ("interior-h", k, hB[n - k], h_int[k]))
    return Verdict(True, (hB, h_int, g_bd))


@dataclass(frozen=True)
class AsffReport:
    """Almost-small-face-free structure of a triangulated ball."""

    ok: bool
    min_interior_dim: int
    very_small_bound: int  # interior faces must have dim >= this
    h_vanishing_ok: bool
    h_boundary_match_ok: bool
    top_interior_count: int
    top_interior_cap: int
    top_count_ok: bool
    boundary_determines_f_ok: bool


def check_asff(F: FaceSet) -> AsffReport:
    """Interior-dimension floor, h-vanishing, and the top interior-face cap.

    For an n-point triangulation: no interior face has dimension below
    floor((n-1)/2); with e = floor((n-1)/2) - 1 the ball h-vector vanishes
    from n-e-1 on and matches the boundary g-vector up to e+1; interior
    faces of the minimal dimension number at most 1 for even n and at most
    n for odd n; and the boundary determines f (odd n exactly, even n up to
    the single h_(n/2) entry).
    """
    n = F.n
    f_total, f_bd, f_int = split_interior_boundary(F)
    floor_dim = (n - 1) // 2
    interior = F.interior_counts()
    min_int_dim = next((k for k, c in enumerate(interior) if c), n - 1)
    sff_ok = min_int_dim >= floor_dim

    e = floor_dim - 1
    hB = h_from_f(f_total)
    g_bd = g_from_h(h_from_f(f_bd))
    vanish_ok = all(hB[k] == 0 for k in range(n - e - 1, n + 1))
    match_ok = all(hB[k] == g_bd[k] for k in range(0, e + 2))

    top_dim = -(-n // 2) - 1  # ceil(n/2) - 1, the least possible interior dimension
    top_count = interior[top_dim]
    top_cap = 1 if n % 2 == 0 else n
    top_ok = top_count <= top_cap

    # boundary data rebuilds the reversed interior counts (the dual face counts)
    reversed_interior = [interior[n - 1 - k] for k in range(n)]
    recon = True
    if n % 2 == 1:
        for k in range(n):
            expect = sum(comb(i, k) * g_bd[i] for i in range(k, (n - 1) // 2 + 1))
            if reversed_interior[k] != expect:
                recon = False
    else:
        for k in range(n):
            expect = sum(comb(i, k) * g_bd[i] for i in range(k, n // 2)) + comb(
                n // 2, k
            ) * hB[n // 2]
            if reversed_interior[k] != expect:
                recon = False

    ok = sff_ok and vanish_ok and match_ok and top_ok and recon
    return AsffReport(
        ok,
        min_int_dim,
        floor_dim,
        vanish_ok,
        match_ok,
        top_count,
        top_cap,
        top_ok,
        recon,
    )


# -- inductive boundary formulas -----------------------------------------------------


def induced_face_counts(F: FaceSet, kept_nodes: Sequence[int]) -> FVector:
    """Face counts of the subcomplex on faces avoiding every dropped node.

    This is the triangulation induced on the hypersimplex face where the
    dropped coordinates vanish, a complex of dimension len(kept_nodes) - 1.
    """
    n = F.n
    node_masks = _node_edge_masks(n)
    avoid = 0
    kept = set(kept_nodes)
    for v in range(1, n + 1):
        if v not in kept:
            avoid |= node_masks[v - 1]
    q = len(kept)
    counts = [0] * q
    for k in range(min(len(F.by_dim), q)):
        counts[k] = sum(1 for mask in F.by_dim[k] if mask & avoid == 0)
    return FVector(tuple(counts), 1)


def _level_fvector(n: int, q: int, common: dict[int, FVector]) -> FVector:
    """Common induced f-vector at the q-node level, padded to formal dimension q-1.

    Levels below three nodes are conventional: a two-node level is a single
    vertex, smaller levels are void (only the empty face survives).
    """
    m = q - 1
    if q >= 3:
        base = common[q]
        counts = list(base.counts) + [0] * (m + 1 - len(base.counts))
        return FVector(tuple(counts), 1)
    if q == 2:
        return FVector((1, 0), 1)
    return FVector((0,) * (m + 1) if m >= 0 else (), 1)


def check_inductive_step(
    d: Metric,
    S: Optional[Subdivision] = None,
    F: Optional[FaceSet] = None,
) -> Verdict:
    """Boundary face counts from the common facet restrictions, all levels.

    Verifies the top formula f_{n-2}(bd) = n + n f^(n-2)_{n-2}, the
    inclusion-exclusion formula for every lower k, and the boundary g-vector
    double sum over the level h-vectors.  Raises InapplicablePremise when
    same-size restrictions disagree.
    """
    if d.n < 5:
        raise PreconditionViolated("inductive formulas need n >= 5")
    from .subdivision import enumerate_cells

    n = d.n
    if S is None:
        S = enumerate_cells(d)
    if not S.generic:
        raise NotGeneric("inductive formulas apply to generic metrics")
    if F is None:
        F = all_faces(S)

    common: dict[int, FVector] = {}
    nodes = list(range(1, n + 1))
    for q in range(n - 1, 2, -1):
        seen: Optional[FVector] = None
        for kept in _subsets(nodes, q):
            fv = induced_face_counts(F, kept)
            if seen is None:
                seen = fv
            elif fv != seen:
                raise InapplicablePremise(
                    f"{q}-node restrictions disagree: {kept} gives {fv.counts},"
                    f" expected {seen.counts}"
                )
        common[q] = seen  # type: ignore[assignment]

    _, f_bd, _ = split_interior_boundary(F)

    top_expected = n + n * _level_fvector(n, n - 1, common).at(n - 2)
    if f_bd.at(n - 2) != top_expected:
        return Verdict(False, ("top", f_bd.at(n - 2), top_expected))

    for k in range(0, n - 2):
        total = 0
        for i in range(1, n - k):
            total += (-1) ** (i - 1) * comb(n, i) * _level_fvector(n, n - i, common).at(k)
        if f_bd.at(k) != total:
            return Verdict(False, ("alternating", k, f_bd.at(k), total))

    g_bd = g_from_h(h_from_f(f_bd))
    level_h = {
        i: h_from_f(_level_fvector(n, n - i, common)) for i in range(1, n + 1)
    }
    for k in range(0, n // 2 + 1):
        total = 0
        for i in range(1, n + 1):
            h_level = level_h[i]
            for j in range(0, min(i, k) + 1):
                idx = k - j
                if 0 <= idx < len(h_level):
                    total += (
                        (-1) ** (i + j - 1) * comb(n, i) * comb(i, j) * h_level[idx]
                    )
        if g_bd[k] != total:
            return Verdict(False, ("g-sum", k, g_bd[k], total))
    return Verdict(True)


def _subsets(items: list[int], size: int):
    return combinations(items, size)


def report_json(
    f_total: FVector, f_bd: FVector, f_int: FVector, tv: TightSpanVectors, checks: dict
) -> dict:
    """Machine-readable report payload used by the CLI."""
    return {
        "f": list(f_total.counts),
        "f_boundary": list(f_bd.counts),
        "f_interior": list(f_int.counts),
        "h": list(h_from_f(f_total)),
        "h_boundary": list(h_from_f(f_bd)),
        "h_interior": list(h_from_f(f_int)),
        "g_boundary": list(g_from_h(h_from_f(f_bd))),
        "fT": list(tv.fT),
        "hT": list(tv.hT),
        "ideal_fT": list(tv.ideal_fT),
        "ideal_hT": list(tv.ideal_hT),
        "glued": sorted(tv.glued),
        "checks": checks,
    }
