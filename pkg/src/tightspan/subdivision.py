"""Regular subdivision of the second hypersimplex induced by a metric.

Lifting the vertex e_i + e_j of the hypersimplex to height d(i,j) induces a
polyhedral subdivision whose cells are subgraphs of K_n carrying a height
vector with lam_i + lam_j = d(i,j) on edges and strictly above d off the
cell.  For generic metrics the subdivision is a triangulation: the maximal
cells are the spanning n-edge subgraphs whose components each contain
exactly one odd cycle.

Two independent enumeration routes are provided: exhaustive filtration of
all candidate graphs (the trusted oracle, default up to n = 8) and a
ridge-pivot traversal seeded from one known cell (fast at any size).

Certificate solving is done in integers scaled by twice the common entry
denominator, so the hot loop never touches Fraction arithmetic.
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

from .common import format_rational, num_pairs, pair_index, pair_table
from .errors import (
    DegenerateRidge,
    NotATriangulation,
    NotSupported,
    PreconditionViolated,
    SeedInvalid,
    SeedSearchFailed,
    ThresholdExceeded,
)
from .graphs import EdgeGraph, cell_volume, is_odd_unicyclic
from .metrics import Metric, check_dmax_property, submetric


@dataclass(frozen=True)
class Cell:
    """Maximal cell: spanning odd-unicyclic graph plus its exact height certificate."""

    graph: EdgeGraph
    heights: tuple[Fraction, ...]

    @property
    def volume(self) -> int:
        return cell_volume(self.graph)


@dataclass(frozen=True)
class DegeneracyReport:
    """The height solution meets d with equality on a pair off the graph."""

    graph: EdgeGraph
    pair: tuple[int, int]
    heights: tuple[Fraction, ...]


@dataclass(frozen=True)
class NotACell:
    """The height solution drops below d on a pair off the graph."""

    graph: EdgeGraph
    pair: tuple[int, int]
    heights: tuple[Fraction, ...]


@dataclass(frozen=True)
class Subdivision:
    """Maximal cells of the subdivision, canonically sorted by graph bitset."""

    n: int
    metric: Metric
    maximal_cells: tuple[Cell, ...]
    generic: bool
    degeneracy_witness: Optional[tuple[EdgeGraph, tuple[int, int]]]

    @property
    def total_volume(self) -> int:
        return sum(c.volume for c in self.maximal_cells)

    def cell_graphs(self) -> tuple[EdgeGraph, ...]:
        return tuple(c.graph for c in self.maximal_cells)


@dataclass(frozen=True)
class GenericityVerdict:
    generic: bool
    witness: Optional[tuple[EdgeGraph, tuple[int, int]]]
    subdivision: Optional[Subdivision]

    def __bool__(self) -> bool:
        return self.generic


@dataclass(frozen=True)
class FaceSet:
    """All faces of a triangulation grouped by dimension, with interior tags.

    A k-dimensional face is a graph with k+1 edges, stored as its bitmask.
    """

    n: int
    by_dim: tuple[tuple[int, ...], ...]
    interior_by_dim: tuple[frozenset[int], ...]

    def face_counts(self) -> tuple[int, ...]:
        return tuple(len(level) for level in self.by_dim)

    def interior_counts(self) -> tuple[int, ...]:
        return tuple(len(level) for level in self.interior_by_dim)

    def graphs(self, dim: int) -> tuple[EdgeGraph, ...]:
        return tuple(EdgeGraph(self.n, mask) for mask in self.by_dim[dim])


# -- candidate pool ---------------------------------------------------------------


@lru_cache(maxsize=None)
def candidate_graphs(n: int) -> tuple[int, ...]:
    """Bitmasks of every spanning n-edge subgraph of K_n with odd-unicyclic components.

    These are exactly the edge sets whose incidence vectors e_i + e_j form a
    basis, hence the candidate maximal cells for every metric on n points.
    Generated once per n by a pruned search over edge combinations.
    """
    m = num_pairs(n)
    pairs = pair_table(n)
    ends = [(i - 1, j - 1) for i, j in pairs]
    last_edge = [pair_index(n, v, n) if v < n else m - 1 for v in range(1, n + 1)]

    parent = list(range(n))
    rank_ = [0] * n
    par = [0] * n
    cyc = [False] * n
    covered = [False] * n
    ncov = 0
    results: list[int] = []

    def find(x: int) -> tuple[int, int]:
        p = 0
        while parent[x] != x:
            p ^= par[x]
            x = parent[x]
        return x, p

    def rec(start: int, count: int, mask: int) -> None:
        nonlocal ncov
        if count == n:
            if ncov == n and all(cyc[r] for r in range(n) if parent[r] == r):
                results.append(mask)
            return
        remaining = n - count
        if n - ncov > 2 * remaining:
            return
        cap = m - remaining
        for v in range(n):
            if not covered[v]:
                cap = min(cap, last_edge[v])
                break
        for e in range(start, cap + 1):
            u, v = ends[e]
            ru, pu = find(u)
            rv, pv = find(v)
            undo = []
            if ru == rv:
                # closing a cycle: must be odd (equal parity) and the first one
                if pu != pv or cyc[ru]:
                    continue
                cyc[ru] = True
                undo.append(("c", ru))
            else:
                if cyc[ru] and cyc[rv]:
                    continue
                if rank_[ru] < rank_[rv]:
                    ru, rv, pu, pv = rv, ru, pv, pu
                undo.append(("u", rv, ru, rank_[ru], cyc[ru]))
                parent[rv] = ru
                par[rv] = pu ^ pv ^ 1
                if rank_[ru] == rank_[rv]:
                    rank_[ru] += 1
                if cyc[rv]:
                    cyc[ru] = True
            for x in (u, v):
                if not covered[x]:
                    covered[x] = True
                    ncov += 1
                    undo.append(("v", x))
            rec(e + 1, count + 1, mask | (1 << e))
            for item in reversed(undo):
                if item[0] == "c":
                    cyc[item[1]] = False
                elif item[0] == "u":
                    _, rv2, ru2, old_rank, old_cyc = item
                    parent[rv2] = rv2
                    par[rv2] = 0
                    rank_[ru2] = old_rank
                    cyc[ru2] = old_cyc
                else:
                    covered[item[1]] = False
                    ncov -= 1

    rec(0, 0, 0)
    results.sort()
    return tuple(results)


# -- scaled certificate arithmetic ---------------------------------------------


def _scaled_entries(d: Metric) -> tuple[tuple[int, ...], int]:
    """Entries as integers over their common denominator D."""
    D = 1
    for e in d.entries:
        D = math.lcm(D, e.denominator)
    return tuple(e.numerator * (D // e.denominator) for e in d.entries), D


def _solve_heights_scaled(
    n: int, mask: int, dnum: Sequence[int]
) -> Optional[list[int]]:
    """Heights scaled by 2D for the equality system of an odd-unicyclic mask.

    Each odd cycle pins its values through the alternating distance sum; tree
    edges propagate outward.  Returns None when a cycle turns out even.
    """
    pairs = pair_table(n)
    adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    bits = mask
    while bits:
        low = bits & -bits
        idx = low.bit_length() - 1
        i, j = pairs[idx]
        adj[i - 1].append((j - 1, idx))
        adj[j - 1].append((i - 1, idx))
        bits ^= low

    degw = [len(a) for a in adj]
    removed = [False] * n
    order = [v for v in range(n) if degw[v] == 1]
    head = 0
    while head < len(order):
        v = order[head]
        head += 1
        removed[v] = True
        for u, _ in adj[v]:
            if not removed[u]:
                degw[u] -= 1
                if degw[u] == 1:
                    order.append(u)

    lam: list[Optional[int]] = [None] * n
    for s in range(n):
        if removed[s] or lam[s] is not None or not adj[s]:
            continue
        cyc_nodes = [s]
        cyc_edges = []
        prev, cur = -1, s
        while True:
            nxt = nidx = None
            for u, eidx in adj[cur]:
                if not removed[u] and u != prev:
                    nxt, nidx = u, eidx
                    break
            cyc_edges.append(nidx)
            if nxt == s:
                break
            cyc_nodes.append(nxt)
            prev, cur = cur, nxt
        if len(cyc_nodes) % 2 == 0:
            return None
        acc = 0
        sign = 1
        for eidx in cyc_edges:
            acc += sign * dnum[eidx]
            sign = -sign
        lam[s] = acc
        for t in range(1, len(cyc_nodes)):
            lam[cyc_nodes[t]] = 2 * dnum[cyc_edges[t - 1]] - lam[cyc_nodes[t - 1]]

    queue = [v for v in range(n) if lam[v] is not None]
    head = 0
    while head < len(queue):
        v = queue[head]
        head += 1
        for u, eidx in adj[v]:
            if lam[u] is None:
                lam[u] = 2 * dnum[eidx] - lam[v]
                queue.append(u)
    return lam  # type: ignore[return-value]


_STRICT, _FLAT, _LOOP, _VIOLATED = 0, 1, 2, 3


def _classify_scaled(
    n: int, mask: int, dnum: Sequence[int], pairs0: Sequence[tuple[int, int]]
) -> tuple[int, object]:
    """Classify one candidate mask; returns (status, payload).

    status _STRICT  -> payload = scaled heights (a cell, all inequalities strict)
    status _FLAT    -> payload = (pair slot, heights): equality off the graph
    status _LOOP    -> payload = (node, heights): some height is not positive
    status _VIOLATED-> payload = pair slot below d (not a cell; scan stops early)
    """
    lam = _solve_heights_scaled(n, mask, dnum)
    if lam is None:
        raise PreconditionViolated("candidate has an even cycle")
    flat_slot = None
    for p in range(len(pairs0)):
        if mask >> p & 1:
            continue
        u, v = pairs0[p]
        gap = lam[u] + lam[v] - 2 * dnum[p]
        if gap < 0:
            return _VIOLATED, p
        if gap == 0 and flat_slot is None:
            flat_slot = p
    if flat_slot is not None:
        return _FLAT, (flat_slot, lam)
    for i in range(n):
        if lam[i] <= 0:
            return _LOOP, (i, lam)
    return _STRICT, lam


def _classify_chunk(args: tuple) -> tuple[list, list]:
    n, dnum, masks = args
    pairs0 = tuple((i - 1, j - 1) for i, j in pair_table(n))
    kept = []
    witnesses = []
    for mask in masks:
        status, payload = _classify_scaled(n, mask, dnum, pairs0)
        if status == _STRICT:
            kept.append((mask, payload))
        elif status == _FLAT:
            witnesses.append((mask, ("pair", payload[0])))
        elif status == _LOOP:
            kept.append((mask, payload[1]))
            witnesses.append((mask, ("loop", payload[0])))
    return kept, witnesses


# -- public certificate API -------------------------------------------------------


def _require_candidate(d: Metric, G: EdgeGraph) -> None:
    if G.n != d.n:
        raise PreconditionViolated("graph and metric sizes differ")
    if G.edge_count != d.n or not G.is_spanning() or not is_odd_unicyclic(G):
        raise PreconditionViolated(
            "certificates exist only for spanning n-edge graphs"
            " with odd-unicyclic components"
        )


def lambda_certificate(d: Metric, G: EdgeGraph):
    """Solve the height system of G exactly and compare against d off the graph.

    Returns a Cell when every off-graph pair is strictly above d, a
    DegeneracyReport when some pair is met with equality (and none violated),
    and NotACell when some pair falls below d.
    """
    _require_candidate(d, G)
    n = d.n
    dnum, D = _scaled_entries(d)
    lam = _solve_heights_scaled(n, G.bits, dnum)
    if lam is None:
        raise PreconditionViolated("graph contains an even cycle")
    heights = tuple(Fraction(v, 2 * D) for v in lam)
    pairs = pair_table(n)
    flat = None
    for p, (i, j) in enumerate(pairs):
        if G.bits >> p & 1:
            continue
        gap = lam[i - 1] + lam[j - 1] - 2 * dnum[p]
        if gap < 0:
            return NotACell(G, (i, j), heights)
        if gap == 0 and flat is None:
            flat = (i, j)
    if flat is not None:
        return DegeneracyReport(G, flat, heights)
    return Cell(G, heights)


def enumerate_cells(d: Metric, threshold: int = 8, jobs: int = 1) -> Subdivision:
    """All maximal cells by exhaustive candidate filtration.

    Every spanning odd-unicyclic n-edge graph is tested for a strict height
    certificate.  The result is non-generic when some candidate yields an
    off-graph equality, or when a strict certificate touches a corner of the
    positive orthant (a zero height, reported with the diagonal pair (i,i)).
    """
    n = d.n
    if n > threshold:
        raise ThresholdExceeded(
            f"n={n} above enumeration threshold {threshold}; use traverse_cells"
        )
    pool = candidate_graphs(n)
    dnum, D = _scaled_entries(d)
    pairs0 = tuple((i - 1, j - 1) for i, j in pair_table(n))

    kept: list[tuple[int, Sequence[int]]] = []
    witnesses: list[tuple[int, tuple[str, int]]] = []
    if jobs > 1:
        chunks = max(1, len(pool) // (jobs * 4))
        parts = [pool[k : k + chunks] for k in range(0, len(pool), chunks)]
        with ProcessPoolExecutor(max_workers=jobs) as pom:
            for part_kept, part_wit in pom.map(
                _classify_chunk, [(n, dnum, part) for part in parts]
            ):
                kept.extend(part_kept)
                witnesses.extend(part_wit)
        kept.sort(key=lambda kv: kv[0])
    else:
        for mask in pool:
            status, payload = _classify_scaled(n, mask, dnum, pairs0)
            if status == _STRICT:
                kept.append((mask, payload))
            elif status == _FLAT:
                witnesses.append((mask, ("pair", payload[0])))
            elif status == _LOOP:
                kept.append((mask, payload[1]))
                witnesses.append((mask, ("loop", payload[0])))

    witness = None
    if witnesses:
        mask, (kind, slot) = min(witnesses)
        if kind == "pair":
            i, j = pair_table(n)[slot]
        else:
            i = j = slot + 1
        witness = (EdgeGraph(n, mask), (i, j))

    cells = tuple(
        Cell(EdgeGraph(n, mask), tuple(Fraction(v, 2 * D) for v in lam))
        for mask, lam in kept
    )
    generic = witness is None
    sub = Subdivision(n, d, cells, generic, witness)
    if generic and sub.total_volume != (1 << (n - 1)) - n:
        raise NotATriangulation(
            f"covering identity failed: {sub.total_volume} != 2^{n - 1}-{n}"
        )
    return sub


def is_generic(d: Metric, threshold: int = 8) -> GenericityVerdict:
    """Genericity verdict with a concrete witness on failure.

    Generic means: no candidate height solution meets d with equality off its
    graph, and every strict certificate is strictly positive (so the corner
    simplex at each node is itself a cell).  This matches simplicity of the
    tight-span polyhedron.
    """
    if d.n <= threshold:
        sub = enumerate_cells(d, threshold=threshold)
        return GenericityVerdict(sub.generic, sub.degeneracy_witness, sub)
    try:
        sub = traverse_cells(d, seed_cell(d))
    except (DegenerateRidge, SeedSearchFailed, SeedInvalid) as exc:
        return GenericityVerdict(False, getattr(exc, "witness", None), None)
    for cell in sub.maximal_cells:
        for i, h in enumerate(cell.heights, start=1):
            if h <= 0:
                witness = (cell.graph, (i, i))
                flagged = Subdivision(
                    sub.n, sub.metric, sub.maximal_cells, False, witness
                )
                return GenericityVerdict(False, witness, flagged)
    return GenericityVerdict(True, None, sub)


# -- known seed graphs -------------------------------------------------------------


def interleaved_cycle_graph(n: int) -> EdgeGraph:
    """Standard full-dimensional cell for metrics with the monotone difference property.

    For odd n this is the cycle alternating the low and high halves of 1..n;
    for even n the high-low cycle misses node n/2+1, which attaches to node 1
    by an extra edge.
    """
    if n < 4:
        raise PreconditionViolated("seed graph defined for n >= 4")
    if n % 2 == 1:
        half = (n + 1) // 2
        seq = []
        for k in range(1, half):
            seq.extend([k, half + k])
        seq.append(half)
        edges = [(seq[t], seq[(t + 1) % n]) for t in range(n)]
        return EdgeGraph.from_edges(n, edges)
    half = n // 2
    seq = []
    for k in range(1, half):
        seq.extend([k, half + 1 + k])
    seq.append(half)
    edges = [(seq[t], seq[(t + 1) % (n - 1)]) for t in range(n - 1)]
    edges.append((1, half + 1))
    return EdgeGraph.from_edges(n, edges)


def seed_cell(d: Metric) -> Cell:
    """A starting cell for the traversal.

    Metrics with the monotone difference property get the interleaved cycle
    seed directly; otherwise deterministic weight probes of the matching LP
    are scanned until a spanning n-edge support with a strict certificate
    appears.
    """
    n = d.n
    if n >= 4 and check_dmax_property(d):
        cert = lambda_certificate(d, interleaved_cycle_graph(n))
        if isinstance(cert, Cell):
            return cert
    from .matching import solve_w_matching

    for t in range(1, 33):
        w = [Fraction(2) + Fraction(j * t, n * n * n + t) for j in range(1, n + 1)]
        fm = solve_w_matching(d, w)
        G = fm.support
        if G.edge_count == n and G.is_spanning() and is_odd_unicyclic(G):
            cert = lambda_certificate(d, G)
            if isinstance(cert, Cell):
                return cert
    raise SeedSearchFailed(f"no full-dimensional cell found for n={n}")


# -- ridge pivot traversal -----------------------------------------------------------


def _ridge_family(
    n: int, mask: int, d: Metric
) -> tuple[list[Fraction], list[int]]:
    """General solution lam0 + t*sigma of the equality system of a ridge mask.

    The mask has n-1 edges and spans; exactly one component is a tree, which
    carries the one-parameter freedom (sigma alternates signs over it).
    """
    pairs = pair_table(n)
    adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    bits = mask
    while bits:
        low = bits & -bits
        idx = low.bit_length() - 1
        i, j = pairs[idx]
        adj[i - 1].append((j - 1, idx))
        adj[j - 1].append((i - 1, idx))
        bits ^= low

    lam0: list[Optional[Fraction]] = [None] * n
    sigma = [0] * n
    seen = [False] * n
    trees = 0
    for s in range(n):
        if seen[s]:
            continue
        comp = [s]
        seen[s] = True
        head = 0
        while head < len(comp):
            v = comp[head]
            head += 1
            for u, _ in adj[v]:
                if not seen[u]:
                    seen[u] = True
                    comp.append(u)
        edge_count = sum(len(adj[v]) for v in comp) // 2
        if edge_count == len(comp) - 1:
            trees += 1
            root = min(comp)
            lam0[root] = Fraction(0)
            sigma[root] = 1
            stack = [root]
            while stack:
                v = stack.pop()
                for u, eidx in adj[v]:
                    if lam0[u] is None:
                        lam0[u] = d.entries[eidx] - lam0[v]
                        sigma[u] = -sigma[v]
                        stack.append(u)
        elif edge_count == len(comp):
            sub = _solve_component_fraction(n, adj, comp, d)
            for v, val in sub.items():
                lam0[v] = val
        else:
            raise PreconditionViolated("ridge component is not a tree or unicyclic")
    if trees != 1:
        raise PreconditionViolated("ridge must have exactly one tree component")
    return lam0, sigma  # type: ignore[return-value]


def _solve_component_fraction(
    n: int, adj, comp: list[int], d: Metric
) -> dict[int, Fraction]:
    """Heights on one odd-unicyclic component, in exact fractions."""
    inside = set(comp)
    degw = {v: sum(1 for u, _ in adj[v] if u in inside) for v in comp}
    removed = {v: False for v in comp}
    order = [v for v in comp if degw[v] == 1]
    head = 0
    while head < len(order):
        v = order[head]
        head += 1
        removed[v] = True
        for u, _ in adj[v]:
            if u in inside and not removed[u]:
                degw[u] -= 1
                if degw[u] == 1:
                    order.append(u)
    start = min(v for v in comp if not removed[v])
    cyc_nodes = [start]
    cyc_edges = []
    prev, cur = -1, start
    while True:
        nxt = nidx = None
        for u, eidx in adj[cur]:
            if u in inside and not removed[u] and u != prev:
                nxt, nidx = u, eidx
                break
        cyc_edges.append(nidx)
        if nxt == start:
            break
        cyc_nodes.append(nxt)
        prev, cur = cur, nxt
    if len(cyc_nodes) % 2 == 0:
        raise PreconditionViolated("component cycle is even")
    acc = Fraction(0)
    sign = 1
    for eidx in cyc_edges:
        acc += sign * d.entries[eidx]
        sign = -sign
    lam: dict[int, Fraction] = {cyc_nodes[0]: acc / 2}
    for t in range(1, len(cyc_nodes)):
        lam[cyc_nodes[t]] = d.entries[cyc_edges[t - 1]] - lam[cyc_nodes[t - 1]]
    stack = list(lam.keys())
    while stack:
        v = stack.pop()
        for u, eidx in adj[v]:
            if u in inside and u not in lam:
                lam[u] = d.entries[eidx] - lam[v]
                stack.append(u)
    return lam


def _is_interior_ridge(n: int, mask: int) -> bool:
    node_masks = _node_edge_masks(n)
    if any(mask & node_masks[v] == 0 for v in range(n)):
        return False
    return not any(mask & ~node_masks[v] == 0 for v in range(n))


@lru_cache(maxsize=None)
def _node_edge_masks(n: int) -> tuple[int, ...]:
    """Bitmask of pair slots incident with each node (0-based)."""
    masks = [0] * n
    for p, (i, j) in enumerate(pair_table(n)):
        masks[i - 1] |= 1 << p
        masks[j - 1] |= 1 << p
    return tuple(masks)


def _pivot_entering(n: int, d: Metric, rmask: int, leaving: int) -> int:
    """Slot of the unique other edge completing the ridge to a cell."""
    lam0, sigma = _ridge_family(n, rmask, d)
    pairs = pair_table(n)
    lo_t = hi_t = None
    lo_slots: list[int] = []
    hi_slots: list[int] = []
    for p, (i, j) in enumerate(pairs):
        if rmask >> p & 1:
            continue
        s = sigma[i - 1] + sigma[j - 1]
        slack0 = lam0[i - 1] + lam0[j - 1] - d.entries[p]
        if s == 0:
            if slack0 == 0:
                raise DegenerateRidge(
                    f"pair ({i},{j}) tight across the whole ridge pencil"
                )
            continue
        t = Fraction(-slack0, s)
        if s > 0:
            if lo_t is None or t > lo_t:
                lo_t, lo_slots = t, [p]
            elif t == lo_t:
                lo_slots.append(p)
        else:
            if hi_t is None or t < hi_t:
                hi_t, hi_slots = t, [p]
            elif t == hi_t:
                hi_slots.append(p)
    if lo_t is None or hi_t is None:
        raise DegenerateRidge("ridge pencil is unbounded on one side")
    if lo_t == hi_t:
        raise DegenerateRidge("ridge pencil collapses to a point")
    if leaving in lo_slots:
        side = hi_slots
    elif leaving in hi_slots:
        side = lo_slots
    else:
        raise DegenerateRidge("leaving edge does not bound the ridge pencil")
    if len(side) != 1:
        raise DegenerateRidge("ratio test tie; metric is not generic")
    return side[0]


def traverse_cells(d: Metric, seed: Cell) -> Subdivision:
    """Breadth-first closure of the subdivision under ridge pivots.

    Matches enumerate_cells on every generic input; scales to sizes where
    exhaustive filtration is out of reach.
    """
    n = d.n
    G = seed.graph
    if G.n != n or G.edge_count != n or not G.is_spanning() or not is_odd_unicyclic(G):
        raise SeedInvalid("seed graph is not a candidate cell")
    cert = lambda_certificate(d, G)
    if not isinstance(cert, Cell):
        raise SeedInvalid("seed graph carries no strict certificate")

    seen = {G.bits: cert}
    frontier = [G.bits]
    while frontier:
        mask = frontier.pop(0)
        bits = mask
        while bits:
            low = bits & -bits
            bits ^= low
            rmask = mask ^ low
            if not _is_interior_ridge(n, rmask):
                continue
            entering = _pivot_entering(n, d, rmask, low.bit_length() - 1)
            nmask = rmask | 1 << entering
            if nmask in seen:
                continue
            ncert = lambda_certificate(d, EdgeGraph(n, nmask))
            if not isinstance(ncert, Cell):
                raise DegenerateRidge("pivot produced a non-strict certificate")
            seen[nmask] = ncert
            frontier.append(nmask)

    cells = tuple(seen[mask] for mask in sorted(seen))
    sub = Subdivision(n, d, cells, True, None)
    if sub.total_volume != (1 << (n - 1)) - n:
        raise DegenerateRidge(
            f"traversal covered volume {sub.total_volume},"
            f" expected {(1 << (n - 1)) - n}"
        )
    return sub


def compute_subdivision(
    d: Metric, threshold: int = 8, jobs: int = 1, force_enumerate: bool = False
) -> Subdivision:
    """Enumerate up to the threshold, traverse beyond it."""
    if d.n <= threshold or force_enumerate:
        return enumerate_cells(d, threshold=max(threshold, d.n), jobs=jobs)
    return traverse_cells(d, seed_cell(d))


# -- faces -----------------------------------------------------------------------


def all_faces(S: Subdivision) -> FaceSet:
    """Closure of the maximal cell graphs under nonempty subgraphs, with interior tags."""
    if not S.generic:
        raise NotATriangulation("face closure requires a generic subdivision")
    n = S.n
    levels: list[set[int]] = [set() for _ in range(n)]
    levels[n - 1] = {c.graph.bits for c in S.maximal_cells}
    for k in range(n - 1, 0, -1):
        below = levels[k - 1]
        for mask in levels[k]:
            bits = mask
            while bits:
                low = bits & -bits
                below.add(mask ^ low)
                bits ^= low
    node_masks = _node_edge_masks(n)
    by_dim = []
    interior = []
    for k in range(n):
        masks = tuple(sorted(levels[k]))
        by_dim.append(masks)
        inner = frozenset(
            mask
            for mask in masks
            if all(mask & node_masks[v] for v in range(n))
            and not any(mask & ~node_masks[v] == 0 for v in range(n))
        )
        interior.append(inner)
    return FaceSet(n, tuple(by_dim), tuple(interior))


def boundary_tags(n: int, mask: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Facets of the hypersimplex containing a boundary face.

    Returns (missed nodes i, giving facets x_i = 0) and (star centers c, for
    faces inside the simplex facet at c).
    """
    node_masks = _node_edge_masks(n)
    missed = tuple(v + 1 for v in range(n) if mask & node_masks[v] == 0)
    centers = tuple(v + 1 for v in range(n) if mask & ~node_masks[v] == 0)
    return missed, centers


def restrict_to_facet(S: Subdivision, i: int) -> Subdivision:
    """Subdivision induced on the hypersimplex facet x_i = 0, relabeled to 1..n-1."""
    if S.n < 5:
        raise NotSupported("facet restriction needs n >= 5")
    if not S.generic:
        raise NotATriangulation("restriction requires a generic subdivision")
    n = S.n
    dsub = submetric(S.metric, [v for v in range(1, n + 1) if v != i])

    def relabel(v: int) -> int:
        return v if v < i else v - 1

    seen = set()
    cells = []
    for cell in S.maximal_cells:
        deg = cell.graph.degrees()
        if deg[i - 1] != 1:
            continue
        edges = [
            (relabel(a), relabel(b)) for a, b in cell.graph.edges() if i not in (a, b)
        ]
        G = EdgeGraph.from_edges(n - 1, edges)
        if G.bits in seen:
            continue
        seen.add(G.bits)
        cert = lambda_certificate(dsub, G)
        if not isinstance(cert, Cell):
            raise NotATriangulation("restricted cell lost its strict certificate")
        cells.append(cert)
    cells.sort(key=lambda c: c.graph.bits)
    sub = Subdivision(n - 1, dsub, tuple(cells), True, None)
    if sub.total_volume != (1 << (n - 2)) - (n - 1):
        raise NotATriangulation("facet restriction does not triangulate the facet")
    return sub


# -- random generic fixtures --------------------------------------------------------


@lru_cache(maxsize=None)
def random_generic_metrics(
    n: int, count: int, start_seed: int = 1, max_tries: int = 400
) -> tuple[tuple[int, Metric], ...]:
    """First `count` seeds whose random metric is generic, scanning from start_seed."""
    from .metrics import gen_random

    out = []
    seed = start_seed
    while len(out) < count and seed < start_seed + max_tries:
        d = gen_random(n, seed)
        if is_generic(d).generic:
            out.append((seed, d))
        seed += 1
    if len(out) < count:
        raise SeedSearchFailed(
            f"only {len(out)} generic metrics found in {max_tries} seeds"
        )
    return tuple(out)


# -- export ------------------------------------------------------------------------


def subdivision_to_json(S: Subdivision) -> str:
    payload = {
        "n": S.n,
        "generic": S.generic,
        "cells": [
            {
                "edges": [list(e) for e in cell.graph.edges()],
                "lambda": [format_rational(v) for v in cell.heights],
                "volume": cell.volume,
            }
            for cell in S.maximal_cells
        ],
    }
    if S.degeneracy_witness is not None:
        graph, pair = S.degeneracy_witness
        payload["witness"] = {
            "graph": [list(e) for e in graph.edges()],
            "pair": list(pair),
        }
    return json.dumps(payload, indent=2) + "\n"
