"""Indexed subgraphs of K_n with the cycle and tour analysis used by cell tests.

An EdgeGraph stores its edge set as one integer bitset over the lexicographic
pair slots of common.pair_index, which makes graphs hashable, cheap to compare
and canonically ordered (the bitset integer is the sort key everywhere).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING, Iterable, Optional, Sequence

from .common import pair_index, pair_table
from .errors import NodeOutOfRange, PreconditionViolated

if TYPE_CHECKING:  # pragma: no cover
    from .metrics import Metric


@dataclass(frozen=True, order=True)
class EdgeGraph:
    """Subgraph of K_n as a bitset over edge slots; immutable and totally ordered."""

    n: int
    bits: int

    @staticmethod
    def from_edges(n: int, edges: Iterable[tuple[int, int]]) -> "EdgeGraph":
        bits = 0
        for i, j in edges:
            if not (1 <= i <= n and 1 <= j <= n) or i == j:
                raise NodeOutOfRange(f"edge ({i},{j}) not in K_{n}")
            bits |= 1 << pair_index(n, i, j)
        return EdgeGraph(n, bits)

    def edges(self) -> tuple[tuple[int, int], ...]:
        table = pair_table(self.n)
        out = []
        bits = self.bits
        while bits:
            low = bits & -bits
            out.append(table[low.bit_length() - 1])
            bits ^= low
        return tuple(out)

    @property
    def edge_count(self) -> int:
        return bin(self.bits).count("1")

    def has_edge(self, i: int, j: int) -> bool:
        return bool(self.bits >> pair_index(self.n, i, j) & 1)

    def add_edge(self, i: int, j: int) -> "EdgeGraph":
        return EdgeGraph(self.n, self.bits | 1 << pair_index(self.n, i, j))

    def remove_edge(self, i: int, j: int) -> "EdgeGraph":
        return EdgeGraph(self.n, self.bits & ~(1 << pair_index(self.n, i, j)))

    def degrees(self) -> tuple[int, ...]:
        deg = [0] * (self.n + 1)
        for i, j in self.edges():
            deg[i] += 1
            deg[j] += 1
        return tuple(deg[1:])

    def covered_nodes(self) -> frozenset[int]:
        nodes = set()
        for i, j in self.edges():
            nodes.add(i)
            nodes.add(j)
        return frozenset(nodes)

    def is_spanning(self) -> bool:
        return len(self.covered_nodes()) == self.n

    def adjacency(self) -> dict[int, list[int]]:
        adj: dict[int, list[int]] = {v: [] for v in range(1, self.n + 1)}
        for i, j in self.edges():
            adj[i].append(j)
            adj[j].append(i)
        return adj

    def __str__(self) -> str:
        return format_edge_list(self)


@dataclass(frozen=True)
class LoopyGraph:
    """EdgeGraph plus a set of loops; a loop at i records the tight constraint x_i = 0."""

    base: EdgeGraph
    loops: frozenset[int]

    def __str__(self) -> str:
        return format_edge_list(self.base, self.loops)


@dataclass(frozen=True)
class ComponentProfile:
    """Per-component statistics: nodes, edge count, cycle space dim, cycle parity."""

    nodes: tuple[int, ...]
    edge_count: int
    cycle_dim: int
    cycle_parity: Optional[str]  # "odd" / "even" when unicyclic, else None


@dataclass(frozen=True)
class GraphComponents:
    components: tuple[ComponentProfile, ...]
    isolated: tuple[int, ...]


def empty_graph(n: int) -> EdgeGraph:
    return EdgeGraph(n, 0)


def star_graph(n: int, center: int) -> EdgeGraph:
    return EdgeGraph.from_edges(n, ((center, j) for j in range(1, n + 1) if j != center))


def cycle_graph(n: int, sequence: Sequence[int]) -> EdgeGraph:
    """Closed cycle through the given node sequence."""
    edges = [(sequence[k], sequence[(k + 1) % len(sequence)]) for k in range(len(sequence))]
    return EdgeGraph.from_edges(n, edges)


def components(G: EdgeGraph) -> GraphComponents:
    """Connected components of the non-isolated nodes, plus the isolated node set."""
    adj = G.adjacency()
    covered = G.covered_nodes()
    seen: set[int] = set()
    profiles = []
    for start in sorted(covered):
        if start in seen:
            continue
        stack = [start]
        nodes = {start}
        seen.add(start)
        while stack:
            v = stack.pop()
            for u in adj[v]:
                if u not in nodes:
                    nodes.add(u)
                    seen.add(u)
                    stack.append(u)
        edge_count = sum(1 for i, j in G.edges() if i in nodes)
        cycle_dim = edge_count - len(nodes) + 1
        parity = None
        if cycle_dim == 1:
            parity = "even" if _is_bipartite(adj, nodes) else "odd"
        profiles.append(
            ComponentProfile(tuple(sorted(nodes)), edge_count, cycle_dim, parity)
        )
    isolated = tuple(v for v in range(1, G.n + 1) if v not in covered)
    return GraphComponents(tuple(profiles), isolated)


def _is_bipartite(adj: dict[int, list[int]], nodes: set[int]) -> bool:
    color: dict[int, int] = {}
    for start in nodes:
        if start in color:
            continue
        color[start] = 0
        stack = [start]
        while stack:
            v = stack.pop()
            for u in adj[v]:
                if u not in color:
                    color[u] = color[v] ^ 1
                    stack.append(u)
                elif color[u] == color[v]:
                    return False
    return True


def has_even_tour(G: EdgeGraph) -> bool:
    """True unless every component is a tree or unicyclic with an odd cycle.

    A component with two independent cycles concatenates them into a
    non-trivial even closed tour, and an even cycle is one directly.
    """
    for comp in components(G).components:
        if comp.cycle_dim >= 2:
            return True
        if comp.cycle_dim == 1 and comp.cycle_parity == "even":
            return True
    return False


def is_odd_unicyclic(G: EdgeGraph) -> bool:
    """Every component has exactly one cycle, of odd length (isolated nodes ignored)."""
    comps = components(G).components
    return bool(comps) and all(
        c.cycle_dim == 1 and c.cycle_parity == "odd" for c in comps
    )


def is_interior_graph(G: EdgeGraph) -> bool:
    """Faces of the subdivision off the hypersimplex boundary: spanning, not a star."""
    if not G.is_spanning():
        return False
    deg = G.degrees()
    m = G.edge_count
    return not (m == G.n - 1 and max(deg) == m)


def odd_path_sum(d: "Metric", G: EdgeGraph, v: int, w: int) -> Fraction:
    """Alternating distance sum along an odd-length walk from v to w in G.

    G must be connected, spanning, with n edges and no even tour, and {v,w}
    must not be an edge of G.  The value does not depend on the walk chosen.
    """
    decomp = components(G)
    if decomp.isolated or len(decomp.components) != 1:
        raise PreconditionViolated("graph must be connected and spanning")
    if G.edge_count != G.n:
        raise PreconditionViolated(f"graph must have exactly {G.n} edges")
    if has_even_tour(G):
        raise PreconditionViolated("graph contains a non-trivial even tour")
    if v == w or G.has_edge(v, w):
        raise PreconditionViolated(f"{{{v},{w}}} must be a non-edge of the graph")

    walk = _odd_walk(G, v, w)
    total = Fraction(0)
    for k in range(len(walk) - 1):
        term = d.d(walk[k], walk[k + 1])
        total += term if k % 2 == 0 else -term
    return total


def _odd_walk(G: EdgeGraph, v: int, w: int) -> list[int]:
    """Walk of odd edge count from v to w: tree path, or rerouted once around the odd cycle."""
    cyc = _cycle_nodes(G)
    a, b = _cycle_edge(G, cyc)
    tree = G.remove_edge(a, b)
    parent = _bfs_parents(tree, v)
    path_vw = _tree_path(parent, w)
    if (len(path_vw) - 1) % 2 == 1:
        return path_vw
    path_va = _tree_path(parent, a)
    parent_b = _bfs_parents(tree, b)
    path_bw = _tree_path(parent_b, w)
    return path_va + path_bw


def _cycle_nodes(G: EdgeGraph) -> set[int]:
    """Strip leaves until only the (unique) cycle remains."""
    adj = {v: set(us) for v, us in G.adjacency().items()}
    alive = set(G.covered_nodes())
    pending = [v for v in alive if len(adj[v]) == 1]
    while pending:
        v = pending.pop()
        alive.discard(v)
        for u in adj[v]:
            adj[u].discard(v)
            if u in alive and len(adj[u]) == 1:
                pending.append(u)
        adj[v] = set()
    return alive


def _cycle_edge(G: EdgeGraph, cycle: set[int]) -> tuple[int, int]:
    for i, j in G.edges():
        if i in cycle and j in cycle:
            return i, j
    raise PreconditionViolated("graph has no cycle")


def _bfs_parents(G: EdgeGraph, root: int) -> dict[int, int]:
    adj = G.adjacency()
    parent = {root: 0}
    queue = [root]
    while queue:
        v = queue.pop(0)
        for u in sorted(adj[v]):
            if u not in parent:
                parent[u] = v
                queue.append(u)
    return parent


def _tree_path(parent: dict[int, int], target: int) -> list[int]:
    path = [target]
    while parent[path[-1]]:
        path.append(parent[path[-1]])
    path.reverse()
    return path


def cell_volume(G: EdgeGraph) -> int:
    """Normalized volume 2^(c-1) of the simplex spanned by an odd-unicyclic spanning graph."""
    if G.edge_count != G.n or not G.is_spanning() or not is_odd_unicyclic(G):
        raise PreconditionViolated("volume is defined for spanning odd-unicyclic graphs only")
    c = len(components(G).components)
    return 1 << (c - 1)


def format_edge_list(G: EdgeGraph, loops: frozenset[int] = frozenset()) -> str:
    """Text form "{i,j}" pairs sorted lexicographically; loops printed as "{i,i}"."""
    items = sorted(G.edges()) + sorted((i, i) for i in loops)
    return " ".join("{%d,%d}" % (i, j) for i, j in sorted(items))


def parse_edge_list(n: int, text: str) -> EdgeGraph:
    """Edge list in CLI form "1-2,3-4" (empty string means no edges)."""
    text = text.strip()
    if not text:
        return empty_graph(n)
    edges = []
    for chunk in text.split(","):
        i, j = chunk.strip().split("-")
        edges.append((int(i), int(j)))
    return EdgeGraph.from_edges(n, edges)
