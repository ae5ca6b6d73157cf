"""Associated graphs of polynomial systems and chordal-graph machinery.

The associated graph has the support variables as vertices and an edge
between two variables whenever they occur together in the support of one
polynomial.  An ordering is a perfect elimination ordering (PEO) when every
vertex forms a clique with its earlier neighbours; a graph is chordal when
it admits a PEO.  Recognition runs maximum cardinality search and validates
the resulting order, extracting a chordless cycle of length >= 4 on failure.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .errors import (
    DegenerateGraphError,
    NotAPermutationError,
    TooLargeForExactError,
)
from .systems import PolySystem

Edge = tuple[int, int]


def _edge(a: int, b: int) -> Edge:
    return (a, b) if a < b else (b, a)


class VarGraph:
    """Undirected graph on variable indices, optionally edge-weighted."""

    def __init__(
        self,
        vertices: Iterable[int],
        edges: Iterable[Edge],
        weights: Mapping[Edge, int] | None = None,
        names: Sequence[str] | None = None,
    ):
        self.vertices = frozenset(vertices)
        self.edges = frozenset(_edge(a, b) for a, b in edges)
        for a, b in self.edges:
            if a == b:
                raise ValueError(f"self-loop at x{a}")
            if a not in self.vertices or b not in self.vertices:
                raise ValueError(f"edge ({a},{b}) uses an unlisted vertex")
        if weights is not None:
            weights = {_edge(a, b): w for (a, b), w in weights.items()}
            if set(weights) != self.edges or any(w < 1 for w in weights.values()):
                raise ValueError("weights must cover every edge with a value >= 1")
        self.weights = weights
        self.names = tuple(names) if names is not None else None
        adj: dict[int, set[int]] = {v: set() for v in self.vertices}
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        self.adj = adj

    def name(self, v: int) -> str:
        if self.names is not None and 1 <= v <= len(self.names):
            return self.names[v - 1]
        return f"x{v}"

    def neighbors(self, v: int) -> set[int]:
        return self.adj[v]

    def has_edge(self, a: int, b: int) -> bool:
        return _edge(a, b) in self.edges

    def __repr__(self) -> str:
        es = ", ".join(f"({self.name(a)},{self.name(b)})" for a, b in sorted(self.edges))
        return f"VarGraph({len(self.vertices)} vertices; {es})"


def associated_graph(system: PolySystem, weighted: bool = False) -> VarGraph:
    """Graph on ``supp(system)`` linking variables that share a polynomial.

    With ``weighted`` each edge carries the number of polynomials whose
    support contains both endpoints.
    """
    vertices = system.support()
    counts: dict[Edge, int] = {}
    for poly in system.polys:
        for a, b in combinations(sorted(poly.support()), 2):
            e = _edge(a, b)
            counts[e] = counts.get(e, 0) + 1
    return VarGraph(
        vertices,
        counts.keys(),
        weights=counts if weighted else None,
        names=system.vars,
    )


def graph_of_polys(polys, names: Sequence[str] | None = None) -> VarGraph:
    """Associated graph of a bare polynomial collection."""
    vertices: set[int] = set()
    edges: set[Edge] = set()
    for poly in polys:
        supp = sorted(poly.support())
        vertices.update(supp)
        edges.update(_edge(a, b) for a, b in combinations(supp, 2))
    return VarGraph(vertices, edges, names=names)


# -- perfect elimination orderings -------------------------------------------


@dataclass(frozen=True)
class PeoCheck:
    ok: bool
    failing_vertex: int | None = None
    missing_edge: Edge | None = None


def check_peo(graph: VarGraph, order: Sequence[int]) -> PeoCheck:
    """Check whether each vertex forms a clique with its earlier neighbours.

    On failure reports the first failing vertex along the order together
    with one missing edge among its earlier neighbours.
    """
    if set(order) != graph.vertices or len(order) != len(graph.vertices):
        raise NotAPermutationError("order is not a permutation of the vertices")
    position = {v: i for i, v in enumerate(order)}
    for v in order:
        earlier = sorted(u for u in graph.neighbors(v) if position[u] < position[v])
        for a, b in combinations(earlier, 2):
            if not graph.has_edge(a, b):
                return PeoCheck(False, v, _edge(a, b))
    return PeoCheck(True)


def mcs_order(graph: VarGraph) -> tuple[int, ...]:
    """Maximum cardinality search; ties broken by lowest variable index."""
    weight = {v: 0 for v in graph.vertices}
    unvisited = set(graph.vertices)
    order: list[int] = []
    while unvisited:
        v = max(sorted(unvisited), key=lambda u: weight[u])
        unvisited.remove(v)
        order.append(v)
        for u in graph.neighbors(v):
            if u in unvisited:
                weight[u] += 1
    return tuple(order)


@dataclass(frozen=True)
class ChordalityCertificate:
    chordal: bool
    peo: tuple[int, ...] | None = None
    witness_cycle: tuple[int, ...] | None = None


def _canonical_cycle(cycle: Sequence[int]) -> tuple[int, ...]:
    """Rotate/reflect so the smallest vertex leads, smaller neighbour next."""
    k = len(cycle)
    start = min(range(k), key=lambda i: cycle[i])
    forward = tuple(cycle[(start + i) % k] for i in range(k))
    backward = tuple(cycle[(start - i) % k] for i in range(k))
    return min(forward, backward)


def _cycle_through(graph: VarGraph, v: int, a: int, b: int) -> tuple[int, ...] | None:
    """Shortest a-b path avoiding N[v]\\{a,b}, closed through v.

    Internal path vertices avoid v's neighbourhood, so the resulting cycle
    has no chord at v; a shortest path has no chord among its own vertices.
    """
    allowed = (graph.vertices - graph.neighbors(v) - {v}) | {a, b}
    parent: dict[int, int | None] = {a: None}
    queue = deque([a])
    while queue:
        u = queue.popleft()
        if u == b:
            path = []
            cur: int | None = u
            while cur is not None:
                path.append(cur)
                cur = parent[cur]
            path.reverse()
            return _canonical_cycle([v] + path)
        for w in sorted(graph.neighbors(u)):
            if w in allowed and w not in parent:
                parent[w] = u
                queue.append(w)
    return None


def find_chordless_cycle(
    graph: VarGraph, hint: tuple[int, int, int] | None = None
) -> tuple[int, ...] | None:
    """Find some chordless cycle of length >= 4, or None if there is none.

    Every chordless cycle contains a vertex v whose two cycle-neighbours
    a, b are nonadjacent, with the rest of the cycle avoiding N[v]; scanning
    all (nonadjacent pair, common neighbour) triples is therefore complete.
    """
    candidates = []
    if hint is not None:
        candidates.append(hint)
    for a, b in combinations(sorted(graph.vertices), 2):
        if graph.has_edge(a, b):
            continue
        for v in sorted(graph.neighbors(a) & graph.neighbors(b)):
            candidates.append((v, a, b))
    for v, a, b in candidates:
        cycle = _cycle_through(graph, v, a, b)
        if cycle is not None:
            return cycle
    return None


def find_peo(graph: VarGraph) -> ChordalityCertificate:
    """MCS-based chordality test with a checkable certificate either way."""
    order = mcs_order(graph)
    check = check_peo(graph, order)
    if check.ok:
        return ChordalityCertificate(True, peo=order)
    a, b = check.missing_edge
    cycle = find_chordless_cycle(graph, hint=(check.failing_vertex, a, b))
    assert cycle is not None, "MCS order failed but no chordless cycle found"
    return ChordalityCertificate(False, witness_cycle=cycle)


# -- completion, treewidth, sparsity ------------------------------------------


def _fill_for_order(graph: VarGraph, order: Sequence[int]) -> set[Edge]:
    """Edges needed so that ``order`` becomes a PEO (highest vertex first)."""
    position = {v: i for i, v in enumerate(order)}
    adj = {v: set(graph.neighbors(v)) for v in graph.vertices}
    fill: set[Edge] = set()
    for v in sorted(order, key=lambda u: position[u], reverse=True):
        earlier = [u for u in adj[v] if position[u] < position[v]]
        for a, b in combinations(sorted(earlier), 2):
            if b not in adj[a]:
                adj[a].add(b)
                adj[b].add(a)
                fill.add(_edge(a, b))
    return fill


def _min_fill_order(graph: VarGraph) -> tuple[int, ...]:
    """Greedy minimum-fill elimination; returns the order as a PEO."""
    adj = {v: set(graph.neighbors(v)) for v in graph.vertices}
    remaining = set(graph.vertices)
    elimination: list[int] = []
    while remaining:
        best, best_fill = None, None
        for v in sorted(remaining):
            nbrs = adj[v] & remaining
            missing = sum(
                1 for a, b in combinations(sorted(nbrs), 2) if b not in adj[a]
            )
            if best_fill is None or missing < best_fill:
                best, best_fill = v, missing
        nbrs = adj[best] & remaining
        for a, b in combinations(sorted(nbrs), 2):
            adj[a].add(b)
            adj[b].add(a)
        remaining.remove(best)
        elimination.append(best)
    return tuple(reversed(elimination))


def chordal_complete(
    graph: VarGraph, order: Sequence[int] | None = None
) -> tuple[VarGraph, frozenset[Edge], tuple[int, ...]]:
    """Complete ``graph`` to a chordal one.

    With ``order`` given, adds exactly the fill to make it a PEO; otherwise
    picks an order by greedy minimum-fill (ties to the lowest index).
    Returns the completed graph, the fill edges, and the PEO.
    """
    if order is None:
        order = _min_fill_order(graph)
    else:
        if set(order) != graph.vertices or len(order) != len(graph.vertices):
            raise NotAPermutationError("order is not a permutation of the vertices")
        order = tuple(order)
    fill = frozenset(_fill_for_order(graph, order))
    completed = VarGraph(graph.vertices, graph.edges | fill, names=graph.names)
    return completed, fill, tuple(order)


def _max_back_degree(graph: VarGraph, order: Sequence[int]) -> int:
    """Largest earlier-neighbour count along a PEO (= clique number - 1)."""
    position = {v: i for i, v in enumerate(order)}
    return max(
        (
            sum(1 for u in graph.neighbors(v) if position[u] < position[v])
            for v in order
        ),
        default=-1,
    )


def treewidth_bound(graph: VarGraph, exact: bool = False) -> int:
    """Treewidth upper bound from greedy completion, or the exact value.

    Exact mode minimizes clique size over all elimination orderings via
    dynamic programming on vertex subsets, and is limited to 10 vertices.
    """
    if not exact:
        completed, _, order = chordal_complete(graph)
        return _max_back_degree(completed, order)
    verts = sorted(graph.vertices)
    if len(verts) > 10:
        raise TooLargeForExactError(f"{len(verts)} vertices (limit 10)")
    if not verts:
        return -1
    index = {v: i for i, v in enumerate(verts)}
    full = (1 << len(verts)) - 1

    def reach_count(mask: int, v: int) -> int:
        # neighbours of v outside mask, via paths internal to mask
        seen = {v}
        stack = [v]
        out: set[int] = set()
        while stack:
            u = stack.pop()
            for w in graph.neighbors(u):
                if w in seen:
                    continue
                seen.add(w)
                if mask >> index[w] & 1:
                    stack.append(w)
                else:
                    out.add(w)
        return len(out)

    best = {0: -1}

    def width(mask: int) -> int:
        if mask in best:
            return best[mask]
        result = None
        for v in verts:
            bit = 1 << index[v]
            if not mask & bit:
                continue
            rest = mask ^ bit
            w = max(width(rest), reach_count(rest, v))
            if result is None or w < result:
                result = w
        best[mask] = result
        return result

    return width(full)


def sparsity(system: PolySystem) -> tuple[Fraction, Fraction]:
    """Edge density of the associated graph, plain and weighted.

    The plain density divides the edge count by that of the complete graph
    on the support; the weighted one divides the total edge weight by the
    polynomial count times the complete-graph edge count.
    """
    weighted = associated_graph(system, weighted=True)
    nv = len(weighted.vertices)
    if nv < 2:
        raise DegenerateGraphError(f"need at least 2 support variables, have {nv}")
    pairs = nv * (nv - 1) // 2
    s_v = Fraction(len(weighted.edges), pairs)
    s_v_w = Fraction(sum(weighted.weights.values()), len(system.polys) * pairs)
    return s_v, s_v_w


# -- subgraph test and DOT export ---------------------------------------------


@dataclass(frozen=True)
class SubgraphCheck:
    ok: bool
    missing_vertex: int | None = None
    missing_edge: Edge | None = None

    def witness(self) -> str | None:
        if self.missing_vertex is not None:
            return f"vertex x{self.missing_vertex}"
        if self.missing_edge is not None:
            a, b = self.missing_edge
            return f"edge (x{a}, x{b})"
        return None


def is_subgraph(a: VarGraph, b: VarGraph) -> SubgraphCheck:
    """Vertex- and edge-containment of ``a`` in ``b``, with a witness."""
    for v in sorted(a.vertices):
        if v not in b.vertices:
            return SubgraphCheck(False, missing_vertex=v)
    for e in sorted(a.edges):
        if e not in b.edges:
            return SubgraphCheck(False, missing_edge=e)
    return SubgraphCheck(True)


def to_dot(graph: VarGraph) -> str:
    """Byte-deterministic Graphviz DOT: sorted vertices, sorted edges."""
    lines = ["graph G {"]
    for v in sorted(graph.vertices):
        lines.append(f"  {graph.name(v)};")
    for a, b in sorted(graph.edges):
        label = ""
        if graph.weights is not None:
            label = f' [label="{graph.weights[(a, b)]}"]'
        lines.append(f"  {graph.name(a)} -- {graph.name(b)}{label};")
    lines.append("}")
    return "\n".join(lines) + "\n"
