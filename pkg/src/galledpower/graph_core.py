"""Undirected graph core: components, blocks, critical cliques, maximal cliques."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

Vertex = str
Edge = Tuple[Vertex, Vertex]


def _norm_edge(u: Vertex, v: Vertex) -> Edge:
    return (u, v) if u <= v else (v, u)


class Graph:
    """Immutable simple undirected graph with deterministic iteration order.

    Vertices are opaque string tokens ordered lexicographically.  Self-loops
    and parallel edges are rejected at construction.
    """

    __slots__ = ("_vertices", "_edges", "_adj")

    def __init__(self, vertices: Iterable[Vertex] = (), edges: Iterable[Sequence[Vertex]] = ()):
        vs = set(vertices)
        es = set()
        for e in edges:
            u, v = e
            if u == v:
                raise ValueError(f"self-loop at {u!r}")
            vs.add(u)
            vs.add(v)
            es.add(_norm_edge(u, v))
        self._vertices: Tuple[Vertex, ...] = tuple(sorted(vs))
        self._edges: FrozenSet[Edge] = frozenset(es)
        adj: Dict[Vertex, List[Vertex]] = {v: [] for v in self._vertices}
        for u, v in es:
            adj[u].append(v)
            adj[v].append(u)
        self._adj = {v: tuple(sorted(ns)) for v, ns in adj.items()}

    @property
    def vertices(self) -> Tuple[Vertex, ...]:
        return self._vertices

    @property
    def edges(self) -> FrozenSet[Edge]:
        return self._edges

    def sorted_edges(self) -> List[Edge]:
        return sorted(self._edges)

    def adj(self, v: Vertex) -> Tuple[Vertex, ...]:
        return self._adj[v]

    def degree(self, v: Vertex) -> int:
        return len(self._adj[v])

    def has_edge(self, u: Vertex, v: Vertex) -> bool:
        return _norm_edge(u, v) in self._edges

    def has_vertex(self, v: Vertex) -> bool:
        return v in self._adj

    def __contains__(self, v: Vertex) -> bool:
        return v in self._adj

    def __len__(self) -> int:
        return len(self._vertices)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._vertices == other._vertices and self._edges == other._edges

    def __hash__(self) -> int:
        return hash((self._vertices, self._edges))

    def __repr__(self) -> str:
        return f"Graph({len(self._vertices)} vertices, {len(self._edges)} edges)"

    def subgraph(self, keep: Iterable[Vertex]) -> "Graph":
        keep_set = set(keep)
        return Graph(
            keep_set & set(self._vertices),
            (e for e in self._edges if e[0] in keep_set and e[1] in keep_set),
        )

    def with_edges(self, extra: Iterable[Sequence[Vertex]]) -> "Graph":
        edges = [tuple(e) for e in self._edges]
        edges.extend(tuple(e) for e in extra)
        return Graph(self._vertices, edges)

    def is_clique(self, vs: Optional[Iterable[Vertex]] = None) -> bool:
        group = sorted(set(vs)) if vs is not None else list(self._vertices)
        for i, u in enumerate(group):
            for v in group[i + 1:]:
                if not self.has_edge(u, v):
                    return False
        return True

    def is_connected(self) -> bool:
        if not self._vertices:
            return True
        seen = {self._vertices[0]}
        stack = [self._vertices[0]]
        while stack:
            for w in self._adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == len(self._vertices)


class DisconnectedInput(ValueError):
    """Raised when an operation requiring a connected graph gets one that is not."""


class Overflow:
    """Sentinel returned by maximal_cliques when the clique count exceeds the limit."""

    def __repr__(self) -> str:
        return "Overflow"


OVERFLOW = Overflow()


def connected_components(g: Graph) -> List[Graph]:
    """Induced subgraphs of the connected components, ordered by smallest vertex."""
    seen = set()
    comps = []
    for start in g.vertices:
        if start in seen:
            continue
        comp = {start}
        stack = [start]
        seen.add(start)
        while stack:
            for w in g.adj(stack.pop()):
                if w not in seen:
                    seen.add(w)
                    comp.add(w)
                    stack.append(w)
        comps.append(g.subgraph(comp))
    return comps


@dataclass(frozen=True)
class BlockDecomposition:
    """Biconnected components of a connected graph plus the block tree.

    Bridges appear as 2-vertex blocks.  blockTree is a bipartite tree whose
    nodes are block indices ("b<i>") and cut vertices, rooted at the block
    containing the smallest vertex.
    """

    blocks: Tuple[FrozenSet[Vertex], ...]
    cut_vertices: FrozenSet[Vertex]
    block_tree: Graph
    root_block: int
    block_edges: Tuple[FrozenSet[Edge], ...] = field(default=())

    def blocks_of(self, v: Vertex) -> List[int]:
        return [i for i, b in enumerate(self.blocks) if v in b]


def blocks(g: Graph) -> BlockDecomposition:
    """Biconnected decomposition (Hopcroft-Tarjan, iterative)."""
    if not g.is_connected():
        raise DisconnectedInput("blocks() requires a connected graph")
    if len(g) == 1:
        only = frozenset(g.vertices)
        return BlockDecomposition((only,), frozenset(), Graph(["b0"]), 0, (frozenset(),))

    index: Dict[Vertex, int] = {}
    low: Dict[Vertex, int] = {}
    parent: Dict[Vertex, Optional[Vertex]] = {}
    stack_edges: List[Edge] = []
    comps: List[List[Edge]] = []
    cuts = set()
    counter = 0

    for root in g.vertices:
        if root in index:
            continue
        parent[root] = None
        work: List[Tuple[Vertex, int]] = [(root, 0)]
        index[root] = low[root] = counter
        counter += 1
        root_children = 0
        while work:
            v, ptr = work[-1]
            ns = g.adj(v)
            if ptr < len(ns):
                work[-1] = (v, ptr + 1)
                w = ns[ptr]
                if w == parent[v]:
                    continue
                if w in index:
                    if index[w] < index[v]:
                        stack_edges.append(_norm_edge(v, w))
                        low[v] = min(low[v], index[w])
                    continue
                parent[w] = v
                index[w] = low[w] = counter
                counter += 1
                stack_edges.append(_norm_edge(v, w))
                work.append((w, 0))
                if v == root:
                    root_children += 1
            else:
                work.pop()
                if not work:
                    break
                u = work[-1][0]
                low[u] = min(low[u], low[v])
                if low[v] >= index[u]:
                    comp = []
                    target = _norm_edge(u, v)
                    while True:
                        e = stack_edges.pop()
                        comp.append(e)
                        if e == target:
                            break
                    comps.append(comp)
                    if u != root or root_children > 1:
                        cuts.add(u)

    block_sets = []
    block_edge_sets = []
    for comp in comps:
        vs = set()
        for u, v in comp:
            vs.add(u)
            vs.add(v)
        block_sets.append(frozenset(vs))
        block_edge_sets.append(frozenset(comp))

    order = sorted(range(len(block_sets)), key=lambda i: sorted(block_sets[i]))
    block_sets = [block_sets[i] for i in order]
    block_edge_sets = [block_edge_sets[i] for i in order]

    tree_vertices = [f"b{i}" for i in range(len(block_sets))] + sorted(cuts)
    tree_edges = []
    for i, b in enumerate(block_sets):
        for c in sorted(cuts & b):
            tree_edges.append((f"b{i}", c))
    tree = Graph(tree_vertices, tree_edges)

    smallest = g.vertices[0]
    root_block = min(i for i, b in enumerate(block_sets) if smallest in b)
    return BlockDecomposition(
        tuple(block_sets), frozenset(cuts), tree, root_block, tuple(block_edge_sets)
    )


@dataclass(frozen=True)
class CriticalCliquePartition:
    """Coarsest partition into cliques of vertices sharing a closed neighborhood.

    The quotient graph has one vertex per class, named after the smallest
    member; classes are adjacent iff their members are.
    """

    classes: Tuple[Tuple[Vertex, ...], ...]
    quotient: Graph
    class_of: Dict[Vertex, int]

    def members(self, rep: Vertex) -> Tuple[Vertex, ...]:
        return self.classes[self.class_of[rep]]


def critical_cliques(g: Graph) -> CriticalCliquePartition:
    """Group vertices by closed neighborhood (true-twin classes)."""
    by_nbhd: Dict[FrozenSet[Vertex], List[Vertex]] = {}
    for v in g.vertices:
        key = frozenset(g.adj(v)) | {v}
        by_nbhd.setdefault(key, []).append(v)
    classes = sorted((tuple(sorted(vs)) for vs in by_nbhd.values()), key=lambda c: c[0])
    class_of = {v: i for i, cls in enumerate(classes) for v in cls}
    reps = [cls[0] for cls in classes]
    q_edges = set()
    for u, v in g.edges:
        cu, cv = class_of[u], class_of[v]
        if cu != cv:
            q_edges.add(_norm_edge(reps[cu], reps[cv]))
    quotient = Graph(reps, q_edges)
    return CriticalCliquePartition(tuple(classes), quotient, class_of)


def maximal_cliques(g: Graph, limit: Optional[int] = None):
    """All maximal cliques via pivoted Bron-Kerbosch, sorted lexicographically.

    Returns Overflow as soon as clique number limit+1 is emitted; callers
    interested in the 3|E| bound pass limit = 3 * len(g.edges).
    """
    if limit is not None and limit < 1:
        raise ValueError("limit must be >= 1")
    adj = {v: frozenset(g.adj(v)) for v in g.vertices}
    found: List[Tuple[Vertex, ...]] = []

    def expand(r: set, p: set, x: set) -> bool:
        if not p and not x:
            found.append(tuple(sorted(r)))
            return limit is None or len(found) <= limit
        pivot = max(p | x, key=lambda u: (len(p & adj[u]), u))
        for v in sorted(p - adj[pivot]):
            if not expand(r | {v}, p & adj[v], x & adj[v], ):
                return False
            p.remove(v)
            x.add(v)
        return True

    if g.vertices and not expand(set(), set(g.vertices), set()):
        return OVERFLOW
    return sorted(found)


def chordless_cycles_upto(g: Graph, max_len: int = 64) -> List[Tuple[Vertex, ...]]:
    """All chordless cycles (length >= 3) as canonical vertex tuples.

    Intended for small graphs (test oracles and network validation); exact
    enumeration, exponential in the worst case.
    """
    cycles = set()

    def extend(path: List[Vertex]):
        if len(path) >= max_len:
            return
        first = path[0]
        tail = path[-1]
        interior = path[1:-1]
        for w in g.adj(tail):
            if w <= first or w in path:
                continue
            if any(g.has_edge(w, u) for u in interior):
                continue
            if len(path) >= 2 and g.has_edge(w, first):
                cycles.add(_canon_cycle(path + [w]))
            else:
                extend(path + [w])

    for v in g.vertices:
        extend([v])
    return sorted(cycles)


def _canon_cycle(cycle: Sequence[Vertex]) -> Tuple[Vertex, ...]:
    k = len(cycle)
    i = min(range(k), key=lambda j: cycle[j])
    fwd = tuple(cycle[(i + j) % k] for j in range(k))
    bwd = tuple(cycle[(i - j) % k] for j in range(k))
    return min(fwd, bwd)


def is_gnetwork_class(g: Graph) -> bool:
    """True iff g is connected and every block is an edge or a chordless cycle.

    Equivalent to the induced cycles of g being pairwise vertex-disjoint.
    """
    if len(g) == 0 or not g.is_connected():
        return False
    if len(g) == 1:
        return True
    dec = blocks(g)
    for bset, bedges in zip(dec.blocks, dec.block_edges):
        # a 2-connected block with |E| == |V| is exactly a chordless cycle
        if len(bedges) != 1 and len(bedges) != len(bset):
            return False
    return True
