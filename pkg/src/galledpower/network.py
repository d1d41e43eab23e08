"""Galled-network model: leaves, visibility, distances, powers, normalization."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple

from .graph_core import Graph, blocks, connected_components, _norm_edge

InnerVertex = str
Label = str

INNER_PREFIX = "#"


class InvalidNetwork(ValueError):
    pass


class EmptyLeafSet(ValueError):
    pass


class InvisibleVertexPresent(ValueError):
    pass


class GNetwork:
    """A galled network: an inner graph plus pendant leaves labeled by species.

    leaf_map maps an inner vertex to the tuple of leaf labels attached to it
    (more than one label only in non-basic networks).  The network is
    immutable; all derived data (adjacency, visibility) is precomputed.
    """

    __slots__ = ("_inner", "_leaf_map", "_parent", "_cache")

    def __init__(self, inner: Graph, leaf_map: Mapping[InnerVertex, Sequence[Label]]):
        clean: Dict[InnerVertex, Tuple[Label, ...]] = {}
        for v, labels in leaf_map.items():
            if v not in inner:
                raise InvalidNetwork(f"leaf parent {v!r} is not an inner vertex")
            if labels:
                clean[v] = tuple(sorted(labels))
        self._inner = inner
        self._leaf_map = {v: clean[v] for v in sorted(clean)}
        parent: Dict[Label, InnerVertex] = {}
        for v, labels in self._leaf_map.items():
            for x in labels:
                parent[x] = v
        self._parent = parent
        self._cache: Dict[object, object] = {}

    @property
    def inner_graph(self) -> Graph:
        return self._inner

    @property
    def inner_vertices(self) -> Tuple[InnerVertex, ...]:
        return self._inner.vertices

    @property
    def leaf_labels(self) -> Tuple[Label, ...]:
        return tuple(sorted(self._parent))

    @property
    def leaf_map(self) -> Dict[InnerVertex, Tuple[Label, ...]]:
        return dict(self._leaf_map)

    def parent(self, label: Label) -> InnerVertex:
        return self._parent[label]

    def leaves_of(self, v: InnerVertex) -> Tuple[Label, ...]:
        return self._leaf_map.get(v, ())

    def is_visible(self, v: InnerVertex) -> bool:
        return bool(self._leaf_map.get(v))

    def invisible_vertices(self) -> Tuple[InnerVertex, ...]:
        return tuple(v for v in self._inner.vertices if not self.is_visible(v))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GNetwork):
            return NotImplemented
        return self._inner == other._inner and self._leaf_map == other._leaf_map

    def __hash__(self) -> int:
        return hash((self._inner, tuple(self._leaf_map.items())))

    def __repr__(self) -> str:
        return (
            f"GNetwork({len(self._inner)} inner, {len(self._parent)} leaves, "
            f"{len(self.invisible_vertices())} invisible)"
        )

    def inner_distances_from(self, source: InnerVertex, cutoff: Optional[int] = None) -> Dict[InnerVertex, int]:
        dist = {source: 0}
        q = deque([source])
        while q:
            v = q.popleft()
            if cutoff is not None and dist[v] >= cutoff:
                continue
            for w in self._inner.adj(v):
                if w not in dist:
                    dist[w] = dist[v] + 1
                    q.append(w)
        return dist


def is_basic(n: GNetwork) -> bool:
    """True iff no inner vertex carries two or more leaves."""
    return all(len(labels) <= 1 for labels in n.leaf_map.values())


def validate(n: GNetwork) -> List[str]:
    """All violations of the galled-network invariants (empty list means ok)."""
    cached = n._cache.get("validate")
    if cached is not None:
        return list(cached)
    problems = []
    if len(n.inner_vertices) == 0:
        problems.append("no inner vertices")
        return problems
    if not n.inner_graph.is_connected():
        problems.append("inner graph is not connected")
    seen: Dict[Label, int] = {}
    for labels in n.leaf_map.values():
        for x in labels:
            seen[x] = seen.get(x, 0) + 1
    dupes = sorted(x for x, c in seen.items() if c > 1)
    if dupes:
        problems.append(f"duplicate leaf labels: {', '.join(dupes)}")
    if not seen:
        problems.append("no leaves")
    if n.inner_graph.is_connected():
        dec = blocks(n.inner_graph)
        for bset, bedges in zip(dec.blocks, dec.block_edges):
            if len(bedges) > 1 and len(bedges) != len(bset):
                problems.append(
                    "intersecting induced cycles in block {%s}" % ", ".join(sorted(bset))
                )
    n._cache["validate"] = tuple(problems)
    return problems


def leaf_power(n: GNetwork, k: int) -> Graph:
    """The k-leaf power: labels adjacent iff their leaf distance in n is <= k.

    Leaf distance is 2 plus the inner distance of the parents (0 for shared
    parents).  This is the ground-truth oracle used everywhere.
    """
    if k < 2:
        raise ValueError("k must be >= 2")
    cached = n._cache.get(("power", k))
    if cached is not None:
        return cached
    labels = n.leaf_labels
    edges = []
    parents = sorted({n.parent(x) for x in labels})
    per_parent = {p: [x for x in labels if n.parent(x) == p] for p in parents}
    for i, p in enumerate(parents):
        dist = n.inner_distances_from(p, cutoff=k - 2)
        group = per_parent[p]
        for a_i, a in enumerate(group):
            for b in group[a_i + 1:]:
                edges.append((a, b))
        for q in parents[i + 1:]:
            if dist.get(q, k) + 2 <= k:
                for a in group:
                    for b in per_parent[q]:
                        edges.append((a, b))
    out = Graph(labels, edges)
    n._cache[("power", k)] = out
    return out


def inner_cycles(n: GNetwork) -> List[Tuple[InnerVertex, ...]]:
    """The chordless cycles of the inner graph, one per cyclic block, in order."""
    cached = n._cache.get("cycles")
    if cached is not None:
        return list(cached)
    if not n.inner_graph.is_connected():
        return []
    dec = blocks(n.inner_graph)
    cycles = []
    for bset, bedges in zip(dec.blocks, dec.block_edges):
        if len(bedges) == 1 or len(bedges) != len(bset):
            continue
        adj = {v: [w for w in n.inner_graph.adj(v) if v != w and _norm_edge(v, w) in bedges] for v in bset}
        start = min(bset)
        cyc = [start, min(adj[start])]
        while True:
            prev, cur = cyc[-2], cyc[-1]
            nxt = [w for w in adj[cur] if w != prev][0]
            if nxt == start:
                break
            cyc.append(nxt)
        cycles.append(tuple(cyc))
    n._cache["cycles"] = tuple(cycles)
    return cycles


@dataclass(frozen=True)
class NormalizationReport:
    removed_invisible_edges: int
    shortened_cycles: Tuple[Tuple[Tuple[InnerVertex, ...], str], ...]


def _rebuild(inner_vertices: Iterable[InnerVertex], inner_edges: Iterable[Tuple[InnerVertex, InnerVertex]],
             leaf_map: Mapping[InnerVertex, Sequence[Label]]) -> GNetwork:
    g = Graph(inner_vertices, inner_edges)
    return GNetwork(g, {v: labels for v, labels in leaf_map.items() if v in g})


def _garbage_collect(n: GNetwork) -> GNetwork:
    """Drop inner components that carry no leaf."""
    comps = connected_components(n.inner_graph)
    keep = set()
    for comp in comps:
        if any(n.is_visible(v) for v in comp.vertices):
            keep.update(comp.vertices)
    g = n.inner_graph.subgraph(keep)
    return GNetwork(g, {v: ls for v, ls in n.leaf_map.items() if v in keep})


def normalize(n: GNetwork) -> Tuple[GNetwork, NormalizationReport]:
    """Remove invisible-invisible edges and shorten reducible small cycles.

    Every rewrite is checked against the 4-leaf power before being kept, so
    the result always has exactly the same 4-leaf power as the input.
    """
    problems = validate(n)
    if problems:
        raise InvalidNetwork("; ".join(problems))
    reference = leaf_power(n, 4)
    removed = 0
    current = n

    changed = True
    while changed:
        changed = False
        for u, v in current.inner_graph.sorted_edges():
            if current.is_visible(u) or current.is_visible(v):
                continue
            candidate = _garbage_collect(
                _rebuild(
                    current.inner_vertices,
                    [e for e in current.inner_graph.sorted_edges() if e != _norm_edge(u, v)],
                    current.leaf_map,
                )
            )
            if candidate.inner_graph.is_connected() and leaf_power(candidate, 4) == reference:
                current = candidate
                removed += 1
                changed = True
                break

    shortened: List[Tuple[Tuple[InnerVertex, ...], str]] = []
    changed = True
    while changed:
        changed = False
        for cyc in inner_cycles(current):
            rewritten = _try_shorten_cycle(current, cyc, reference)
            if rewritten is not None:
                result, rule = rewritten
                shortened.append((cyc, rule))
                current = result
                changed = True
                break

    return current, NormalizationReport(removed, tuple(shortened))


def _cycle_attach_vertices(n: GNetwork, cyc: Sequence[InnerVertex]) -> List[InnerVertex]:
    cyc_set = set(cyc)
    return [v for v in cyc if any(w not in cyc_set for w in n.inner_graph.adj(v))]


def _try_shorten_cycle(n: GNetwork, cyc: Sequence[InnerVertex], reference: Graph):
    """Apply one reducible-cycle rewrite, verified against the power oracle."""
    k = len(cyc)
    if k > 5:
        return None
    attach = _cycle_attach_vertices(n, cyc)
    invisible = [v for v in cyc if not n.is_visible(v)]

    candidates: List[Tuple[str, GNetwork]] = []
    edges = set(n.inner_graph.sorted_edges())
    cyc_edges = {_norm_edge(cyc[i], cyc[(i + 1) % k]) for i in range(k)}

    def drop_edges(gone):
        return _garbage_collect(
            _rebuild(n.inner_vertices, [e for e in sorted(edges) if e not in set(gone)], n.leaf_map)
        )

    def contract_invisible(u):
        # remove an unattached invisible cycle vertex, joining its neighbors
        nbrs = [w for w in n.inner_graph.adj(u)]
        if len(nbrs) != 2:
            return None
        new_edges = [e for e in sorted(edges) if u not in e]
        new_edges.append(_norm_edge(nbrs[0], nbrs[1]))
        vs = [v for v in n.inner_vertices if v != u]
        return _rebuild(vs, new_edges, n.leaf_map)

    def bend_out(v, anchor):
        # detach v from the cycle, hang it on anchor, close the gap it leaves
        gone = {e for e in cyc_edges if v in e}
        new_edges = [e for e in sorted(edges) if e not in gone]
        new_edges.append(_norm_edge(v, anchor))
        gap = [w for w in cyc if _norm_edge(v, w) in gone]
        if len(gap) == 2:
            new_edges.append(_norm_edge(gap[0], gap[1]))
        return _rebuild(n.inner_vertices, new_edges, n.leaf_map)

    if len(attach) == 1:
        rule = f"standard_{min(k - 2, 3)}"
        if k == 3:
            free = [v for v in cyc if v not in attach]
            vis_free = [v for v in free if n.is_visible(v)]
            if len(vis_free) >= 2:
                candidates.append((rule, drop_edges([_norm_edge(vis_free[0], vis_free[1])])))
            for a in sorted(free):
                for b in sorted(free):
                    if a < b:
                        candidates.append((rule, drop_edges([_norm_edge(a, b)])))
        else:
            for u in sorted(invisible):
                if u not in attach:
                    out = contract_invisible(u)
                    if out is not None:
                        candidates.append((rule, out))
            free_visible = [v for v in cyc if v not in attach and n.is_visible(v)]
            for v in sorted(free_visible):
                i = cyc.index(v)
                for anchor in sorted([cyc[(i - 1) % k], cyc[(i + 1) % k]]):
                    candidates.append((rule, bend_out(v, anchor)))
    if k == 5 and len(invisible) == 1:
        u = invisible[0]
        i = cyc.index(u)
        ends = [cyc[(i - 1) % k], cyc[(i + 1) % k]]
        if u not in attach and not any(v in attach for v in ends):
            out = contract_invisible(u)
            if out is not None:
                candidates.append(("standard_4", out))

    for rule, cand in candidates:
        if (
            cand is not None
            and len(cand.inner_vertices) > 0
            and cand.inner_graph.is_connected()
            and not validate(cand)
            and leaf_power(cand, 4) == reference
        ):
            return cand, rule
    return None


def induced_subnetwork(n: GNetwork, labels: Iterable[Label]) -> GNetwork:
    """N[M]: minimal connected distance-preserving subnetwork with leaf set M.

    Ties between equally minimal subnetworks (the two arcs of a cycle) are
    broken by preferring to drop the lexicographically largest inner vertex.
    """
    wanted = sorted(set(labels))
    if not wanted:
        raise EmptyLeafSet("need at least one leaf label")
    for x in wanted:
        if x not in n.leaf_labels:
            raise KeyError(f"unknown leaf label {x!r}")
    parents = sorted({n.parent(x) for x in wanted})

    full = {v: n.inner_distances_from(v) for v in parents}
    target = {(p, q): full[p][q] for p in parents for q in parents}

    keep = set()
    for p in parents:
        dist_p = full[p]
        for q in parents:
            back = n.inner_distances_from(q)
            for v in n.inner_vertices:
                if dist_p.get(v) is not None and back.get(v) is not None:
                    if dist_p[v] + back[v] == target[(p, q)]:
                        keep.add(v)

    def distances_ok(vertex_set) -> bool:
        sub = n.inner_graph.subgraph(vertex_set)
        if not sub.is_connected() or any(p not in sub for p in parents):
            return False
        for p in parents:
            dist = {p: 0}
            q = deque([p])
            while q:
                v = q.popleft()
                for w in sub.adj(v):
                    if w not in dist:
                        dist[w] = dist[v] + 1
                        q.append(w)
            for qq in parents:
                if dist.get(qq) != target[(p, qq)]:
                    return False
        return True

    for v in sorted(keep, reverse=True):
        if v in parents:
            continue
        trial = keep - {v}
        if distances_ok(trial):
            keep = trial

    sub = n.inner_graph.subgraph(keep)
    leaf_map = {}
    for x in wanted:
        leaf_map.setdefault(n.parent(x), []).append(x)
    return GNetwork(sub, leaf_map)


@dataclass(frozen=True)
class StarForest:
    """Result of separating the stars around every cycle: trees plus glue data.

    Each tree is a GNetwork.  copies maps a duplicated inner vertex (living in
    some tree) back to the original inner vertex of the source network, which
    is what overlay_stars uses to reconstitute the network exactly.
    """

    trees: Tuple[GNetwork, ...]
    copies: Dict[InnerVertex, InnerVertex]
    cycle_edges: Tuple[Tuple[InnerVertex, InnerVertex], ...]


def separate_stars(n: GNetwork) -> StarForest:
    """Detach every star whose middle lies on a cycle, duplicating shared rims."""
    cycles = inner_cycles(n)
    edges = set(n.inner_graph.sorted_edges())
    leaf_map: Dict[InnerVertex, List[Label]] = {v: list(ls) for v, ls in n.leaf_map.items()}
    vertices = set(n.inner_vertices)
    copies: Dict[InnerVertex, InnerVertex] = {}
    cut_edges: List[Tuple[InnerVertex, InnerVertex]] = []

    serial = 0
    for cyc in cycles:
        k = len(cyc)
        for i in range(k):
            a, b = cyc[i], cyc[(i + 1) % k]
            edge = _norm_edge(a, b)
            edges.discard(edge)
            cut_edges.append(edge)
            owners = []
            if not n.is_visible(a):
                owners = [(a, b)]
            elif not n.is_visible(b):
                owners = [(b, a)]
            else:
                owners = [(a, b), (b, a)]
            for middle, rim in owners:
                clone = f"{INNER_PREFIX}copy{serial}"
                serial += 1
                copies[clone] = rim
                vertices.add(clone)
                edges.add(_norm_edge(middle, clone))
                if n.is_visible(rim):
                    leaf_map.setdefault(clone, []).extend(f"~{x}" for x in n.leaves_of(rim))

    g = Graph(vertices, edges)
    trees = []
    for comp in connected_components(g):
        lm = {v: leaf_map.get(v, []) for v in comp.vertices}
        trees.append(GNetwork(comp, lm))
    return StarForest(tuple(trees), copies, tuple(cut_edges))


def overlay_stars(forest: StarForest) -> GNetwork:
    """Inverse of separate_stars: merge duplicated rims and restore cycle edges."""
    vertices = set()
    edges = set()
    leaf_map: Dict[InnerVertex, List[Label]] = {}
    for tree in forest.trees:
        for v in tree.inner_vertices:
            vertices.add(forest.copies.get(v, v))
        for u, v in tree.inner_graph.sorted_edges():
            edges.add(_norm_edge(forest.copies.get(u, u), forest.copies.get(v, v)))
        for v, labels in tree.leaf_map.items():
            if v in forest.copies:
                continue
            leaf_map.setdefault(v, []).extend(labels)
    for e in forest.cycle_edges:
        edges.add(e)
    return _rebuild(vertices, edges, leaf_map)


def relabel_x(n: GNetwork) -> Graph:
    """X(N): the inner graph with each vertex renamed to its leaf's label.

    Defined for basic networks without invisible vertices; the 4-leaf power
    of n equals the square of the returned graph.
    """
    rename = {}
    for v in n.inner_vertices:
        labels = n.leaves_of(v)
        if len(labels) != 1:
            raise InvisibleVertexPresent(
                f"inner vertex {v!r} carries {len(labels)} leaves; need exactly one"
            )
        rename[v] = labels[0]
    return Graph(
        rename.values(),
        ((rename[u], rename[v]) for u, v in n.inner_graph.sorted_edges()),
    )


def graph_square(g: Graph) -> Graph:
    """The square of a graph: vertices at distance <= 2 become adjacent."""
    edges = set(g.sorted_edges())
    for v in g.vertices:
        ns = g.adj(v)
        for i, a in enumerate(ns):
            for b in ns[i + 1:]:
                edges.add(_norm_edge(a, b))
    return Graph(g.vertices, edges)


def network_from_tree_graph(tree: Graph, prefix: str = "t") -> GNetwork:
    """X^{-1}: turn a vertex-labeled tree/graph into a visible network.

    Each vertex becomes an inner vertex carrying its own label as a leaf.
    """
    name = {v: f"{INNER_PREFIX}{prefix}_{v}" for v in tree.vertices}
    g = Graph(name.values(), ((name[u], name[v]) for u, v in tree.sorted_edges()))
    return GNetwork(g, {name[v]: [v] for v in tree.vertices})
