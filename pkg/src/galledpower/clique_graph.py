"""The maximal-cliques graph MC(G): nodes, labeled edges, admissibility checks."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Optional, Sequence, Set, Tuple, Union

from .evidence import NotPowerEvidence
from .graph_core import OVERFLOW, DisconnectedInput, Graph, Vertex, maximal_cliques

Node = int


class CliqueGraph:
    """Graph on the maximal cliques of a backing graph.

    Nodes are indices into a sorted clique list; an edge joins cliques whose
    intersection is nonempty and maximal with respect to at least one of its
    endpoints.  Edge labels are the intersections, weights their sizes.
    """

    def __init__(self, backing: Graph, cliques: Sequence[FrozenSet[Vertex]]):
        self.backing = backing
        self.cliques: Tuple[FrozenSet[Vertex], ...] = tuple(
            sorted(cliques, key=lambda c: tuple(sorted(c)))
        )
        n = len(self.cliques)
        inter: Dict[Tuple[Node, Node], FrozenSet[Vertex]] = {}
        holder: Dict[Vertex, List[Node]] = {}
        for i, c in enumerate(self.cliques):
            for v in c:
                holder.setdefault(v, []).append(i)
        pairs = set()
        for v, members in holder.items():
            for x, i in enumerate(members):
                for j in members[x + 1:]:
                    pairs.add((i, j))
        for i, j in pairs:
            inter[(i, j)] = self.cliques[i] & self.cliques[j]

        def maximal_wrt(i: Node, j: Node) -> bool:
            cap = inter[(i, j) if i < j else (j, i)]
            for k in holder[next(iter(cap))]:
                if k in (i, j):
                    continue
                other = self.cliques[i] & self.cliques[k]
                if cap < other:
                    return False
            return True

        edges: Dict[Tuple[Node, Node], FrozenSet[Vertex]] = {}
        for (i, j), cap in inter.items():
            if cap and (maximal_wrt(i, j) or maximal_wrt(j, i)):
                edges[(i, j)] = cap
        self.edge_labels: Dict[Tuple[Node, Node], FrozenSet[Vertex]] = edges
        adj: Dict[Node, List[Node]] = {i: [] for i in range(n)}
        for i, j in edges:
            adj[i].append(j)
            adj[j].append(i)
        self.adjacency: Dict[Node, Tuple[Node, ...]] = {
            i: tuple(sorted(ns)) for i, ns in adj.items()
        }
        self.node_of_clique: Dict[FrozenSet[Vertex], Node] = {
            c: i for i, c in enumerate(self.cliques)
        }

    def nodes(self) -> range:
        return range(len(self.cliques))

    def label(self, i: Node) -> FrozenSet[Vertex]:
        return self.cliques[i]

    def size(self, i: Node) -> int:
        return len(self.cliques[i])

    def edge_label(self, i: Node, j: Node) -> FrozenSet[Vertex]:
        return self.edge_labels[(i, j) if i < j else (j, i)]

    def weight(self, i: Node, j: Node) -> int:
        return len(self.edge_label(i, j))

    def has_edge(self, i: Node, j: Node) -> bool:
        return ((i, j) if i < j else (j, i)) in self.edge_labels

    def neighbors(self, i: Node) -> Tuple[Node, ...]:
        return self.adjacency[i]

    def as_graph(self) -> Graph:
        return Graph((str(i) for i in self.nodes()),
                     ((str(i), str(j)) for i, j in self.edge_labels))

    def describe(self, i: Node) -> str:
        return "{" + ",".join(sorted(self.cliques[i])) + "}"

    def __repr__(self) -> str:
        return f"CliqueGraph({len(self.cliques)} nodes, {len(self.edge_labels)} edges)"


def build_mc(g: Graph) -> Union[CliqueGraph, NotPowerEvidence]:
    """MC(G) with the 3|E| clique cap and the two admissibility checks.

    A violation of either bound (an edge in more than 3 maximal cliques, or
    two cliques sharing more than 3 vertices) proves G is not a 4-leaf basic
    galled-network power, so evidence is returned instead of a graph.
    """
    if not g.is_connected():
        raise DisconnectedInput("build_mc requires a connected graph")
    limit = max(1, 3 * len(g.edges))
    cliques = maximal_cliques(g, limit)
    if cliques is OVERFLOW:
        return NotPowerEvidence("TooManyCliques", f"more than {limit} maximal cliques")
    sets = [frozenset(c) for c in cliques]

    per_edge: Dict[Tuple[Vertex, Vertex], int] = {}
    for c in cliques:
        for i, u in enumerate(c):
            for v in c[i + 1:]:
                per_edge[(u, v)] = per_edge.get((u, v), 0) + 1
    for (u, v), count in sorted(per_edge.items()):
        if count > 3:
            return NotPowerEvidence(
                "AdmissibilityViolation",
                f"edge in {count} maximal cliques",
                (u, v),
            )
    for i, a in enumerate(sets):
        for b in sets[i + 1:]:
            cap = a & b
            if len(cap) > 3:
                return NotPowerEvidence(
                    "AdmissibilityViolation",
                    f"two maximal cliques share {len(cap)} vertices",
                    tuple(sorted(cap)),
                )
    return CliqueGraph(g, sets)


def label_of_subgraph(cg: CliqueGraph, nodes: Sequence[Node]) -> FrozenSet[Vertex]:
    """l(S): union of edge labels over the induced subgraph on the given nodes."""
    group = sorted(set(nodes))
    out: Set[Vertex] = set()
    for x, i in enumerate(group):
        for j in group[x + 1:]:
            if cg.has_edge(i, j):
                out |= cg.edge_label(i, j)
    return frozenset(out)


@dataclass(frozen=True)
class Ob2Fact:
    kind: str
    nodes: Tuple[Node, ...]


def structural_probe(cg: CliqueGraph) -> List[Ob2Fact]:
    """Forced classification facts about root fragments, read off MC weights.

    - a weight-1 edge forces an invisible (quasi) star at one endpoint;
    - a weight-3 triangle forces three visible quasi stars on one triangle;
    - two weight-3 edges at a node with non-adjacent far ends force a cycle
      (one of the three shortest cycle networks) at the shared node.
    """
    facts: List[Ob2Fact] = []
    for (i, j), lab in sorted(cg.edge_labels.items()):
        if len(lab) == 1:
            facts.append(Ob2Fact("InvisibleStarAtOneEnd", (i, j)))
    for i in cg.nodes():
        ns = cg.neighbors(i)
        for x, j in enumerate(ns):
            for k in ns[x + 1:]:
                if cg.has_edge(j, k):
                    if i < j < k and cg.weight(i, j) == cg.weight(j, k) == cg.weight(i, k) == 3:
                        facts.append(Ob2Fact("ThreeVisibleQuasiStarsSharedTriangle", (i, j, k)))
                else:
                    if cg.weight(i, j) == 3 and cg.weight(i, k) == 3:
                        facts.append(Ob2Fact("CycleAtM", (i, j, k)))
    return facts
