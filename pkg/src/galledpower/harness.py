"""Random network generation, round-trip checks, and a brute-force oracle."""

from __future__ import annotations

import random
from dataclasses import dataclass, field, replace
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple, Union

from .graph_core import OVERFLOW, Graph, Vertex, maximal_cliques
from .network import GNetwork, is_basic, leaf_power, normalize, validate
from .recognizer import RecognitionResult, recognize, verify_forest


class InvalidConfig(ValueError):
    pass


@dataclass(frozen=True)
class GeneratorConfig:
    seed: int = 1
    leaf_count: Tuple[int, int] = (4, 40)
    cycle_count: Tuple[int, int] = (0, 3)
    cycle_lengths: Tuple[int, int] = (3, 12)
    invisible_density: float = 0.3
    stratified: bool = False

    def check(self) -> None:
        for lo, hi in (self.leaf_count, self.cycle_count, self.cycle_lengths):
            if lo > hi or lo < 0:
                raise InvalidConfig("empty range")
        if self.leaf_count[0] < 1:
            raise InvalidConfig("need at least one leaf")
        if not (3 <= self.cycle_lengths[0] and self.cycle_lengths[1] <= 12):
            raise InvalidConfig("cycle lengths must stay within [3, 12]")
        if not (0.0 <= self.invisible_density <= 1.0):
            raise InvalidConfig("invisible_density must be a probability")


class _NetBuilder:
    """Mutable scratch network with attachment bookkeeping."""

    def __init__(self):
        self.vertices: Set[str] = set()
        self.edges: Set[Tuple[str, str]] = set()
        self.leaf_of: Dict[str, str] = {}
        self.hosts: List[str] = []  # visible vertices that may take subtrees
        self.pendant_hosts: List[str] = []  # invisible cycle vertices
        self._serial = 0
        self._leaf_serial = 0

    def fresh(self, visible: bool) -> str:
        v = f"#g{self._serial}"
        self._serial += 1
        self.vertices.add(v)
        if visible:
            self.leaf_of[v] = f"v{self._leaf_serial:03d}"
            self._leaf_serial += 1
        return v

    def edge(self, a: str, b: str) -> None:
        self.edges.add((a, b) if a <= b else (b, a))

    def leaves_used(self) -> int:
        return self._leaf_serial

    def network(self) -> GNetwork:
        g = Graph(self.vertices, self.edges)
        return GNetwork(g, {v: [x] for v, x in self.leaf_of.items()})


def _add_cycle(b: _NetBuilder, rng: random.Random, length: int, density: float,
               host: Optional[str], force_shape: Optional[Sequence[bool]] = None,
               deep_port: bool = False, attach_all: bool = False) -> List[str]:
    """Append one cycle block, gluing it to host by a connector edge."""
    if force_shape is not None:
        invis = list(force_shape)
    else:
        invis = [False] * length
        cap = 1 if length == 3 else length // 2
        placed = 0
        for i in range(length):
            if placed >= cap:
                break
            if invis[i - 1] or invis[(i + 1) % length]:
                continue
            if rng.random() < density:
                invis[i] = True
                placed += 1
    ring = [b.fresh(visible=not invis[i]) for i in range(length)]
    for i in range(length):
        b.edge(ring[i], ring[(i + 1) % length])

    attach_slots = []
    for i, v in enumerate(ring):
        if invis[i]:
            b.pendant_hosts.append(v)
            attach_slots.append(("inv", v))
        elif not (invis[i - 1] and invis[(i + 1) % length]):
            b.hosts.append(v)
            attach_slots.append(("vis", v))
    # small cycles must not be 1-attached: give them two anchors up front
    need = len(attach_slots) if attach_all else (2 if length <= 5 else 0)
    if length == 5 and sum(invis) == 1:
        # keep the far side of the lone invisible vertex anchored
        i = invis.index(True)
        side = ring[(i - 1) % length] if not invis[(i - 1) % length] else ring[(i + 1) % length]
        _pendant_star(b, side)
    used = 0
    for kind, v in attach_slots:
        if used >= need:
            break
        if kind == "vis":
            _pendant_star(b, v)
        else:
            _pendant_leaf(b, v)
        used += 1
    if deep_port:
        vis_hosts = [v for k, v in attach_slots if k == "vis"]
        if vis_hosts:
            w = b.fresh(visible=True)
            b.edge(vis_hosts[0], w)
            _pendant_star(b, w)
            b.hosts.append(w)
    if host is not None:
        vis_hosts = [v for k, v in attach_slots if k == "vis"]
        if vis_hosts:
            b.edge(host, rng.choice(vis_hosts))
        else:
            # enter a fully guarded cycle through a fresh child of an
            # invisible rim vertex; the child's leaf becomes a cut vertex
            inv_hosts = [v for k, v in attach_slots if k == "inv"]
            b.edge(host, _pendant_leaf(b, rng.choice(inv_hosts)))
    return ring


def _pendant_star(b: _NetBuilder, v: str) -> str:
    w = b.fresh(visible=True)
    b.edge(v, w)
    b.hosts.append(w)
    return w


def _pendant_leaf(b: _NetBuilder, u: str, hostable: bool = False) -> str:
    w = b.fresh(visible=True)
    b.edge(u, w)
    if hostable:
        b.hosts.append(w)
    return w


def _guard_clique(b: _NetBuilder, rng: random.Random, host: str, size: int) -> None:
    """Attach a clique block through an invisible guard (block-clique root)."""
    u = b.fresh(visible=False)
    b.edge(host, u)
    for _ in range(max(1, size)):
        _pendant_leaf(b, u, hostable=True)


_STRATA = (
    "cprime", "c1", "c2", "c3", "c4", "c5", "c6", "c7", "c8", "c9",
    "c10", "c11", "c12",
)


def _gadget(b: _NetBuilder, rng: random.Random, name: str) -> None:
    F, T = False, True
    if name == "cprime":
        length = rng.randint(7, 10)
        _add_cycle(b, rng, length, 0.3, None)
    elif name == "c1":
        _add_cycle(b, rng, 3, 0.0, None, force_shape=[F, F, F], attach_all=True)
    elif name == "c2":
        _add_cycle(b, rng, rng.choice((4, 5)), 0.0, None)
    elif name == "c3":
        _add_cycle(b, rng, 6, 0.0, None, force_shape=[F] * 6)
    elif name == "c4":
        _add_cycle(b, rng, 4, 0.0, None, force_shape=[T, F, F, F])
    elif name == "c5":
        _add_cycle(b, rng, 6, 0.0, None, force_shape=[F, T, F, T, F, F])
    elif name == "c6":
        _add_cycle(b, rng, 6, 0.0, None, force_shape=[F, F, F, F, F, T])
    elif name == "c7":
        # four-cycle with one invisible; the only attachments are the
        # invisible's pendant and a grandchild star at the opposite vertex
        u = b.fresh(visible=False)
        ring = [u, b.fresh(True), b.fresh(True), b.fresh(True)]
        for i in range(4):
            b.edge(ring[i], ring[(i + 1) % 4])
        _pendant_leaf(b, u)
        w = b.fresh(visible=True)
        b.edge(ring[2], w)
        _pendant_star(b, w)
        b.hosts.append(w)
    elif name == "c8":
        _add_cycle(b, rng, 3, 0.0, None, force_shape=[T, F, F])
    elif name == "c9":
        _add_cycle(b, rng, 3, 0.0, None, force_shape=[F, F, F])
    else:
        _cut_gadget(b, rng, name)


def _cut_gadget(b: _NetBuilder, rng: random.Random, name: str) -> None:
    """Cycle whose neighborhood pins a cut vertex, plus a second block."""
    if name == "c10":
        u = b.fresh(visible=False)
        ring = [u, b.fresh(True), b.fresh(True)]
        for i in range(3):
            b.edge(ring[i], ring[(i + 1) % 3])
        _pendant_star(b, ring[1])
        cut = _pendant_leaf(b, u)
    elif name == "c11":
        px, pw = b.fresh(True), b.fresh(True)
        u1, u2 = b.fresh(False), b.fresh(False)
        for e in ((px, u1), (u1, pw), (pw, u2), (u2, px)):
            b.edge(*e)
        _pendant_leaf(b, u1)
        _pendant_leaf(b, u2)
        cut = px
    else:  # c12
        pa, pb, px = b.fresh(True), b.fresh(True), b.fresh(True)
        u1, u2 = b.fresh(False), b.fresh(False)
        for e in ((pa, pb), (pb, u1), (u1, px), (px, u2), (u2, pa)):
            b.edge(*e)
        _pendant_leaf(b, u1)
        _pendant_leaf(b, u2)
        cut = px
    _guard_clique(b, rng, cut, rng.randint(1, 2))


def random_gnetwork(cfg: GeneratorConfig) -> GNetwork:
    """Deterministic-in-seed valid, basic, normalization-stable network."""
    cfg.check()
    rng = random.Random(cfg.seed)
    target = rng.randint(*cfg.leaf_count)
    b = _NetBuilder()

    if cfg.stratified:
        _gadget(b, rng, _STRATA[cfg.seed % len(_STRATA)])
    else:
        n_cycles = rng.randint(*cfg.cycle_count)
        previous_host = None
        for _ in range(n_cycles):
            length = rng.randint(*cfg.cycle_lengths)
            remaining = target - b.leaves_used()
            if remaining < length + 2:
                break
            _add_cycle(b, rng, length, cfg.invisible_density, previous_host)
            if not b.hosts:
                inv = {v for v in b.vertices if v not in b.leaf_of}
                nbrs = {v: set() for v in b.vertices}
                for x, y in b.edges:
                    nbrs[x].add(y)
                    nbrs[y].add(x)
                safe = sorted(v for v in b.leaf_of if not (nbrs[v] & inv))
                if safe:
                    b.hosts.append(_pendant_star(b, safe[0]))
                elif b.pendant_hosts:
                    b.hosts.append(_pendant_leaf(b, rng.choice(b.pendant_hosts)))
            previous_host = rng.choice(b.hosts) if b.hosts else None

    if not b.vertices:
        root = b.fresh(visible=True)
        b.hosts.append(root)
    if not b.hosts:
        inv = {v for v in b.vertices if v not in b.leaf_of}
        nbrs = {v: set() for v in b.vertices}
        for x, y in b.edges:
            nbrs[x].add(y)
            nbrs[y].add(x)
        safe = sorted(v for v in b.leaf_of if not (nbrs[v] & inv))
        b.hosts.append(_pendant_star(b, safe[0]))
    while b.leaves_used() < target:
        branch = rng.random()
        if branch < 0.12 and b.pendant_hosts and b.leaves_used() + 1 <= target:
            _pendant_leaf(b, rng.choice(b.pendant_hosts))
        elif branch < 0.22 and b.hosts and target - b.leaves_used() >= 2:
            _guard_clique(b, rng, rng.choice(b.hosts),
                          min(rng.randint(1, 3), target - b.leaves_used()))
        else:
            host = rng.choice(b.hosts)
            w = b.fresh(visible=True)
            b.edge(host, w)
            b.hosts.append(w)

    net = b.network()
    problems = validate(net)
    if problems:
        raise AssertionError(f"generator produced an invalid network: {problems}")
    return net


# ---------------------------------------------------------------------------
# round trips


@dataclass(frozen=True)
class RoundTripReport:
    trials: int
    failures: Tuple[Tuple[int, str], ...]
    clique_bound_violations: Tuple[int, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.failures and not self.clique_bound_violations


def round_trip(cfg: GeneratorConfig, trials: int, k: int) -> RoundTripReport:
    """Generate, take the power, recognize, verify; also check the 3|E| cap."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    failures: List[Tuple[int, str]] = []
    bound_violations: List[int] = []
    for t in range(trials):
        seed = cfg.seed + t
        net = random_gnetwork(replace(cfg, seed=seed))
        g = leaf_power(net, k)
        if k == 4:
            cliques = maximal_cliques(g)
            if cliques is not OVERFLOW and len(cliques) > 3 * len(g.edges):
                bound_violations.append(seed)
        try:
            res = recognize(g, k)
        except Exception as exc:  # pragma: no cover - reported, not raised
            failures.append((seed, f"recognizer error: {exc}"))
            continue
        if not res.is_power:
            failures.append((seed, f"rejected: {res.evidence.render()}"))
            continue
        if not verify_forest(res.roots, g, k):
            failures.append((seed, "returned root fails verification"))
    return RoundTripReport(trials, tuple(failures), tuple(bound_violations))


# ---------------------------------------------------------------------------
# brute force over small roots


def _canonical_code(adj: Sequence[FrozenSet[int]], colors: Sequence[int]) -> bytes:
    """Canonical certificate of a colored graph by refinement plus branching."""
    n = len(adj)

    def refine(classes: List[int]) -> List[int]:
        while True:
            sig = [
                (classes[v], tuple(sorted(classes[w] for w in adj[v])))
                for v in range(n)
            ]
            ranking = {s: i for i, s in enumerate(sorted(set(sig)))}
            new = [ranking[s] for s in sig]
            if new == classes:
                return classes
            classes = new

    def encode(perm: Sequence[int]) -> bytes:
        pos = {v: i for i, v in enumerate(perm)}
        bits = bytearray()
        for i in range(n):
            for j in range(i + 1, n):
                bits.append(1 if perm[j] in adj[perm[i]] else 0)
        return bytes([colors[v] for v in perm]) + bytes(bits)

    best: Optional[bytes] = None

    def search(classes: List[int], fixed: int):
        nonlocal best
        classes = refine(classes)
        groups: Dict[int, List[int]] = {}
        for v in range(n):
            groups.setdefault(classes[v], []).append(v)
        non_singleton = [c for c, vs in groups.items() if len(vs) > 1]
        if not non_singleton:
            perm = sorted(range(n), key=lambda v: classes[v])
            code = encode(perm)
            if best is None or code < best:
                best = code
            return
        c = min(non_singleton)
        for v in groups[c]:
            branched = [cl * 2 + (1 if u == v else 0) for u, cl in zip(range(n), classes)]
            search(branched, fixed + 1)

    search([colors[v] for v in range(n)], 0)
    assert best is not None
    return best


def _thresholded(adj: Sequence[FrozenSet[int]], visible: Sequence[int]) -> Tuple[FrozenSet[Tuple[int, int]], ...]:
    """Edges among visible vertices at inner distance <= 2, as index pairs."""
    vis = list(visible)
    out = set()
    for i, v in enumerate(vis):
        reach = set(adj[v])
        for w in adj[v]:
            reach |= adj[w]
        for j in range(i + 1, len(vis)):
            if vis[j] in reach:
                out.add((i, j))
    return tuple(sorted(out))


def _isomorphic_map(g: Graph, vis_adj: Dict[int, Set[int]]) -> Optional[Dict[int, Vertex]]:
    """Backtracking isomorphism from the visible-square graph onto g."""
    gl = list(g.vertices)
    n = len(gl)
    gdeg = {v: g.degree(v) for v in gl}
    hdeg = {v: len(ns) for v, ns in vis_adj.items()}
    hs = sorted(vis_adj, key=lambda v: (-hdeg[v], v))
    assignment: Dict[int, Vertex] = {}
    used: Set[Vertex] = set()

    def extend(idx: int) -> bool:
        if idx == n:
            return True
        hv = hs[idx]
        for gv in gl:
            if gv in used or gdeg[gv] != hdeg[hv]:
                continue
            ok = True
            for hu, gu in assignment.items():
                if (hu in vis_adj[hv]) != g.has_edge(gu, gv):
                    ok = False
                    break
            if ok:
                assignment[hv] = gv
                used.add(gv)
                if extend(idx + 1):
                    return True
                del assignment[hv]
                used.discard(gv)
        return False

    return dict(assignment) if extend(0) else None


def brute_force_recognize(g: Graph, k: int, inner_bound: int
                          ) -> Union[Tuple[str, GNetwork], Tuple[str, None]]:
    """Exhaustive search for a basic galled-network root with few inner vertices.

    Returns ("power", root), ("notpower", None), or ("inconclusive", None)
    when inner_bound is below the suite's documented 2|V| sufficiency bound.
    Only k = 4 distances enter; the search enumerates all connected inner
    graphs whose blocks are edges or cycles, grown block by block, up to
    colored isomorphism.
    """
    if k != 4:
        raise ValueError("the brute-force oracle is built for k = 4")
    n = len(g.vertices)
    if n == 0:
        return ("power", None)  # type: ignore[return-value]
    if not g.is_connected():
        return ("notpower", None)

    # states: (adjacency tuple of frozensets, colors tuple) with color 1 = visible
    start = ((frozenset(),), (1,))
    seen: Set[bytes] = {_canonical_code(*start)}
    frontier: List[Tuple[Tuple[FrozenSet[int], ...], Tuple[int, ...]]] = [start]
    g_degrees = sorted((g.degree(v) for v in g.vertices), reverse=True)
    g_edge_count = len(g.edges)

    def visible_ok(adj, colors) -> bool:
        for v, c in enumerate(colors):
            if c == 0:
                if len(adj[v]) < 2:
                    return False
                if any(colors[w] == 0 for w in adj[v]):
                    return False
        return True

    gl = list(g.vertices)
    gset = {v: set(g.adj(v)) for v in gl}

    def induced_embeds(adj, colors) -> bool:
        """Blocks attach at cut vertices, so distances between existing
        vertices never change; the current visible square must therefore
        embed into g as an induced subgraph."""
        vis = [v for v, c in enumerate(colors) if c == 1]
        if len(vis) > n:
            return False
        edges = set(_thresholded(adj, vis))
        if len(edges) > g_edge_count:
            return False
        deg = [0] * len(vis)
        for i, j in edges:
            deg[i] += 1
            deg[j] += 1
        for mine, theirs in zip(sorted(deg, reverse=True), g_degrees):
            if mine > theirs:
                return False
        k = len(vis)
        order = sorted(range(k), key=lambda i: -deg[i])
        assigned: List[Vertex] = []

        def backtrack(idx: int) -> bool:
            if idx == k:
                return True
            i = order[idx]
            for gv in gl:
                if gv in assigned:
                    continue
                ok = True
                for pos, gu in enumerate(assigned):
                    j = order[pos]
                    pair = (i, j) if i < j else (j, i)
                    if ((pair in edges)) != (gu in gset[gv]):
                        ok = False
                        break
                if ok:
                    assigned.append(gv)
                    if backtrack(idx + 1):
                        return True
                    assigned.pop()
            return False

        return backtrack(0)

    def color_patterns(length: int, head_color: int):
        """0/1 rows of the new cycle vertices with no two adjacent invisibles."""
        out: List[List[int]] = [[]]
        for i in range(length - 1):
            nxt = []
            for row in out:
                prev = row[-1] if row else head_color
                nxt.append(row + [1])
                if prev == 1 and not (i == length - 2 and head_color == 0):
                    nxt.append(row + [0])
            out = nxt
        return out

    def finished_check(adj, colors) -> Optional[GNetwork]:
        vis = [v for v, c in enumerate(colors) if c == 1]
        if len(vis) != n:
            return None
        vis_adj: Dict[int, Set[int]] = {v: set() for v in vis}
        for (i, j) in _thresholded(adj, vis):
            vis_adj[vis[i]].add(vis[j])
            vis_adj[vis[j]].add(vis[i])
        if sorted(len(ns) for ns in vis_adj.values()) != sorted(
                g.degree(v) for v in g.vertices):
            return None
        mapping = _isomorphic_map(g, vis_adj)
        if mapping is None:
            return None
        names = {v: f"#b{v}" for v in range(len(adj))}
        inner = Graph(
            names.values(),
            ((names[a], names[bb]) for a in range(len(adj)) for bb in adj[a] if a < bb),
        )
        net = GNetwork(inner, {names[v]: [mapping[v]] for v in vis})
        if validate(net) or leaf_power(net, 4) != g:
            return None
        return net

    while frontier:
        adj, colors = frontier.pop()
        if visible_ok(adj, colors):
            net = finished_check(adj, colors)
            if net is not None:
                return ("power", net)
        m = len(adj)
        if m >= inner_bound:
            continue
        n_vis = sum(colors)
        if n_vis == n:
            continue  # further blocks cannot change any leaf distance
        next_states = []
        # pendant vertex (an invisible pendant needs a visible host)
        for host in range(m):
            for col in (1, 0):
                if n_vis + col > n:
                    continue
                if col == 0 and colors[host] == 0:
                    continue
                new_adj = [set(x) for x in adj] + [{host}]
                new_adj[host] = set(new_adj[host]) | {m}
                next_states.append((new_adj, list(colors) + [col]))
        # cycle through an existing vertex
        for host in range(m):
            for length in range(3, min(12, inner_bound - m + 1) + 1):
                extra = length - 1
                if m + extra > inner_bound:
                    continue
                for cols in color_patterns(length, colors[host]):
                    if n_vis + sum(cols) > n:
                        continue
                    new_adj = [set(x) for x in adj] + [set() for _ in range(extra)]
                    ring = [host] + [m + i for i in range(extra)]
                    for i in range(length):
                        a, bb = ring[i], ring[(i + 1) % length]
                        new_adj[a].add(bb)
                        new_adj[bb].add(a)
                    next_states.append((new_adj, list(colors) + cols))
        for new_adj, new_cols in next_states:
            state = (tuple(frozenset(x) for x in new_adj), tuple(new_cols))
            if not induced_embeds(state[0], new_cols):
                continue
            code = _canonical_code(*state)
            if code not in seen:
                seen.add(code)
                frontier.append(state)

    if inner_bound < 2 * n:
        return ("inconclusive", None)
    return ("notpower", None)


def graph6(g: Graph) -> str:
    """graph6 encoding of g after canonical relabeling (n <= 62)."""
    n = len(g.vertices)
    if n > 62:
        raise ValueError("graph6 helper limited to 62 vertices")
    idx = {v: i for i, v in enumerate(g.vertices)}
    adj = [frozenset(idx[w] for w in g.adj(v)) for v in g.vertices]
    code = _canonical_code(adj, [1] * n)
    order = _canonical_order(adj, [1] * n)
    bits = []
    for j in range(n):
        for i in range(j):
            bits.append(1 if order[j] in adj[order[i]] else 0)
    while len(bits) % 6:
        bits.append(0)
    chars = [chr(n + 63)]
    for i in range(0, len(bits), 6):
        val = 0
        for b in bits[i:i + 6]:
            val = (val << 1) | b
        chars.append(chr(val + 63))
    return "".join(chars)


def _canonical_order(adj: Sequence[FrozenSet[int]], colors: Sequence[int]) -> List[int]:
    n = len(adj)
    best_code = None
    best_perm = list(range(n))

    def refine(classes: List[int]) -> List[int]:
        while True:
            sig = [(classes[v], tuple(sorted(classes[w] for w in adj[v]))) for v in range(n)]
            ranking = {s: i for i, s in enumerate(sorted(set(sig)))}
            new = [ranking[s] for s in sig]
            if new == classes:
                return classes
            classes = new

    def encode(perm: Sequence[int]) -> bytes:
        bits = bytearray()
        for i in range(n):
            for j in range(i + 1, n):
                bits.append(1 if perm[j] in adj[perm[i]] else 0)
        return bytes(bits)

    def search(classes: List[int]):
        nonlocal best_code, best_perm
        classes = refine(classes)
        groups: Dict[int, List[int]] = {}
        for v in range(n):
            groups.setdefault(classes[v], []).append(v)
        non_singleton = [c for c, vs in groups.items() if len(vs) > 1]
        if not non_singleton:
            perm = sorted(range(n), key=lambda v: classes[v])
            code = encode(perm)
            if best_code is None or code < best_code:
                best_code = code
                best_perm = perm
            return
        c = min(non_singleton)
        for v in groups[c]:
            search([cl * 2 + (1 if u == v else 0) for u, cl in zip(range(n), classes)])

    search(list(colors))
    return best_perm
