"""Abstract graphs, the glued constructions F, F(126), F(115), and the
contraction machinery used to collapse them onto K6 and K3,3,1.

Vertices are dense integers ``0..n-1``; string labels live in a side
table.  Cycles are plain tuples of vertex ids, read cyclically, with the
tuple order giving the orientation.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from importlib import resources
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import InvalidArgument

Cycle = tuple[int, ...]
Edge = tuple[int, int]


def _edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Finite simple graph on vertices ``0..n-1``.

    ``copies`` is an optional side table filled in by the gluing builders:
    entry ``i`` lists, for every vertex of the glued-in piece, its image in
    this graph.
    """

    n: int
    edges: frozenset = frozenset()
    labels: Mapping[int, str] = field(default_factory=dict)
    copies: tuple = ()

    def __post_init__(self):
        edges = set()
        for u, v in self.edges:
            if u == v:
                raise InvalidArgument(f"self-loop at {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise InvalidArgument(f"edge ({u}, {v}) leaves the vertex set")
            edges.add(_edge(u, v))
        object.__setattr__(self, "edges", frozenset(edges))
        object.__setattr__(self, "labels", dict(self.labels))
        adj = [set() for _ in range(self.n)]
        for u, v in edges:
            adj[u].add(v)
            adj[v].add(u)
        object.__setattr__(self, "_adj", tuple(frozenset(a) for a in adj))

    def __hash__(self):
        return hash((self.n, self.edges))

    @property
    def vertices(self) -> range:
        return range(self.n)

    def neighbors(self, v: int) -> frozenset:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj[u]

    def vertex(self, label: str) -> int:
        for v, lab in self.labels.items():
            if lab == label:
                return v
        raise KeyError(label)

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)


@dataclass(frozen=True)
class MarkedGraph:
    """A graph with the distinguished path ``a - b - c``.

    ``designated`` optionally carries named cycles (the four cycles of the
    D4 ring graph, for instance).
    """

    graph: Graph
    a: int
    b: int
    c: int
    designated: tuple = ()

    def __post_init__(self):
        g = self.graph
        if len({self.a, self.b, self.c}) != 3:
            raise InvalidArgument("marks a, b, c must be distinct")
        if not (g.has_edge(self.a, self.b) and g.has_edge(self.b, self.c)):
            raise InvalidArgument("marked graph needs edges a-b and b-c")

    @property
    def path(self) -> tuple[int, int, int]:
        return (self.a, self.b, self.c)


# ---------------------------------------------------------------- builders

def complete_graph(n: int) -> Graph:
    if n < 1:
        raise InvalidArgument("complete_graph needs n >= 1")
    return Graph(n, frozenset(itertools.combinations(range(n), 2)))


def complete_multipartite(*sizes: int) -> Graph:
    """Complete multipartite graph; parts are numbered consecutively."""
    if not sizes or any(s < 1 for s in sizes):
        raise InvalidArgument("part sizes must be positive")
    part = []
    for i, s in enumerate(sizes):
        part.extend([i] * s)
    n = len(part)
    edges = frozenset((u, v) for u, v in itertools.combinations(range(n), 2) if part[u] != part[v])
    return Graph(n, edges)


def k331() -> Graph:
    """K3,3,1 with parts {0,1,2}, {3,4,5} and cone vertex 6."""
    g = complete_multipartite(3, 3, 1)
    return Graph(g.n, g.edges, {6: "cone"})


def glue_map(g1: Graph, g2: Graph, ident: Sequence[tuple[int, int]]) -> list[int]:
    """Image of every ``g2`` vertex in ``glue(g1, g2, ident)``."""
    left = [u for u, _ in ident]
    right = [v for _, v in ident]
    if len(set(left)) != len(left) or len(set(right)) != len(right):
        raise InvalidArgument("identification list must be injective on both sides")
    for u, v in ident:
        if not (0 <= u < g1.n and 0 <= v < g2.n):
            raise InvalidArgument(f"identified pair ({u}, {v}) out of range")
    target = {v: u for u, v in ident}
    out, nxt = [], g1.n
    for v in range(g2.n):
        if v in target:
            out.append(target[v])
        else:
            out.append(nxt)
            nxt += 1
    return out


def glue(g1: Graph, g2: Graph, ident: Sequence[tuple[int, int]]) -> Graph:
    """Disjoint union of ``g1`` and ``g2`` with each ``(u1, v2)`` pair made one vertex.

    ``g1`` keeps its ids; unidentified ``g2`` vertices are appended in order.
    Edges doubled by the identification are merged.
    """
    image = glue_map(g1, g2, ident)
    n = g1.n + g2.n - len(ident)
    edges = set(g1.edges)
    edges.update(_edge(image[u], image[v]) for u, v in g2.edges)
    labels = {image[v]: lab for v, lab in g2.labels.items()}
    labels.update(g1.labels)
    return Graph(n, frozenset(edges), labels, g1.copies)


# Reconstructed middle edges: part X of copy 1 joined to part Y of copy 2
# along a hexagon.  This is the smallest edge set (6 edges, no 5-edge set
# works) for which every triangle/square choice in the two K3,3,1 copies
# admits the D4 ring contraction through a-b-c.
DEFAULT_MIDDLE_EDGES: tuple[Edge, ...] = ((0, 10), (0, 11), (1, 10), (1, 12), (2, 11), (2, 12))

F_COPY1 = tuple(range(0, 7))
F_COPY2 = tuple(range(7, 14))


def load_f_config(path=None) -> list[Edge]:
    """Middle-edge list from a ``{"middle_edges": [[u, v], ...]}`` file.

    ``None`` or ``"default"`` loads the shipped reconstruction.
    """
    if path in (None, "default"):
        text = resources.files("linklab").joinpath("data/f_default.json").read_text()
    else:
        with open(path) as fh:
            text = fh.read()
    data = json.loads(text)
    return [tuple(e) for e in data["middle_edges"]]


def build_F(middle_edges: Iterable[Edge] | None = None) -> MarkedGraph:
    """Two K3,3,1 copies (ids 0-6 and 7-13, cones 6 and 13) plus apex b = 14.

    a and c are the cone vertices: every triangle of K3,3,1 passes through
    the cone, so whichever triangle is linked in an embedding contains a
    (resp. c).
    """
    if middle_edges is None:
        middle_edges = DEFAULT_MIDDLE_EDGES
    base = k331()
    g = glue(Graph(base.n, base.edges), Graph(base.n, base.edges), [])
    a, c, b = 6, 13, 14
    edges = set(g.edges) | {(a, b), (c, b)}
    for u, v in middle_edges:
        if (u in F_COPY1) == (v in F_COPY1) or not (0 <= u < 14 and 0 <= v < 14):
            raise InvalidArgument(f"middle edge ({u}, {v}) must join copy 1 to copy 2")
        edges.add(_edge(u, v))
    graph = Graph(15, frozenset(edges), {a: "a", b: "b", c: "c"}, (F_COPY1, F_COPY2))
    return MarkedGraph(graph, a, b, c)


class _Gluer:
    """Accumulates copies of one marked graph, recording each copy's vertex images."""

    def __init__(self, f: MarkedGraph):
        self.piece = Graph(f.graph.n, f.graph.edges)
        self.g = Graph(0)
        self.images: list[tuple[int, ...]] = []

    def add(self, ident: list[tuple[int, int]]) -> tuple[int, ...]:
        image = tuple(glue_map(self.g, self.piece, ident))
        self.g = glue(self.g, self.piece, ident)
        self.images.append(image)
        return image

    def result(self, labels: dict[int, str]) -> Graph:
        return Graph(self.g.n, self.g.edges, labels, tuple(self.images))


def build_F126(f: MarkedGraph) -> Graph:
    """Ten glued copies of ``f`` contracting onto K6 on {a, b, c1..c4}.

    Copies 1-4 share the edge a-b; copies 5-10 are glued along the paths
    ci - b - cj for the six pairs i < j.  ``copies[i]`` maps f's vertices
    into the result.
    """
    a, b, c = f.path
    gl = _Gluer(f)
    gl.add([])  # copy 1 keeps f's ids
    for _ in range(3):
        gl.add([(a, a), (b, b)])
    cs = [img[c] for img in gl.images]
    for i, j in itertools.combinations(range(4), 2):
        gl.add([(cs[i], a), (b, b), (cs[j], c)])
    labels = {a: "a", b: "b"}
    labels.update({cs[i]: f"c{i + 1}" for i in range(4)})
    return gl.result(labels)


def build_F115(f: MarkedGraph) -> Graph:
    """Nine glued copies of ``f`` contracting onto K3,3,1 with cone B.

    Copies 1-3 share b (called B); copies 4-9 are glued along
    ai - B - cj for i != j.
    """
    a, b, c = f.path
    gl = _Gluer(f)
    gl.add([])
    gl.add([(b, b)])
    gl.add([(b, b)])
    a_ids = [img[a] for img in gl.images]
    c_ids = [img[c] for img in gl.images]
    for i in range(3):
        for j in range(3):
            if i != j:
                gl.add([(a_ids[i], a), (b, b), (c_ids[j], c)])
    labels = {b: "B"}
    labels.update({a_ids[i]: f"a{i + 1}" for i in range(3)})
    labels.update({c_ids[i]: f"c{i + 1}" for i in range(3)})
    return gl.result(labels)


def build_D4() -> MarkedGraph:
    """The D4 ring graph: a reconstruction of the contraction of F.

    Cycle 1 is the triangle (0, 1, 2) through a = 0, cycle 4 the triangle
    (11, 12, 13) through c = 11, cycles 2 and 3 are the squares (7..10)
    and (3..6).  Around the ring the cycles meet in the order
    1 - 2 - 3 - 4 - (a-b-c) - 1, so cycles 1, 3 and 2, 4 are the opposite
    (linkable) pairs.  ``designated`` lists cycles 1..4 in order.
    """
    c1, c3, c2, c4 = (0, 1, 2), (3, 4, 5, 6), (7, 8, 9, 10), (11, 12, 13)
    edges = set()
    for cyc in (c1, c2, c3, c4):
        edges.update(cycle_edges(cyc))
    edges.update({(0, 14), (11, 14), (1, 7), (3, 9), (5, 12)})
    graph = Graph(15, frozenset(edges), {0: "a", 14: "b", 11: "c"})
    return MarkedGraph(graph, 0, 14, 11, (c1, c2, c3, c4))


# ------------------------------------------------------------------ cycles

def cycle_edges(cyc: Sequence[int]) -> list[Edge]:
    k = len(cyc)
    return [_edge(cyc[i], cyc[(i + 1) % k]) for i in range(k)]


def reverse_cycle(cyc: Sequence[int]) -> Cycle:
    return (cyc[0],) + tuple(reversed(cyc[1:]))


def canonical_cycle(cyc: Sequence[int]) -> Cycle:
    """Rotate the minimum vertex to the front; orient toward the smaller neighbour."""
    i = min(range(len(cyc)), key=cyc.__getitem__)
    rot = tuple(cyc[i:]) + tuple(cyc[:i])
    rev = reverse_cycle(rot)
    return rot if rot[1] <= rev[1] else rev


def is_cycle(g: Graph, cyc: Sequence[int]) -> bool:
    if len(cyc) < 3 or len(set(cyc)) != len(cyc):
        return False
    if any(not (0 <= v < g.n) for v in cyc):
        return False
    return all(g.has_edge(u, v) for u, v in cycle_edges(cyc))


def check_cycle(g: Graph, cyc: Sequence[int]) -> None:
    if not is_cycle(g, cyc):
        raise InvalidArgument(f"{tuple(cyc)} is not a cycle of the graph")


def rotate_to(cyc: Sequence[int], path: Sequence[int]) -> Cycle | None:
    """Rotate/reflect ``cyc`` so it starts with the contiguous ``path``; None if absent."""
    for seq in (tuple(cyc), reverse_cycle(cyc)):
        if path[0] in seq:
            i = seq.index(path[0])
            rot = seq[i:] + seq[:i]
            if rot[: len(path)] == tuple(path):
                return rot
    return None


def iter_cycles_through_path(g: Graph, path: Sequence[int], max_len: int,
                             within: Iterable[int] | None = None) -> Iterator[Cycle]:
    """Lazy form of :func:`enumerate_cycles_through_path`."""
    path = tuple(path)
    for u, v in zip(path, path[1:]):
        if not g.has_edge(u, v):
            raise InvalidArgument(f"path edge ({u}, {v}) missing")
    if len(set(path)) != len(path):
        raise InvalidArgument("path repeats a vertex")
    return _walk_from_path(g, path, max_len, within)


def _walk_from_path(g, path, max_len, within):
    if max_len < len(path) or len(path) < 2:
        return
    allowed = None if within is None else set(within)
    start = path[0]
    used = set(path)
    stack = list(path)
    # explicit stack of neighbour iterators keeps deep searches off the C stack
    frames = [iter(sorted(g.neighbors(path[-1])))]
    if len(stack) >= 3 and g.has_edge(path[-1], start):
        yield tuple(stack)
    if len(stack) == max_len:
        return
    while frames:
        w = next(frames[-1], None)
        if w is None:
            frames.pop()
            if len(stack) > len(path):
                used.discard(stack.pop())
            continue
        if w in used or (allowed is not None and w not in allowed):
            continue
        used.add(w)
        stack.append(w)
        if len(stack) >= 3 and g.has_edge(w, start):
            yield tuple(stack)
        if len(stack) < max_len:
            frames.append(iter(sorted(g.neighbors(w))))
        else:
            used.discard(stack.pop())


def enumerate_cycles_through_path(g: Graph, path: Sequence[int], max_len: int,
                                  within: Iterable[int] | None = None) -> list[Cycle]:
    """All simple cycles with at most ``max_len`` vertices containing ``path``.

    Each cycle starts with ``path`` and follows its direction, so every
    cycle is reported exactly once.  ``within`` restricts the search to a
    vertex subset.  Output is in depth-first order over sorted neighbours.
    """
    return list(iter_cycles_through_path(g, path, max_len, within))


def cycles_of_length(g: Graph, k: int) -> list[Cycle]:
    """Every simple cycle on exactly ``k`` vertices, canonical and sorted."""
    if k < 3:
        return []
    out = []

    def dfs(stack, used):
        v = stack[-1]
        if len(stack) == k:
            if g.has_edge(v, stack[0]) and stack[1] < stack[-1]:
                out.append(tuple(stack))
            return
        for w in sorted(g.neighbors(v)):
            if w > stack[0] and w not in used:
                used.add(w)
                stack.append(w)
                dfs(stack, used)
                stack.pop()
                used.discard(w)

    for s in range(g.n):
        dfs([s], {s})
    return sorted(out)


def disjoint_cycle_pairs(g: Graph, len_a: int, len_b: int) -> list[tuple[Cycle, Cycle]]:
    """Unordered pairs of vertex-disjoint cycles with ``len_a`` and ``len_b`` vertices."""
    ca = cycles_of_length(g, len_a)
    cb = ca if len_b == len_a else cycles_of_length(g, len_b)
    out = []
    for i, x in enumerate(ca):
        sx = set(x)
        for j, y in enumerate(cb):
            if len_a == len_b and j <= i:
                continue
            if sx.isdisjoint(y):
                out.append((x, y))
    return out


# ------------------------------------------------------------- contraction

def components(g: Graph, within: Iterable[int] | None = None) -> list[set[int]]:
    todo = set(range(g.n)) if within is None else set(within)
    comps = []
    while todo:
        s = todo.pop()
        comp, frontier = {s}, [s]
        while frontier:
            v = frontier.pop()
            for w in g.neighbors(v):
                if w in todo:
                    todo.discard(w)
                    comp.add(w)
                    frontier.append(w)
        comps.append(comp)
    return comps


def contract_vertices(g: Graph, groups: Sequence[Iterable[int]]) -> tuple[Graph, dict[int, int]]:
    """Merge each group (which must induce a connected subgraph) to one vertex.

    Image ids are assigned in order of each class's smallest member.
    Loops and parallel edges created by the merge are deleted.
    """
    rep = list(range(g.n))
    seen = set()
    for grp in groups:
        grp = set(grp)
        if not grp:
            continue
        if grp & seen:
            raise InvalidArgument("contraction groups overlap")
        if len(components(g, grp)) != 1:
            raise InvalidArgument(f"group {sorted(grp)} is not connected")
        seen |= grp
        low = min(grp)
        for v in grp:
            rep[v] = low
    reps = sorted(set(rep))
    new_id = {r: i for i, r in enumerate(reps)}
    mapping = {v: new_id[rep[v]] for v in range(g.n)}
    edges = {_edge(mapping[u], mapping[v]) for u, v in g.edges if mapping[u] != mapping[v]}
    labels = {}
    for v in sorted(g.labels):
        labels.setdefault(mapping[v], g.labels[v])
    return Graph(len(reps), frozenset(edges), labels), mapping


def contract_cycle(g: Graph, cyc: Sequence[int]) -> tuple[Graph, dict[int, int]]:
    """Merge all vertices of ``cyc`` into one vertex."""
    check_cycle(g, cyc)
    return contract_vertices(g, [cyc])


def contract_arc(g: Graph, cyc: Sequence[int], keep: Sequence[int]) -> tuple[Graph, dict[int, int]]:
    """Shrink ``cyc`` onto the triangle formed by the contiguous path ``keep = (a, b, c)``.

    The arc of the cycle running from c back to a is contracted onto a, so
    the cycle becomes the triangle a-b-c.  Other vertices are untouched.
    """
    check_cycle(g, cyc)
    rot = rotate_to(cyc, keep)
    if rot is None:
        raise InvalidArgument(f"cycle does not contain the path {tuple(keep)}")
    inner = rot[len(keep):]
    if not inner:
        return contract_vertices(g, [])
    return contract_vertices(g, [(rot[0],) + inner])


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    """Subgraph on ``vertices`` (renumbered in increasing order) and the renumbering."""
    keep = sorted(set(vertices))
    new = {v: i for i, v in enumerate(keep)}
    edges = {(new[u], new[v]) for u, v in g.edges if u in new and v in new}
    labels = {new[v]: lab for v, lab in g.labels.items() if v in new}
    return Graph(len(keep), frozenset(edges), labels), new


def labeled_quotient(g: Graph, cycles: Sequence[Sequence[int]], paths: Sequence[Sequence[int]]) -> Graph:
    """Contract cycle ``i`` onto the triangle spanned by ``paths[i]``, keep labelled vertices.

    This is the collapse performed on F(126) and F(115): each copy's chosen
    cycle through its a-b-c path becomes a triangle on labelled vertices and
    everything unlabelled is discarded.
    """
    if len(cycles) != len(paths):
        raise InvalidArgument("one path per cycle required")
    rep = list(range(g.n))
    for cyc, path in zip(cycles, paths):
        check_cycle(g, cyc)
        rot = rotate_to(cyc, path)
        if rot is None:
            raise InvalidArgument(f"cycle misses its path {tuple(path)}")
        for v in rot[len(path):]:
            if v in g.labels:
                raise InvalidArgument("contracted arc runs through a labelled vertex")
            rep[v] = rot[0]
    edges = set()
    for cyc in cycles:
        for u, v in cycle_edges(cyc):
            ru, rv = rep[u], rep[v]
            if ru != rv and ru in g.labels and rv in g.labels:
                edges.add(_edge(ru, rv))
    for u, v in g.edges:
        if u in g.labels and v in g.labels:
            edges.add(_edge(u, v))
    sub, new = induced_subgraph(Graph(g.n, frozenset(edges), g.labels), g.labels)
    return sub


def is_isomorphic_small(g: Graph, h: Graph) -> bool:
    """Brute-force isomorphism test; intended for graphs on at most 8 vertices."""
    if g.n != h.n or len(g.edges) != len(h.edges):
        return False
    if sorted(map(g.degree, g.vertices)) != sorted(map(h.degree, h.vertices)):
        return False
    for perm in itertools.permutations(range(h.n)):
        if all(h.has_edge(perm[u], perm[v]) for u, v in g.edges):
            return True
    return False


def ring_connectors(f: MarkedGraph, cycle1: Sequence[int], cycle2: Sequence[int],
                       cycle3: Sequence[int], cycle4: Sequence[int]) -> tuple[Edge, Edge, Edge] | None:
    """Edges e12, e23, e34 joining consecutive cycles of the D4 ring pattern.

    Cycle 1 must contain a, cycle 4 must contain c.  The three edges must
    use distinct attachment points on each cycle (a and c are already
    used by the a-b-c path).  Returns None when F does not contract to the
    D4 ring graph for this choice of cycles.
    """
    g = f.graph
    s1, s2, s3, s4 = map(set, (cycle1, cycle2, cycle3, cycle4))
    if f.a not in s1 or f.c not in s4:
        raise InvalidArgument("cycle 1 must contain a and cycle 4 must contain c")

    def between(x, y, avoid_x=(), avoid_y=()):
        return [(u, v) for u in sorted(x) for v in sorted(g.neighbors(u))
                if v in y and u not in avoid_x and v not in avoid_y]

    for u1, v2 in between(s1, s2, avoid_x={f.a}):
        for u2, v3 in between(s2, s3, avoid_x={v2}):
            for u3, v4 in between(s3, s4, avoid_x={v3}, avoid_y={f.c}):
                return (u1, v2), (u2, v3), (u3, v4)
    return None
