"""Exact piecewise-linear embeddings, general-position checks and crossing diagrams.

Coordinates are Python ints or ``fractions.Fraction``; every predicate is
evaluated exactly.  A projection along an integer direction ``d`` uses the
screen frame ``(u, v)`` with ``u, v, d`` a right-handed orthogonal triple;
the viewer sits at ``+d``, so the strand with larger ``p . d`` is over.

Crossing signs follow the right-hand rule: a crossing is positive when
``over_dir x under_dir`` points at the viewer.  With this convention the
diagrammatic linking number agrees with the Gauss integral.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

from .errors import GeometryError, InvalidArgument, NonGenericDirection, ResourceExhausted
from .graphcore import Cycle, Graph, check_cycle, cycle_edges

RETRY_BUDGET = 64
DIRECTION_RANGE = 997

Point = tuple


def as_point(p) -> Point:
    return tuple(_exact(x) for x in p)


def _exact(x):
    if isinstance(x, (int, Fraction)):
        return x
    if isinstance(x, str):
        f = Fraction(x)
        return f.numerator if f.denominator == 1 else f
    raise InvalidArgument(f"coordinate {x!r} is not exact")


def _sub(p, q):
    return (p[0] - q[0], p[1] - q[1], p[2] - q[2])


def _dot(p, q):
    return p[0] * q[0] + p[1] * q[1] + p[2] * q[2]


def _cross(p, q):
    return (p[1] * q[2] - p[2] * q[1], p[2] * q[0] - p[0] * q[2], p[0] * q[1] - p[1] * q[0])


def orient3d(a, b, c, d):
    """Sign-carrying volume of the tetrahedron ``abcd``."""
    return _dot(_sub(b, a), _cross(_sub(c, a), _sub(d, a)))


def _sign(x) -> int:
    return (x > 0) - (x < 0)


# ------------------------------------------------------------- embeddings

@dataclass(frozen=True)
class Embedding:
    """Vertex positions plus optional interior polyline points per edge.

    ``subdivisions`` maps ``(u, v)`` with ``u < v`` to the interior points
    of that edge, ordered from ``u`` to ``v``.
    """

    host: Graph
    positions: tuple
    subdivisions: dict = field(default_factory=dict)

    def __post_init__(self):
        if len(self.positions) != self.host.n:
            raise InvalidArgument("one position per vertex required")
        object.__setattr__(self, "positions", tuple(as_point(p) for p in self.positions))
        subs = {}
        for (u, v), pts in self.subdivisions.items():
            if not self.host.has_edge(u, v):
                raise InvalidArgument(f"subdivision on missing edge ({u}, {v})")
            pts = [as_point(p) for p in pts]
            subs[(u, v) if u < v else (v, u)] = tuple(pts if u < v else pts[::-1])
        object.__setattr__(self, "subdivisions", subs)

    def edge_points(self, u: int, v: int) -> list:
        """Polyline of edge ``u -> v`` including both end vertices."""
        if u < v:
            inner = list(self.subdivisions.get((u, v), ()))
        else:
            inner = list(self.subdivisions.get((v, u), ()))[::-1]
        return [self.positions[u]] + inner + [self.positions[v]]

    def cycle_polyline(self, cyc: Sequence[int]) -> list:
        """Closed polyline of ``cyc`` (first point not repeated at the end)."""
        pts = []
        k = len(cyc)
        for i in range(k):
            pts.extend(self.edge_points(cyc[i], cyc[(i + 1) % k])[:-1])
        return pts

    def segments(self) -> list[tuple]:
        """Every straight piece as ``(p, q, tag_p, tag_q)``.

        Tags identify shared points: graph vertices are ``("v", id)``,
        subdivision points ``("s", edge, index)``.
        """
        out = []
        for u, v in sorted(self.host.edges):
            pts = self.edge_points(u, v)
            tags = [("v", u)] + [("s", (u, v), i) for i in range(len(pts) - 2)] + [("v", v)]
            for i in range(len(pts) - 1):
                out.append((pts[i], pts[i + 1], tags[i], tags[i + 1]))
        return out


def _collinear_overlap_1d(p0, p1, q0, q1, axis):
    a0, a1 = sorted((p0[axis], p1[axis]))
    b0, b1 = sorted((q0[axis], q1[axis]))
    return a0 <= b1 and b0 <= a1


def segments_intersect_3d(p0, p1, q0, q1) -> bool:
    """Closed segments ``p0p1`` and ``q0q1`` share a point (exact)."""
    for i in range(3):
        if max(p0[i], p1[i]) < min(q0[i], q1[i]) or max(q0[i], q1[i]) < min(p0[i], p1[i]):
            return False
    if orient3d(p0, p1, q0, q1) != 0:
        return False
    r = _sub(p1, p0)
    s = _sub(q1, q0)
    normal = _cross(r, s)
    if normal == (0, 0, 0):
        # parallel: intersect only if collinear and overlapping
        if _cross(r, _sub(q0, p0)) != (0, 0, 0):
            return False
        axis = max(range(3), key=lambda i: abs(r[i]))
        return _collinear_overlap_1d(p0, p1, q0, q1, axis)
    # coplanar, non-parallel: drop the dominant normal axis and test in 2D
    drop = max(range(3), key=lambda i: abs(normal[i]))
    keep = [i for i in range(3) if i != drop]
    P0, P1, Q0, Q1 = ((x[keep[0]], x[keep[1]]) for x in (p0, p1, q0, q1))
    return _segments_intersect_2d(P0, P1, Q0, Q1)


def _cross2(a, b):
    return a[0] * b[1] - a[1] * b[0]


def _orient2d(a, b, c):
    return _cross2((b[0] - a[0], b[1] - a[1]), (c[0] - a[0], c[1] - a[1]))


def _on_segment_2d(a, b, p):
    return min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])


def _segments_intersect_2d(p0, p1, q0, q1) -> bool:
    d1 = _sign(_orient2d(q0, q1, p0))
    d2 = _sign(_orient2d(q0, q1, p1))
    d3 = _sign(_orient2d(p0, p1, q0))
    d4 = _sign(_orient2d(p0, p1, q1))
    if d1 * d2 < 0 and d3 * d4 < 0:
        return True
    return ((d1 == 0 and _on_segment_2d(q0, q1, p0)) or (d2 == 0 and _on_segment_2d(q0, q1, p1))
            or (d3 == 0 and _on_segment_2d(p0, p1, q0)) or (d4 == 0 and _on_segment_2d(p0, p1, q1)))


def _adjacent_fold(shared, far_p, far_q) -> bool:
    """Two segments meeting at ``shared`` overlap beyond it."""
    r = _sub(far_p, shared)
    s = _sub(far_q, shared)
    return _cross(r, s) == (0, 0, 0) and _dot(r, s) > 0


def segment_violations(segs: Sequence[tuple], against: Sequence[tuple] | None = None) -> list[tuple]:
    """Pairs of pieces that meet anywhere other than at a shared tagged point.

    With ``against`` given, only pairs between ``segs`` and ``against`` are
    tested; otherwise all pairs within ``segs``.
    """
    out = []
    if against is None:
        pairs = ((segs[i], segs[j]) for i in range(len(segs)) for j in range(i + 1, len(segs)))
    else:
        pairs = ((s, t) for s in segs for t in against)
    for s, t in pairs:
        p0, p1, ta0, ta1 = s
        q0, q1, tb0, tb1 = t
        shared = {ta0, ta1} & {tb0, tb1}
        if len(shared) == 2:
            out.append((s, t))
            continue
        if shared:
            (tag,) = shared
            sp = p0 if ta0 == tag else p1
            fp = p1 if ta0 == tag else p0
            fq = q1 if tb0 == tag else q0
            if _adjacent_fold(sp, fp, fq):
                out.append((s, t))
            continue
        if segments_intersect_3d(p0, p1, q0, q1):
            out.append((s, t))
    return out


def validate_general_position(e: Embedding) -> list[str]:
    """Every violation of the embedding conditions; empty means ok."""
    problems = []
    seen = {}
    for v, p in enumerate(e.positions):
        if p in seen:
            problems.append(f"vertices {seen[p]} and {v} coincide at {p}")
        seen.setdefault(p, v)
    for s, t in segment_violations(e.segments()):
        problems.append(f"pieces {_tag_str(s)} and {_tag_str(t)} meet")
    return problems


def _tag_str(seg):
    return f"{seg[2]}-{seg[3]}"


def _violating_vertices(g: Graph, pos: list) -> set[int]:
    bad = set()
    first = {}
    for v, p in enumerate(pos):
        if p in first:
            bad.add(v)
        first.setdefault(p, v)
    if bad:
        return bad
    e = Embedding(g, pos)
    for s, t in segment_violations(e.segments()):
        ids = [tag[1] for tag in (s[2], s[3], t[2], t[3]) if tag[0] == "v"]
        bad.add(max(ids))
    return bad


def random_embedding(g: Graph, seed: int, span: int = 1000, max_rounds: int = 200) -> Embedding:
    """Straight-line embedding with integer vertices drawn from ``[0, span]^3``.

    Offending vertices are redrawn until the result is in general
    position.  Deterministic in ``(g, seed, span)``.
    """
    if span < 1:
        raise InvalidArgument("span must be positive")
    rng = random.Random(seed)

    def draw():
        return (rng.randint(0, span), rng.randint(0, span), rng.randint(0, span))

    pos = [draw() for _ in range(g.n)]
    for _ in range(max_rounds):
        bad = _violating_vertices(g, pos)
        if not bad:
            return Embedding(g, tuple(pos))
        for v in sorted(bad):
            pos[v] = draw()
    raise ResourceExhausted(f"no general-position placement found in span {span}")


# -------------------------------------------------------------- diagrams

@dataclass(frozen=True)
class Crossing:
    """A double point: ``over``/``under`` are ``(component, segment, parameter)``."""

    over: tuple
    under: tuple
    sign: int


@dataclass(frozen=True)
class Diagram:
    components: tuple
    direction: tuple
    crossings: tuple

    def gauss_sequence(self, component: int = 0) -> list[tuple[int, str, int]]:
        """``(crossing index, "O"|"U", sign)`` in traversal order of one component."""
        events = []
        for k, c in enumerate(self.crossings):
            if c.over[0] == component:
                events.append(((c.over[1], c.over[2]), k, "O", c.sign))
            if c.under[0] == component:
                events.append(((c.under[1], c.under[2]), k, "U", c.sign))
        events.sort()
        return [(k, role, s) for _, k, role, s in events]

    def inter_crossings(self, i: int, j: int) -> list[Crossing]:
        return [c for c in self.crossings if {c.over[0], c.under[0]} == {i, j} and i != j]


def screen_basis(d) -> tuple:
    """Integer vectors ``u, v`` completing ``d`` to a right-handed orthogonal frame."""
    a, b, c = d
    if (a, b, c) == (0, 0, 0):
        raise InvalidArgument("projection direction must be nonzero")
    u = (-b, a, 0) if (a, b) != (0, 0) else (1, 0, 0)
    v = _cross(d, u)
    return u, v


def direction_sequence(seed: int = 0) -> Iterator[tuple[int, int, int]]:
    """Deterministic stream of nonzero integer directions."""
    rng = random.Random(f"directions-{seed}")
    while True:
        d = tuple(rng.randint(-DIRECTION_RANGE, DIRECTION_RANGE) for _ in range(3))
        if d != (0, 0, 0):
            yield d


def project_polylines(polys: Sequence[Sequence], direction, pairs: str = "all") -> Diagram:
    """Crossing diagram of closed polylines along ``direction``.

    ``pairs="inter"`` skips self-crossings of each component (enough for
    linking numbers).  Raises :class:`NonGenericDirection` on any
    degenerate projection and :class:`GeometryError` if two strands meet
    in space.
    """
    d = tuple(direction)
    u, v = screen_basis(d)
    frames = [[(_dot(p, u), _dot(p, v), _dot(p, d)) for p in poly] for poly in polys]
    segs = []
    for ci, pts in enumerate(frames):
        k = len(pts)
        if k < 3:
            raise InvalidArgument("closed polylines need at least 3 points")
        for si in range(k):
            p, q = pts[si], pts[(si + 1) % k]
            if p[0] == q[0] and p[1] == q[1]:
                raise NonGenericDirection(f"segment {si} of component {ci} projects to a point")
            box = (min(p[0], q[0]), max(p[0], q[0]), min(p[1], q[1]), max(p[1], q[1]))
            segs.append((ci, si, k, p, q, box))
    crossings = []
    params: dict[tuple[int, int], set] = {}
    for i in range(len(segs)):
        ci, si, ki, p0, p1, bi = segs[i]
        for j in range(i + 1, len(segs)):
            cj, sj, kj, q0, q1, bj = segs[j]
            if pairs == "inter" and ci == cj:
                continue
            if bi[1] < bj[0] or bj[1] < bi[0] or bi[3] < bj[2] or bj[3] < bi[2]:
                continue
            if ci == cj and (sj == (si + 1) % ki or si == (sj + 1) % ki):
                if sj == (si + 1) % ki:
                    shared, fp, fq = p1, p0, q1
                else:
                    shared, fp, fq = p0, p1, q0
                r = (fp[0] - shared[0], fp[1] - shared[1])
                s = (fq[0] - shared[0], fq[1] - shared[1])
                if _cross2(r, s) == 0 and r[0] * s[0] + r[1] * s[1] > 0:
                    raise NonGenericDirection("adjacent segments fold onto each other")
                continue
            hit = _crossing(p0, p1, q0, q1)
            if hit is None:
                continue
            s, t = hit
            zp = p0[2] + s * (p1[2] - p0[2])
            zq = q0[2] + t * (q1[2] - q0[2])
            if zp == zq:
                raise GeometryError("strands intersect in space")
            r = (p1[0] - p0[0], p1[1] - p0[1])
            w = (q1[0] - q0[0], q1[1] - q0[1])
            a, b = (ci, si, s), (cj, sj, t)
            if zp > zq:
                sign = _sign(_cross2(r, w))
                crossings.append(Crossing(a, b, sign))
            else:
                sign = _sign(_cross2(w, r))
                crossings.append(Crossing(b, a, sign))
            for key, par in (((ci, si), s), ((cj, sj), t)):
                bucket = params.setdefault(key, set())
                if par in bucket:
                    raise NonGenericDirection("triple point")
                bucket.add(par)
    crossings.sort(key=lambda c: (min(c.over, c.under), max(c.over, c.under)))
    return Diagram(tuple(tuple(map(tuple, p)) for p in polys), d, tuple(crossings))


def _crossing(p0, p1, q0, q1):
    """Interior crossing parameters ``(s, t)`` of two projected segments, or None."""
    r = (p1[0] - p0[0], p1[1] - p0[1])
    q = (q1[0] - q0[0], q1[1] - q0[1])
    w = (q0[0] - p0[0], q0[1] - p0[1])
    den = _cross2(r, q)
    if den == 0:
        if _cross2(w, r) != 0:
            return None
        rr = r[0] * r[0] + r[1] * r[1]
        t0 = w[0] * r[0] + w[1] * r[1]
        t1 = (q1[0] - p0[0]) * r[0] + (q1[1] - p0[1]) * r[1]
        if max(t0, t1) < 0 or min(t0, t1) > rr:
            return None
        raise NonGenericDirection("collinear overlapping projections")
    sn = _cross2(w, q)
    tn = _cross2(w, r)
    if den < 0:
        den, sn, tn = -den, -sn, -tn
    if sn < 0 or sn > den or tn < 0 or tn > den:
        return None
    if sn == 0 or sn == den or tn == 0 or tn == den:
        raise NonGenericDirection("a projected vertex touches another strand")
    return Fraction(sn, den), Fraction(tn, den)


def generic_diagram(polys: Sequence[Sequence], seed: int = 0, pairs: str = "all",
                    budget: int = RETRY_BUDGET) -> Diagram:
    """First generic projection from the seeded direction stream."""
    skipped = 0
    for d in direction_sequence(seed):
        try:
            return project_polylines(polys, d, pairs)
        except NonGenericDirection:
            skipped += 1
            if skipped >= budget:
                raise
    raise AssertionError("unreachable")


def _disjoint_check(c1: Sequence[int], c2: Sequence[int]) -> None:
    if set(c1) & set(c2):
        raise InvalidArgument("cycles share a vertex")


def project(e: Embedding, cycles: Sequence[Sequence[int]], direction) -> Diagram:
    """Diagram of the listed (pairwise vertex-disjoint) cycles of ``e``."""
    for i in range(len(cycles)):
        check_cycle(e.host, cycles[i])
        for j in range(i + 1, len(cycles)):
            _disjoint_check(cycles[i], cycles[j])
    return project_polylines([e.cycle_polyline(c) for c in cycles], direction)


def polyline_linking_number(p1: Sequence, p2: Sequence, seed: int = 0) -> int:
    d = generic_diagram([p1, p2], seed=seed, pairs="inter")
    total = sum(c.sign for c in d.crossings)
    if total % 2:
        raise GeometryError("odd number of inter-component crossings")
    return total // 2


def linking_number(e: Embedding, c1: Sequence[int], c2: Sequence[int], seed: int = 0) -> int:
    """Linking number of two disjoint oriented cycles of ``e``.

    >>> from linklab.graphcore import Graph
    >>> g = Graph(8, frozenset([(0, 1), (1, 2), (2, 3), (0, 3), (4, 5), (5, 6), (6, 7), (4, 7)]))
    >>> e = Embedding(g, [(0, 0, 0), (2, 0, 0), (2, 2, 0), (0, 2, 0),
    ...                   (1, 1, -1), (1, 3, -1), (1, 3, 1), (1, 1, 1)])
    >>> abs(linking_number(e, (0, 1, 2, 3), (4, 5, 6, 7)))
    1
    """
    check_cycle(e.host, c1)
    check_cycle(e.host, c2)
    _disjoint_check(c1, c2)
    return polyline_linking_number(e.cycle_polyline(c1), e.cycle_polyline(c2), seed)


def gauss_data(e: Embedding, c: Sequence[int], direction=None, seed: int = 0) -> Diagram:
    """Single-component diagram of cycle ``c``; searches directions if none given."""
    check_cycle(e.host, c)
    poly = e.cycle_polyline(c)
    if direction is not None:
        return project_polylines([poly], direction)
    return generic_diagram([poly], seed=seed)


def cycle_segments(e: Embedding, cyc: Cycle) -> list[tuple]:
    """Straight pieces of a cycle, tagged as in :meth:`Embedding.segments`."""
    out = []
    k = len(cyc)
    for i in range(k):
        u, w = cyc[i], cyc[(i + 1) % k]
        pts = e.edge_points(u, w)
        lo, hi = min(u, w), max(u, w)
        inner = [("s", (lo, hi), j) for j in range(len(pts) - 2)]
        if u > w:
            inner = inner[::-1]
        tags = [("v", u)] + inner + [("v", w)]
        out.extend((pts[j], pts[j + 1], tags[j], tags[j + 1]) for j in range(len(pts) - 1))
    return out


