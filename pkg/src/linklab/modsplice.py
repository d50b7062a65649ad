"""Reduction of a ring of keys to one link whose linking number is a nonzero
multiple of n.

Given a base cycle L and cycles Z_1..Z_n with positive lk(L, Z_i), a
pigeonhole argument selects a set J whose linking numbers sum to a
nonzero multiple of n.  Pairs of cycles in J are then spliced: n+1 hybrid
cycles A_i are built from arcs of both cycles plus connector edges, and a
second pigeonhole on their partial sums either finds a cycle A with
lk(A, L) a nonzero multiple of n (early exit) or a single cycle carrying
exactly lk(Z_1, L) + lk(Z_2, L).  Each step shrinks J by one.

The scenes here are fragments of a complete-graph embedding: connector
edges are drawn lazily, as straight segments (or bent once at a perturbed
midpoint when a straight one would touch existing geometry).
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Sequence

from .errors import GeometryError, InvalidArgument, ResourceExhausted
from .graphcore import Cycle, Graph, cycle_edges
from .spatial import Embedding, polyline_linking_number, segment_violations

# ---------------------------------------------------------------- sequences


def ceil_log2(n: int) -> int:
    if n < 1:
        raise InvalidArgument("ceil_log2 needs n >= 1")
    return (n - 1).bit_length()


def alpha_prime(m: int) -> int:
    """1, 2, 5, 10, 21, ...: doubles at even indices, doubles plus one at odd."""
    if m < 1:
        raise InvalidArgument("alpha_prime is defined for m >= 1")
    a = 1
    for i in range(2, m + 1):
        a = 2 * a if i % 2 == 0 else 2 * a + 1
    return a


def alpha_prime_closed(m: int) -> int:
    """Closed form (4^k - 1)/3 at odd m = 2k - 1, doubled at even m."""
    if m < 1:
        raise InvalidArgument("alpha_prime is defined for m >= 1")
    k = (m + 1) // 2
    odd = (4 ** k - 1) // 3
    return odd if m % 2 else 2 * odd


def _check_modulus(n: int) -> None:
    if n < 2:
        raise InvalidArgument("modulus must be at least 2")


def zeta(n: int) -> int:
    """Vertex lower bound (n+1) floor((n+1)/2) ceil((n+1)/2)^(ceil(log2 n) - 2).

    Meant for n >= 5; smaller n are accepted but the exponent may be
    negative, in which case the power is taken as 1 (see ``small_n_flag``).
    """
    _check_modulus(n)
    lo, hi = (n + 1) // 2, (n + 2) // 2
    e = ceil_log2(n) - 2
    return (n + 1) * lo * hi ** max(e, 0)


def small_n_flag(n: int) -> bool:
    """True for n = 2, 3, 4, where the bound is known to be weaker than earlier ones."""
    return 2 <= n <= 4


def eta(n: int) -> int:
    """Order of the complete graph needed for modulus n."""
    return alpha_prime(n) * (zeta(n) + 3)


def check_zeta_growth(n: int) -> bool:
    """Exact check of the vertex-growth chain used in the pairing induction."""
    _check_modulus(n)
    lo, hi = (n + 1) // 2, (n + 2) // 2
    e = ceil_log2(n)
    if e < 3:
        return False
    left = 2 * lo * hi ** (e - 2) + 2
    middle = (n + 1) * lo * hi ** (e - 3)
    # ceil(log2(n/2)) = ceil(log2 n) - 1 for every n >= 2
    right = (n + 1) * lo * hi ** ((e - 1) - 2)
    return left >= middle >= right


def sequence_table(ns: Sequence[int]) -> list[dict]:
    rows = []
    for n in ns:
        row = {"n": n, "alpha_prime": alpha_prime(n), "zeta": zeta(n), "eta": eta(n),
               "growth": check_zeta_growth(n) if n >= 5 else None, "small_n": small_n_flag(n)}
        if n % 2:
            row["alpha_prime_closed"] = alpha_prime_closed(n)
        rows.append(row)
    return rows


def size_after_pairing(size: int, n: int) -> int:
    """Guaranteed vertex count of every A_i built from two cycles of at least ``size``."""
    return 2 * (size // (n + 1)) + 2


def required_vertices(n: int, count: int) -> int:
    """Smallest starting size that survives ceil(log2 count) pairing rounds."""
    rounds = ceil_log2(max(count, 1))
    size = 3
    for _ in range(rounds):
        # invert size_after_pairing: need floor(s/(n+1)) >= ceil((size-2)/2), s >= n+1
        m = max(1, -(-(size - 2) // 2))
        size = (n + 1) * m
    return max(size, 3)


# ------------------------------------------------------------- pigeonhole

def select_zero_sum_window(values: Sequence[int], n: int) -> list[int]:
    """0-based indices of a set of ``values`` summing to a positive multiple of n.

    Scans the prefix sums S_1..S_n: the first prefix that vanishes mod n is
    returned whole; otherwise the first repeated residue S_i = S_j yields
    the window i+1..j, whose sum vanishes mod n.
    """
    _check_modulus(n)
    if len(values) < n:
        raise InvalidArgument(f"need at least {n} values, got {len(values)}")
    values = list(values)[:n]
    if any(v <= 0 for v in values):
        raise InvalidArgument("values must be positive")
    first = {}
    s = 0
    for j, v in enumerate(values, start=1):
        s += v
        r = s % n
        if r == 0:
            return list(range(j))
        if r in first:
            return list(range(first[r], j))
        first[r] = j
    raise AssertionError("pigeonhole failed")


def evenly_spaced_marks(c: Sequence[int] | int, count: int) -> list[int]:
    """Indices floor(k |c| / count), k = 0..count-1, along the cycle."""
    size = c if isinstance(c, int) else len(c)
    if count < 1 or size < count:
        raise InvalidArgument(f"cannot place {count} marks on a cycle of length {size}")
    return [k * size // count for k in range(count)]


# ------------------------------------------------------------------ scenes

def _arc(cyc: Sequence[int], i: int, j: int) -> list[int]:
    """Vertices from index i forward to index j inclusive (cyclic)."""
    k = len(cyc)
    steps = (j - i) % k
    return [cyc[(i + t) % k] for t in range(steps + 1)]


@dataclass
class SpliceScene:
    """Base cycle L, key cycles Z, and the lazily drawn connector edges.

    The scene is append-only: connectors are added on demand and kept, and
    every new piece is validated against all existing geometry.
    """

    positions: list
    edge_points: dict
    L: Cycle
    Z: list
    seed: int = 0
    connector_budget: int = 64
    segments: list = field(default_factory=list)

    def __post_init__(self):
        self._rng = random.Random(f"connectors-{self.seed}")
        if not self.segments:
            for (u, v), pts in sorted(self.edge_points.items()):
                self.segments.extend(self._pieces(u, v, pts))

    def _pieces(self, u, v, inner):
        pts = [self.positions[u], *inner, self.positions[v]]
        tags = [("v", u)] + [("s", (u, v), i) for i in range(len(inner))] + [("v", v)]
        return [(pts[i], pts[i + 1], tags[i], tags[i + 1]) for i in range(len(pts) - 1)]

    @property
    def n_vertices(self) -> int:
        return len(self.positions)

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edge_points

    def connect(self, u: int, v: int) -> None:
        """Realise edge u-v, straight if possible, else bent at a perturbed midpoint."""
        key = (min(u, v), max(u, v))
        if key in self.edge_points:
            return
        pu, pv = self.positions[key[0]], self.positions[key[1]]
        length = max(abs(a - b) for a, b in zip(pu, pv))
        jitter = max(2, length // 8)
        for attempt in range(self.connector_budget):
            if attempt == 0:
                inner = ()
            else:
                mid = tuple((a + b) // 2 + self._rng.randint(-jitter, jitter) for a, b in zip(pu, pv))
                inner = (mid,)
            pieces = self._pieces(key[0], key[1], inner)
            if segment_violations(pieces) or segment_violations(pieces, self.segments):
                continue
            self.edge_points[key] = inner
            self.segments.extend(pieces)
            return
        raise ResourceExhausted(f"could not draw connector {key} in general position")

    def polyline(self, cyc: Sequence[int]) -> list:
        pts = []
        k = len(cyc)
        for i in range(k):
            u, v = cyc[i], cyc[(i + 1) % k]
            key = (min(u, v), max(u, v))
            if key not in self.edge_points:
                raise InvalidArgument(f"scene has no edge {key}")
            inner = list(self.edge_points[key])
            if u > v:
                inner.reverse()
            pts.append(self.positions[u])
            pts.extend(inner)
        return pts

    def lk_with_L(self, cyc: Sequence[int]) -> int:
        if set(cyc) & set(self.L):
            raise InvalidArgument("cycle meets L")
        return polyline_linking_number(self.polyline(self.L), self.polyline(cyc))

    def embedding(self) -> Embedding:
        g = Graph(self.n_vertices, frozenset(self.edge_points))
        subs = {k: v for k, v in self.edge_points.items() if v}
        return Embedding(g, self.positions, subs)


def _torus_curve(windings: int, count: int, radius: int, tube: int, height: int,
                 phase: float, rng: random.Random, jitter: int) -> list:
    pts = []
    for i in range(count):
        t = i / count
        theta = 2 * math.pi * windings * t + phase
        phi = 2 * math.pi * t
        rho = radius + tube * math.cos(phi)
        pts.append((round(rho * math.cos(theta)) + rng.randint(-jitter, jitter),
                    round(rho * math.sin(theta)) + rng.randint(-jitter, jitter),
                    height + round(tube * math.sin(phi)) + rng.randint(-jitter, jitter)))
    return pts


def synthetic_scene(n: int, lk_targets: Sequence[int], seed: int = 0,
                    vertices: int | None = None) -> SpliceScene:
    """Ring-of-keys scene: L is a long rectangle up the z-axis, Z_i a (v_i, 1)
    torus curve around it, stacked in height, with lk(L, Z_i) = v_i.

    ``vertices`` defaults to ``zeta(n)`` for n >= 5 and to the pairing
    requirement otherwise; each Z_i gets at least 6 v_i vertices.
    """
    _check_modulus(n)
    targets = list(lk_targets)
    if not targets or any(int(v) != v or v <= 0 for v in targets):
        raise InvalidArgument("lk targets must be positive integers")
    if vertices is None:
        vertices = zeta(n) if n >= 5 else required_vertices(n, len(targets))
    rng = random.Random(f"scene-{seed}")
    radius, tube, gap = 1000, 300, 250
    spacing = 2 * tube + gap
    count = len(targets)
    top = (count - 1) * spacing // 2 + tube + 2000
    jit = 3
    L_pts = [(rng.randint(-jit, jit), rng.randint(-jit, jit), -top),
             (rng.randint(-jit, jit), rng.randint(-jit, jit), top),
             (radius + tube + 3000, rng.randint(-jit, jit), top),
             (radius + tube + 3000, rng.randint(-jit, jit), -top)]
    positions = list(L_pts)
    edge_points = {}
    L = (0, 1, 2, 3)
    for u, v in cycle_edges(L):
        edge_points[(u, v)] = ()
    Z = []
    for i, v in enumerate(targets):
        size = max(vertices, 6 * v, 3)
        height = i * spacing - (count - 1) * spacing // 2
        pts = _torus_curve(v, size, radius, tube, height, rng.uniform(0, 2 * math.pi), rng, jit)
        base = len(positions)
        positions.extend(pts)
        cyc = tuple(range(base, base + size))
        for a, b in cycle_edges(cyc):
            edge_points[(a, b)] = ()
        Z.append(cyc)
    scene = SpliceScene(positions, edge_points, L, Z, seed)
    if segment_violations(scene.segments):
        raise ResourceExhausted("synthetic scene is not in general position; try another seed")
    for i, v in enumerate(targets):
        lk = scene.lk_with_L(Z[i])
        if lk == -v:
            Z[i] = (Z[i][0],) + tuple(reversed(Z[i][1:]))
        elif lk != v:
            raise ResourceExhausted(f"key {i} links L {lk} times instead of {v}")
    scene.Z = Z
    return scene


# ------------------------------------------------------------- splicing

@dataclass
class Splice:
    """The n+1 hybrid cycles of one pairing, with the data to form unions."""

    z1: Cycle
    z2: Cycle
    p: list
    q: list
    cycles: list

    def union(self, start: int, count: int) -> Cycle:
        """Single cycle equal to A_start + ... + A_(start+count-1) (indices mod n+1)."""
        m = len(self.p)
        if not 1 <= count < m:
            raise InvalidArgument("a union must use between 1 and n of the A_i")
        end = (start + count) % m
        front = _arc(self.z1, self.p[start], self.p[end])
        back = _arc(self.z2, self.q[end], self.q[start])
        return tuple(front + back)


def build_a_cycles(scene: SpliceScene, z1: Sequence[int], z2: Sequence[int], n: int) -> Splice:
    """Split z1 + z2 into n+1 cycles A_0..A_n.

    Marks on z1 follow its orientation, marks on z2 run against it.  A_k
    walks z1 from mark k to mark k+1, crosses to z2, walks z2 back from
    mark k+1 to mark k (along z2's orientation) and crosses home.
    """
    z1, z2 = tuple(z1), tuple(z2)
    m = n + 1
    p = evenly_spaced_marks(z1, m)
    q = [(-off) % len(z2) for off in evenly_spaced_marks(z2, m)]
    for k in range(m):
        scene.connect(z1[p[k]], z2[q[k]])
    cycles = []
    for k in range(m):
        j = (k + 1) % m
        cycles.append(tuple(_arc(z1, p[k], p[j]) + _arc(z2, q[j], q[k])))
    return Splice(z1, z2, p, q, cycles)


def _edge_parity(cycles: Sequence[Sequence[int]]) -> set:
    out = set()
    for c in cycles:
        out ^= set(cycle_edges(c))
    return out


def verify_union(splice: Splice, start: int, count: int, union: Cycle) -> None:
    """The union's edges must equal the mod-2 sum of the A_i it replaces."""
    m = len(splice.cycles)
    parts = [splice.cycles[(start + t) % m] for t in range(count)]
    if len(set(union)) != len(union) or _edge_parity(parts) != set(cycle_edges(union)):
        raise GeometryError("union of consecutive A_i is not a single cycle")


@dataclass
class JEntry:
    id: int
    cycle: Cycle
    lk: int
    depth: int = 0
    round: int = 0

    @property
    def size(self) -> int:
        return len(self.cycle)


@dataclass
class JState:
    n: int
    entries: list
    history: list = field(default_factory=list)
    next_id: int = 0
    exit: tuple | None = None

    @property
    def total(self) -> int:
        return sum(e.lk for e in self.entries)

    @property
    def done(self) -> bool:
        return self.exit is not None or len(self.entries) <= 1


def _pick_pair(state: JState) -> tuple[JEntry, JEntry] | None:
    """Two largest cycles of the current round; an odd one out moves to the next round."""
    while True:
        low = min(e.round for e in state.entries)
        cands = [e for e in state.entries if e.round == low]
        if len(cands) >= 2:
            cands.sort(key=lambda e: (-e.size, e.id))
            return cands[0], cands[1]
        cands[0].round += 1
        state.history.append({"kind": "bye", "id": cands[0].id, "round": cands[0].round})


def splice_step(scene: SpliceScene, state: JState) -> JState:
    """Pair two cycles of J and either exit early or replace them by one cycle."""
    if len(state.entries) < 2 or state.exit is not None:
        raise InvalidArgument("splice_step needs |J| >= 2 and no exit yet")
    n = state.n
    e1, e2 = _pick_pair(state)
    splice = build_a_cycles(scene, e1.cycle, e2.cycle, n)
    lks = [scene.lk_with_L(a) for a in splice.cycles]
    total = e1.lk + e2.lk
    if sum(lks) != total:
        raise GeometryError(f"homology identity failed: sum lk(A_i) = {sum(lks)}, expected {total}")
    m = n + 1
    prefix = [0]
    for v in lks[:n]:
        prefix.append(prefix[-1] + v)
    case = None
    seen = {}
    for j in range(1, n + 1):
        if (prefix[j] - total) % n == 0:
            case = ("prefix", j)
            break
        r = prefix[j] % n
        if r in seen:
            case = ("window", seen[r], j)
            break
        seen[r] = j
    if case is None:
        raise AssertionError("pigeonhole failed on the A_i partial sums")

    if case[0] == "prefix":
        j = case[1]
        keep_start, keep_count, keep_lk = 0, j, prefix[j]
        probe_start, probe_count, probe_lk = j, m - j, total - prefix[j]
    else:
        j1, j2 = case[1], case[2]
        probe_start, probe_count, probe_lk = j1, j2 - j1, prefix[j2] - prefix[j1]
        keep_start, keep_count, keep_lk = j2, m - (j2 - j1), total - probe_lk

    floor_m = min(e1.size, e2.size) // m
    record = {
        "kind": "pair", "ids": [e1.id, e2.id], "sizes": [e1.size, e2.size],
        "lk_in": [e1.lk, e2.lk], "marks_z1": splice.p, "marks_z2": splice.q,
        "lk_A": lks, "partial_sums": prefix[1:], "case": case[0],
        "window": list(case[1:]), "a_sizes": [len(a) for a in splice.cycles],
        "growth_bound": 2 * floor_m + 2,
    }
    if min(record["a_sizes"]) < 2 * floor_m + 2:
        raise GeometryError("an A_i is smaller than the growth bound")

    if probe_lk != 0:
        probe = splice.union(probe_start, probe_count)
        verify_union(splice, probe_start, probe_count, probe)
        measured = scene.lk_with_L(probe)
        if measured != probe_lk:
            raise GeometryError("early-exit cycle linking number disagrees with bookkeeping")
        record.update(outcome="exit", exit_lk=measured, exit_size=len(probe))
        state.history.append(record)
        state.exit = (probe, measured)
        return state

    kept = splice.union(keep_start, keep_count)
    verify_union(splice, keep_start, keep_count, kept)
    measured = scene.lk_with_L(kept)
    if measured != keep_lk or keep_lk != total:
        raise GeometryError("replacement cycle linking number disagrees with bookkeeping")
    if len(kept) < 2 * floor_m + 2:
        raise GeometryError("replacement cycle is smaller than the growth bound")
    new = JEntry(state.next_id, kept, measured, max(e1.depth, e2.depth) + 1, e1.round + 1)
    state.next_id += 1
    state.entries = [e for e in state.entries if e.id not in (e1.id, e2.id)] + [new]
    record.update(outcome="replace", new_id=new.id, new_lk=measured, new_size=new.size,
                  new_depth=new.depth, j_sum=state.total)
    state.history.append(record)
    return state


@dataclass
class SpliceResult:
    L: Cycle
    Z: Cycle
    lk: int
    n: int
    selected: list
    history: list
    early_exit: bool

    @property
    def k(self) -> int:
        return self.lk // self.n

    def to_json(self) -> dict:
        return {"L": list(self.L), "Z": list(self.Z), "lk": self.lk, "n": self.n, "k": self.k,
                "selected": self.selected, "early_exit": self.early_exit, "history": self.history}


def check_vertex_budget(sizes: Sequence[int], n: int) -> None:
    """Reject J before any geometry if some pairing round would run out of vertices."""
    size = min(sizes)
    for _ in range(ceil_log2(len(sizes))):
        if size < n + 1:
            raise InvalidArgument(f"cycles of {min(sizes)} vertices are too small for modulus {n}")
        size = size_after_pairing(size, n)


def reduce_to_multiple_of_n(scene: SpliceScene, n: int) -> SpliceResult:
    """Two-component link (L, Z) with lk(L, Z) = k n, k != 0."""
    _check_modulus(n)
    if len(scene.Z) < n:
        raise InvalidArgument(f"scene has {len(scene.Z)} key cycles, need {n}")
    values = [scene.lk_with_L(z) for z in scene.Z[:n]]
    if any(v <= 0 for v in values):
        raise InvalidArgument("every key cycle must link L positively")
    chosen = select_zero_sum_window(values, n)
    check_vertex_budget([len(scene.Z[i]) for i in chosen], n)
    entries = [JEntry(t, scene.Z[i], values[i]) for t, i in enumerate(chosen)]
    state = JState(n, entries, next_id=len(entries))
    state.history.append({"kind": "select", "values": values, "J": chosen,
                          "j_sum": state.total})
    while not state.done:
        splice_step(scene, state)
        if state.exit is None and state.total % n:
            raise GeometryError("J-sum left the zero class")
    if state.exit is not None:
        z, lk = state.exit
    else:
        (last,) = state.entries
        z, lk = last.cycle, last.lk
    measured = scene.lk_with_L(z)
    if measured != lk or lk == 0 or lk % n:
        raise GeometryError(f"final link has lk {measured}, expected a nonzero multiple of {n}")
    return SpliceResult(scene.L, z, measured, n, chosen, state.history, state.exit is not None)


# ------------------------------------------------------------------ JSON

def scene_to_json(scene: SpliceScene) -> dict:
    from .io import embedding_to_json

    return {"embedding": embedding_to_json(scene.embedding()), "L": list(scene.L),
            "Z": [list(z) for z in scene.Z], "lk": [scene.lk_with_L(z) for z in scene.Z],
            "seed": scene.seed}


def scene_from_json(data: dict) -> SpliceScene:
    from .io import embedding_from_json

    try:
        e = embedding_from_json(data["embedding"])
        edge_points = {k: e.subdivisions.get(k, ()) for k in e.host.sorted_edges()}
        scene = SpliceScene(list(e.positions), edge_points, tuple(data["L"]),
                            [tuple(z) for z in data["Z"]], data.get("seed", 0))
    except (KeyError, TypeError) as exc:
        raise InvalidArgument(f"malformed scene JSON: {exc}") from exc
    for cyc in [scene.L, *scene.Z]:
        for u, v in cycle_edges(cyc):
            if not scene.has_edge(u, v):
                raise InvalidArgument(f"scene cycle uses missing edge ({u}, {v})")
    return scene
