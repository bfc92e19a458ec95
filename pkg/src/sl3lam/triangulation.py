"""Ideal triangulations of marked surfaces and their amalgamated quivers.

Each triangle lists its three sides in counterclockwise order.  A side is a
`Slot`: an edge id plus whether the triangle runs along the edge in its stored
direction (ends[0] -> ends[1]).  Every edge carries two quiver vertices,
i1 near ends[0] and i2 near ends[1]; every triangle carries one face vertex.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Sequence

from .errors import (BoundaryEdge, InvalidTriangulation, RoleNotFound, SelfFoldedFlip,
                     SelfGluedQuadrilateral)
from .exchange import ExchangeSeed, Mutate, TropicalPoint

PUNCTURE = "puncture"
SPECIAL = "special"
INTERIOR = "interior"
BOUNDARY = "boundary"


@dataclass(frozen=True)
class MarkedPoint:
    id: str
    kind: str


@dataclass(frozen=True)
class Edge:
    id: str
    ends: tuple
    kind: str


@dataclass(frozen=True)
class Slot:
    edge: str
    forward: bool


@dataclass(frozen=True)
class Triangle:
    slots: tuple


@dataclass(frozen=True)
class Triangulation:
    marked_points: tuple
    edges: tuple
    triangles: tuple
    # optional fixed vertex numbering: edge id -> (i1, i2) and per-triangle face id
    edge_labels: dict = field(default=None, compare=False, hash=False)
    face_labels: tuple = field(default=None, compare=False, hash=False)

    def point(self, pid: str) -> MarkedPoint:
        for p in self.marked_points:
            if p.id == pid:
                return p
        raise KeyError(pid)

    def edge(self, eid: str) -> Edge:
        for e in self.edges:
            if e.id == eid:
                return e
        raise KeyError(eid)

    def slot_ends(self, slot: Slot) -> tuple:
        a, b = self.edge(slot.edge).ends
        return (a, b) if slot.forward else (b, a)

    def punctures(self) -> list:
        return [p.id for p in self.marked_points if p.kind == PUNCTURE]

    def specials(self) -> list:
        return [p.id for p in self.marked_points if p.kind == SPECIAL]

    def interior_edges(self) -> list:
        return [e.id for e in self.edges if e.kind == INTERIOR]

    def boundary_edges(self) -> list:
        return [e.id for e in self.edges if e.kind == BOUNDARY]

    def slots_of(self, eid: str) -> list:
        """(triangle index, slot position) pairs bearing the edge."""
        return [(t, s) for t, tri in enumerate(self.triangles)
                for s, slot in enumerate(tri.slots) if slot.edge == eid]

    def corners_at(self, pid: str) -> list:
        """(triangle index, slot position) for each corner at the point; the
        corner sits between slot position-1 (incoming) and position (outgoing)."""
        out = []
        for t, tri in enumerate(self.triangles):
            for s, slot in enumerate(tri.slots):
                if self.slot_ends(slot)[0] == pid:
                    out.append((t, s))
        return out

    def euler_characteristic(self) -> int:
        """χ(Σ*) = V - E + F - |punctures| of the cell complex."""
        return len(self.marked_points) - len(self.edges) + len(self.triangles) - len(self.punctures())

    def counts(self) -> dict:
        chi = self.euler_characteristic()
        mb = len(self.specials())
        n_e = len(self.edges)
        n_t = len(self.triangles)
        return {
            "chi": chi,
            "special_points": mb,
            "punctures": len(self.punctures()),
            "edges": n_e,
            "interior_edges": len(self.interior_edges()),
            "triangles": n_t,
            "vertices": 2 * n_e + n_t,
            "unfrozen_vertices": 2 * len(self.interior_edges()) + n_t,
            "expected": {
                "edges": -3 * chi + 2 * mb,
                "interior_edges": -3 * chi + mb,
                "triangles": -2 * chi + mb,
                "vertices": -8 * chi + 5 * mb,
                "unfrozen_vertices": -8 * chi + 3 * mb,
            },
        }

    # -------------------------------------------------------- JSON

    def to_json(self) -> dict:
        data = {
            "marked_points": [{"id": p.id, "kind": p.kind} for p in self.marked_points],
            "edges": [{"id": e.id, "ends": list(e.ends), "kind": e.kind} for e in self.edges],
            "triangles": [{"slots": [{"edge": s.edge, "forward": s.forward} for s in t.slots]}
                          for t in self.triangles],
        }
        if self.edge_labels is not None:
            data["vertex_labels"] = {
                "edges": {k: [v[0] + 1, v[1] + 1] for k, v in self.edge_labels.items()},
                "faces": [f + 1 for f in self.face_labels],
            }
        return data

    @classmethod
    def from_json(cls, data: dict) -> "Triangulation":
        points = tuple(MarkedPoint(str(p["id"]), p["kind"]) for p in data["marked_points"])
        edges = tuple(Edge(str(e["id"]), tuple(str(x) for x in e["ends"]), e["kind"])
                      for e in data["edges"])
        triangles = tuple(Triangle(tuple(Slot(str(s["edge"]), bool(s["forward"])) for s in t["slots"]))
                          for t in data["triangles"])
        edge_labels = face_labels = None
        if "vertex_labels" in data:
            labels = data["vertex_labels"]
            edge_labels = {str(k): (v[0] - 1, v[1] - 1) for k, v in labels["edges"].items()}
            face_labels = tuple(f - 1 for f in labels["faces"])
        return cls(points, edges, triangles, edge_labels, face_labels)

    def without_labels(self) -> "Triangulation":
        return Triangulation(self.marked_points, self.edges, self.triangles)


def load_triangulation(source) -> Triangulation:
    """Read a triangulation from a path, a JSON string, or a bundled fixture name."""
    if isinstance(source, dict):
        return Triangulation.from_json(source)
    text = str(source)
    if text.lstrip().startswith("{"):
        return Triangulation.from_json(json.loads(text))
    path = Path(text)
    if path.exists():
        return Triangulation.from_json(json.loads(path.read_text()))
    name = path.stem if path.suffix == ".json" else text
    bundled = resources.files("sl3lam.fixtures") / f"{name}.json"
    if bundled.is_file():
        return Triangulation.from_json(json.loads(bundled.read_text()))
    raise FileNotFoundError(f"no triangulation at {text!r}")


def fixture_names() -> list:
    return sorted(p.name[:-5] for p in resources.files("sl3lam.fixtures").iterdir()
                  if p.name.endswith(".json"))


# ------------------------------------------------------------ validation

def _components(n: int, links) -> int:
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for a, b in links:
        parent[find(a)] = find(b)
    return len({find(a) for a in range(n)})


def validate(tri: Triangulation) -> list:
    """Return a list of human-readable violations; empty means valid."""
    issues = []
    point_ids = [p.id for p in tri.marked_points]
    edge_ids = [e.id for e in tri.edges]
    if len(set(point_ids)) != len(point_ids):
        issues.append("duplicate marked point ids")
    if len(set(edge_ids)) != len(edge_ids):
        issues.append("duplicate edge ids")
    kinds = {p.id: p.kind for p in tri.marked_points}
    for p in tri.marked_points:
        if p.kind not in (PUNCTURE, SPECIAL):
            issues.append(f"marked point {p.id}: unknown kind {p.kind!r}")
    edges = {}
    for e in tri.edges:
        edges[e.id] = e
        if e.kind not in (INTERIOR, BOUNDARY):
            issues.append(f"edge {e.id}: unknown kind {e.kind!r}")
        if len(e.ends) != 2 or any(x not in kinds for x in e.ends):
            issues.append(f"edge {e.id}: endpoints must be two known marked points")
    if issues:
        return issues
    if not tri.triangles:
        issues.append("no triangles")
        return issues

    for t, tri_ in enumerate(tri.triangles):
        if len(tri_.slots) != 3:
            issues.append(f"triangle {t}: needs exactly three slots")
            continue
        if any(s.edge not in edges for s in tri_.slots):
            issues.append(f"triangle {t}: unknown edge")
            continue
        if len({s.edge for s in tri_.slots}) < 3:
            issues.append(f"triangle {t}: self-folded")
        for s in range(3):
            end = tri.slot_ends(tri_.slots[s])[1]
            start = tri.slot_ends(tri_.slots[(s + 1) % 3])[0]
            if end != start:
                issues.append(f"triangle {t}: sides {s} and {(s + 1) % 3} do not meet")
    if issues:
        return issues

    for e in tri.edges:
        slots = tri.slots_of(e.id)
        want = 2 if e.kind == INTERIOR else 1
        if len(slots) != want:
            issues.append(f"{e.kind} edge {e.id} borne by {len(slots)} slots, expected {want}")
        elif want == 2:
            (t0, s0), (t1, s1) = slots
            if tri.triangles[t0].slots[s0].forward == tri.triangles[t1].slots[s1].forward:
                issues.append(f"edge {e.id}: both sides run the same way (orientation clash)")
        if e.kind == BOUNDARY and any(kinds[x] != SPECIAL for x in e.ends):
            issues.append(f"boundary edge {e.id} must join special points")

    for p in tri.marked_points:
        boundary_ends = sum(e.ends.count(p.id) for e in tri.edges if e.kind == BOUNDARY)
        all_ends = sum(e.ends.count(p.id) for e in tri.edges)
        if all_ends == 0:
            issues.append(f"marked point {p.id} is not a vertex of the triangulation")
        if p.kind == SPECIAL and boundary_ends != 2:
            issues.append(f"special point {p.id} lies on {boundary_ends} boundary edge ends, expected 2")

    links = []
    for e in tri.edges:
        slots = tri.slots_of(e.id)
        links += [(slots[0][0], t) for t, _ in slots[1:]]
    if _components(len(tri.triangles), links) != 1:
        issues.append("surface is not connected")

    c = tri.counts()
    if (len(tri.specials()) == 1 and len(tri.punctures()) == 1
            and c["chi"] + len(tri.punctures()) == 1):
        issues.append("once-punctured monogon is excluded")
    for key, expected in c["expected"].items():
        if c[key] != expected:
            issues.append(f"count {key} = {c[key]}, Euler characteristic formula gives {expected}")

    if tri.edge_labels is not None:
        ids = [v for pair in tri.edge_labels.values() for v in pair] + list(tri.face_labels or ())
        if (set(tri.edge_labels) != set(edges) or len(tri.face_labels or ()) != len(tri.triangles)
                or sorted(ids) != list(range(c["vertices"]))):
            issues.append("vertex labels do not partition the vertex set")
    return issues


# ------------------------------------------------------------ quiver

@dataclass(frozen=True)
class QuiverLayout:
    face_vertex: tuple          # triangle index -> vertex id
    edge_vertex: dict           # (edge id, 1|2) -> vertex id
    frozen: frozenset

    @property
    def size(self) -> int:
        return len(self.face_vertex) + len(self.edge_vertex)

    def near(self, tri: Triangulation, slot: Slot, at_start: bool) -> int:
        """Vertex of the slot's edge lying near its start (or end) corner."""
        first = slot.forward == at_start
        return self.edge_vertex[(slot.edge, 1 if first else 2)]

    def roles(self) -> dict:
        """vertex id -> role tuple, ("face", t) or ("edge", id, s)."""
        out = {v: ("face", t) for t, v in enumerate(self.face_vertex)}
        out.update({v: ("edge", e, s) for (e, s), v in self.edge_vertex.items()})
        return out


def make_layout(tri: Triangulation) -> QuiverLayout:
    if tri.edge_labels is not None:
        edge_vertex = {}
        for e in tri.edges:
            i1, i2 = tri.edge_labels[e.id]
            edge_vertex[(e.id, 1)] = i1
            edge_vertex[(e.id, 2)] = i2
        faces = tuple(tri.face_labels)
    else:
        edge_vertex = {}
        for n, e in enumerate(tri.edges):
            edge_vertex[(e.id, 1)] = 2 * n
            edge_vertex[(e.id, 2)] = 2 * n + 1
        base = 2 * len(tri.edges)
        faces = tuple(base + t for t in range(len(tri.triangles)))
    frozen = frozenset(edge_vertex[(e.id, s)] for e in tri.edges if e.kind == BOUNDARY for s in (1, 2))
    return QuiverLayout(faces, edge_vertex, frozen)


def build_quiver(tri: Triangulation):
    """Amalgamate the per-triangle quivers.  Returns (seed, layout)."""
    issues = validate(tri)
    if issues:
        raise InvalidTriangulation("; ".join(issues))
    layout = make_layout(tri)
    n = layout.size
    m = [[0] * n for _ in range(n)]

    def add(i, j, twice):
        m[i][j] += twice
        m[j][i] -= twice

    for t, tri_ in enumerate(tri.triangles):
        g = layout.face_vertex[t]
        for s in range(3):
            incoming = tri_.slots[s - 1]
            outgoing = tri_.slots[s]
            a = layout.near(tri, incoming, at_start=False)
            b = layout.near(tri, outgoing, at_start=True)
            add(a, b, 2)
            add(b, g, 2)
            add(g, a, 2)
            # half arrow along the side, from its far end back to its start
            add(layout.near(tri, outgoing, at_start=False), b, 1)
    return ExchangeSeed(m, layout.frozen), layout


# ------------------------------------------------------------ accessors

class CoordinateView:
    """Role-indexed read access to a point laid out on a triangulation."""

    def __init__(self, tri: Triangulation, layout: QuiverLayout, point: TropicalPoint):
        if len(point) != layout.size:
            raise RoleNotFound(f"point has {len(point)} coordinates, layout has {layout.size}")
        self.tri = tri
        self.layout = layout
        self.point = point

    def face(self, t: int) -> Fraction:
        if not 0 <= t < len(self.layout.face_vertex):
            raise RoleNotFound(f"no triangle {t}")
        return self.point[self.layout.face_vertex[t]]

    def edge(self, eid: str, s: int, reverse: bool = False) -> Fraction:
        """x_{E,s} relative to the stored orientation, or the reversed one."""
        if (eid, s) not in self.layout.edge_vertex:
            raise RoleNotFound(f"no edge role ({eid}, {s})")
        if reverse:
            s = 3 - s
        return self.point[self.layout.edge_vertex[(eid, s)]]


def coordinate_accessors(tri: Triangulation, layout: QuiverLayout, point: TropicalPoint) -> CoordinateView:
    return CoordinateView(tri, layout, point)


# ------------------------------------------------------------ flips

def _rotate_to(slots: tuple, position: int) -> tuple:
    """Rotate so the slot at `position` sits in the middle."""
    k = (position - 1) % 3
    return slots[k:] + slots[:k]


@dataclass(frozen=True)
class FlipFrame:
    """Local picture of a flip.  Square corners R, T, L, B; the diagonal runs
    B -> T with the right triangle (R, T, B) and the left triangle (L, B, T)."""

    right: int
    left: int
    right_slots: tuple      # (R->T, T->B, B->R)
    left_slots: tuple       # (L->B, B->T, T->L)
    labels: dict            # local labels 1..4 -> vertex ids


def flip_frame(tri: Triangulation, eid: str, layout: QuiverLayout | None = None) -> FlipFrame:
    edge = tri.edge(eid)
    if edge.kind != INTERIOR:
        raise BoundaryEdge(f"edge {eid} is on the boundary")
    (t0, s0), (t1, s1) = tri.slots_of(eid)
    if t0 == t1:
        raise SelfGluedQuadrilateral(f"both sides of edge {eid} lie in triangle {t0}")
    layout = layout or make_layout(tri)
    right_slots = _rotate_to(tri.triangles[t0].slots, s0)
    left_slots = _rotate_to(tri.triangles[t1].slots, s1)
    diag_right = right_slots[1]
    labels = {
        1: layout.near(tri, diag_right, at_start=True),   # on the diagonal near T
        3: layout.near(tri, diag_right, at_start=False),  # near B
        4: layout.face_vertex[t0],
        2: layout.face_vertex[t1],
    }
    return FlipFrame(t0, t1, right_slots, left_slots, labels)


UPPER_ROUTE = (1, 3, 4, 2)
LOWER_ROUTE = (3, 1, 2, 4)


def flip_route(tri: Triangulation, eid: str, route: Sequence[int] = UPPER_ROUTE) -> tuple:
    frame = flip_frame(tri, eid)
    return tuple(Mutate(frame.labels[k]) for k in route)


def flip(tri: Triangulation, eid: str):
    """Flip an interior edge.

    Returns (flipped triangulation, mutation path, relabeling) where the
    relabeling sigma (old vertex id -> new vertex id) makes the mutated seed
    coincide with the quiver of the flipped triangulation.
    """
    layout = make_layout(tri)
    frame = flip_frame(tri, eid, layout)
    rt, _, br = frame.right_slots
    lb, _, tl = frame.left_slots
    R = tri.slot_ends(rt)[0]
    T = tri.slot_ends(rt)[1]
    L = tri.slot_ends(lb)[0]
    top = Triangle((Slot(eid, True), rt, tl))       # L -> R -> T
    bottom = Triangle((lb, br, Slot(eid, False)))   # L -> B -> R
    for new in (top, bottom):
        if len({s.edge for s in new.slots}) < 3:
            raise SelfFoldedFlip(f"flipping {eid} would create a self-folded triangle")
    edges = tuple(Edge(eid, (L, R), INTERIOR) if e.id == eid else e for e in tri.edges)
    triangles = list(tri.triangles)
    triangles[frame.right] = top
    triangles[frame.left] = bottom

    edge_labels = face_labels = None
    if tri.edge_labels is not None:
        edge_labels = dict(tri.edge_labels)
        face_labels = tri.face_labels
    flipped = Triangulation(tri.marked_points, edges, tuple(triangles), edge_labels, face_labels)
    new_layout = make_layout(flipped)
    new_labels = {
        1: new_layout.face_vertex[frame.right],
        3: new_layout.face_vertex[frame.left],
        2: new_layout.edge_vertex[(eid, 1)],   # near L
        4: new_layout.edge_vertex[(eid, 2)],   # near R
    }
    sigma = list(range(layout.size))
    for k in (1, 2, 3, 4):
        sigma[frame.labels[k]] = new_labels[k]
    path = tuple(Mutate(frame.labels[k]) for k in UPPER_ROUTE)
    return flipped, path, tuple(sigma)


def _cyclic_key(slots: tuple) -> tuple:
    """Rotation-invariant key of a triangle's slot cycle."""
    items = [(s.edge, s.forward) for s in slots]
    return min(tuple(items[k:] + items[:k]) for k in range(len(items)))


def vertex_isomorphism(source: Triangulation, target: Triangulation):
    """Vertex map source -> target when both describe the same triangulation.

    The two may differ in triangle order, the starting side of each
    triangle, and stored edge directions.  Edge and marked point ids must
    agree.  Returns a tuple sigma (source id -> target id) or None.
    """
    if ({e.id for e in source.edges} != {e.id for e in target.edges}
            or len(source.triangles) != len(target.triangles)):
        return None
    src_layout, tgt_layout = make_layout(source), make_layout(target)
    edge_ids = [e.id for e in source.edges]
    for mask in range(2 ** len(edge_ids)):
        reverse = {eid for n, eid in enumerate(edge_ids) if mask >> n & 1}
        ok = True
        for eid in edge_ids:
            a, b = source.edge(eid).ends
            want = (b, a) if eid in reverse else (a, b)
            if target.edge(eid).ends != want:
                ok = False
                break
        if not ok:
            continue
        keys = {}
        for t, tri_ in enumerate(target.triangles):
            keys.setdefault(_cyclic_key(tri_.slots), []).append(t)
        faces = {}
        for t, tri_ in enumerate(source.triangles):
            moved = tuple(Slot(s.edge, s.forward != (s.edge in reverse)) for s in tri_.slots)
            bucket = keys.get(_cyclic_key(moved))
            if not bucket:
                ok = False
                break
            faces[t] = bucket.pop()
        if not ok:
            continue
        sigma = [0] * src_layout.size
        for t, v in enumerate(src_layout.face_vertex):
            sigma[v] = tgt_layout.face_vertex[faces[t]]
        for (eid, s), v in src_layout.edge_vertex.items():
            sigma[v] = tgt_layout.edge_vertex[(eid, 3 - s if eid in reverse else s)]
        return tuple(sigma)
    return None
