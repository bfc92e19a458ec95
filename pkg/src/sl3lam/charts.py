"""Local coordinate charts around a puncture or a special point.

A puncture chart needs the star of the puncture to be a once-punctured
digon: two edges at the puncture and two triangles around it.  Local labels:

    1, 3   edge up to the first neighbour (1 near the puncture)
    2, 5   edge down to the second neighbour (2 near the puncture)
    4, 6   faces of the right and left triangles
    7, 8   far side of the right triangle (7 near the upper neighbour)
    10, 9  far side of the left triangle (10 near the upper neighbour)

A special-point chart applies when the special point m lies in a single
triangle.  Labels: 1, 3 on the side leaving m (1 near m), 2, 5 on the side
entering m (2 near m), 4 the face, 6, 7 on the opposite side (6 next to
the far end of 1-3).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ChartMismatch, MissingChart
from .exchange import ExchangeSeed, TropicalPoint
from .triangulation import QuiverLayout, Triangulation, _rotate_to, build_quiver

PUNCTURE_ARROWS = frozenset({
    (3, 4), (4, 5), (5, 6), (6, 3), (2, 4), (4, 1), (1, 6), (6, 2),
    (4, 7), (7, 3), (5, 8), (8, 4), (3, 10), (10, 6), (6, 9), (9, 5),
})

SPECIAL_ARROWS = frozenset({
    (2, 1), (1, 4), (4, 2), (3, 6), (6, 4), (4, 3), (7, 5), (5, 4), (4, 7),
})

# the rotation by π of the punctured digon
PI_ROTATION = {1: 2, 2: 1, 3: 5, 5: 3, 4: 6, 6: 4, 7: 9, 9: 7, 8: 10, 10: 8}


@dataclass(frozen=True)
class PunctureChart:
    tri: Triangulation
    seed: ExchangeSeed
    layout: QuiverLayout
    puncture: str
    local: dict        # label 1..10 -> global vertex id

    def __getitem__(self, label: int) -> int:
        return self.local[label]

    def check_point(self, p: TropicalPoint, flavor: str):
        from .errors import FlavorMismatch
        if p.flavor != flavor:
            raise FlavorMismatch(f"expected an {flavor}-point, got {p.flavor}")
        if len(p) != self.seed.size:
            raise ChartMismatch(f"point has {len(p)} coordinates, chart seed has {self.seed.size}")

    def check_rows(self, rows: list):
        if len(rows) != self.seed.size:
            raise ChartMismatch(f"{len(rows)} rows for a chart of size {self.seed.size}")


@dataclass(frozen=True)
class SpecialPointChart:
    tri: Triangulation
    seed: ExchangeSeed
    layout: QuiverLayout
    point: str
    local: dict        # label 1..7 -> global vertex id

    def __getitem__(self, label: int) -> int:
        return self.local[label]


def _check_pattern(seed: ExchangeSeed, local: dict, arrows: frozenset, core: range):
    inverse = {v: k for k, v in local.items()}
    if len(inverse) != len(local):
        raise MissingChart("local labels are not distinct vertices")
    for label in core:
        i = local[label]
        if i in seed.frozen:
            raise MissingChart(f"local vertex {label} is frozen")
        for j in range(seed.size):
            e = seed.eps(i, j)
            other = inverse.get(j)
            if other is None:
                if e:
                    raise MissingChart(f"local vertex {label} has an arrow leaving the chart")
                continue
            want = 1 if (label, other) in arrows else -1 if (other, label) in arrows else 0
            if e != want:
                raise MissingChart(f"arrow pattern differs at labels ({label}, {other})")


def _quiver(tri, seed, layout):
    if seed is None or layout is None:
        seed, layout = build_quiver(tri)
    return seed, layout


def puncture_chart(tri: Triangulation, puncture: str, seed: ExchangeSeed | None = None,
                   layout: QuiverLayout | None = None, flip_side: bool = False) -> PunctureChart:
    """Chart at a puncture; `flip_side` picks the other triangle as the right one."""
    seed, layout = _quiver(tri, seed, layout)
    try:
        kind = tri.point(puncture).kind
    except KeyError:
        raise ChartMismatch(f"no marked point {puncture!r}") from None
    if kind != "puncture":
        raise ChartMismatch(f"{puncture!r} is not a puncture")
    corners = tri.corners_at(puncture)
    if len(corners) != 2 or corners[0][0] == corners[1][0]:
        raise MissingChart(f"puncture {puncture!r} does not sit in two distinct triangles")
    if flip_side:
        corners = corners[::-1]
    (tr, sr), (tl, sl) = corners
    third, upper, lower = _rotate_to(tri.triangles[tr].slots, sr - 1)
    third_l, lower_l, upper_l = _rotate_to(tri.triangles[tl].slots, sl - 1)
    if upper_l.edge != upper.edge or lower_l.edge != lower.edge or upper.edge == lower.edge:
        raise MissingChart(f"star of {puncture!r} is not a punctured digon")
    near = layout.near
    local = {
        1: near(tri, upper, at_start=False), 3: near(tri, upper, at_start=True),
        2: near(tri, lower, at_start=True), 5: near(tri, lower, at_start=False),
        4: layout.face_vertex[tr], 6: layout.face_vertex[tl],
        7: near(tri, third, at_start=False), 8: near(tri, third, at_start=True),
        10: near(tri, third_l, at_start=True), 9: near(tri, third_l, at_start=False),
    }
    _check_pattern(seed, local, PUNCTURE_ARROWS, range(1, 7))
    return PunctureChart(tri, seed, layout, puncture, local)


def special_point_chart(tri: Triangulation, point: str, seed: ExchangeSeed | None = None,
                        layout: QuiverLayout | None = None) -> SpecialPointChart:
    seed, layout = _quiver(tri, seed, layout)
    try:
        kind = tri.point(point).kind
    except KeyError:
        raise ChartMismatch(f"no marked point {point!r}") from None
    if kind != "special":
        raise ChartMismatch(f"{point!r} is not a special point")
    corners = tri.corners_at(point)
    if len(corners) != 1:
        raise MissingChart(f"special point {point!r} lies in {len(corners)} triangle corners, expected 1")
    t, s = corners[0]
    opp, into, out = _rotate_to(tri.triangles[t].slots, s - 1)
    near = layout.near
    local = {
        1: near(tri, out, at_start=True), 3: near(tri, out, at_start=False),
        2: near(tri, into, at_start=False), 5: near(tri, into, at_start=True),
        4: layout.face_vertex[t],
        6: near(tri, opp, at_start=True), 7: near(tri, opp, at_start=False),
    }
    _check_pattern(seed, local, SPECIAL_ARROWS, (4,))
    return SpecialPointChart(tri, seed, layout, point, local)


def all_puncture_charts(tri: Triangulation, seed=None, layout=None) -> dict:
    seed, layout = _quiver(tri, seed, layout)
    return {p: puncture_chart(tri, p, seed, layout) for p in tri.punctures()}


def parse_chart_spec(spec: str):
    """"NAME[:point]" -> (fixture or path, marked point id or None)."""
    name, _, point = spec.partition(":")
    return name, (point or None)
