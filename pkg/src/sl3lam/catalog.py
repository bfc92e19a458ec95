"""Elementary braids on the once-punctured digon, and lamination-cluster tracking.

Catalog coordinates use the puncture-chart labels 1..10 of the bundled
"dstar" fixture, whose vertex numbering coincides with those labels.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import Sequence

from .charts import PI_ROTATION, PunctureChart, puncture_chart
from .exchange import (TropicalPoint, apply_path, as_rational, format_rational, invert_path,
                       seed_after)
from .lattices import Coweight, Weight, as_weight, dynkin_star
from .maps import casimir, dynkin_pl
from .triangulation import build_quiver, load_triangulation

UNFROZEN_LABELS = (1, 2, 3, 4, 5, 6)


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    coords: dict          # label -> Fraction, zero entries omitted
    theta: Coweight
    position: str = ""

    def to_json(self) -> dict:
        return {"name": self.name,
                "coords": {str(k): format_rational(v) for k, v in sorted(self.coords.items())},
                "theta": self.theta.to_json(),
                "position": self.position}


@lru_cache(maxsize=1)
def dstar_chart() -> PunctureChart:
    tri = load_triangulation("dstar")
    seed, layout = build_quiver(tri)
    return puncture_chart(tri, "p", seed, layout)


def entry_point(coords: dict, ch: PunctureChart | None = None) -> TropicalPoint:
    ch = ch or dstar_chart()
    return TropicalPoint.from_sparse("X", ch.seed.size, {ch.local[k]: v for k, v in coords.items()})


def point_coords(p: TropicalPoint, ch: PunctureChart, labels=UNFROZEN_LABELS) -> dict:
    out = {}
    for k in labels:
        v = p[ch.local[k]]
        if v:
            out[k] = v
    return out


def _sparse(coords: dict) -> dict:
    return {int(k): as_rational(v) for k, v in coords.items() if as_rational(v)}


def catalog() -> list:
    """The eleven elementary braids, re-checked against the Casimir formula on load."""
    raw = json.loads((resources.files("sl3lam.data") / "elementary_braids.json").read_text())
    ch = dstar_chart()
    entries = []
    for item in raw:
        entry = CatalogEntry(item["name"], _sparse(item["coords"]),
                             Coweight.from_json(item["theta"]), item.get("position", ""))
        got = casimir(entry_point(entry.coords, ch), ch)
        if got != entry.theta:
            raise ValueError(f"catalog entry {entry.name}: coordinates give θ = {got}, table says {entry.theta}")
        entries.append(entry)
    return entries


def catalog_entry(name: str) -> CatalogEntry:
    for entry in catalog():
        if entry.name == name:
            return entry
    raise KeyError(name)


def orientation_reverse(entry: CatalogEntry) -> CatalogEntry:
    ch = dstar_chart()
    flipped = dynkin_pl(entry_point(entry.coords, ch), ch.tri, ch.layout)
    return CatalogEntry(entry.name + "*", point_coords(flipped, ch), dynkin_star(entry.theta), entry.position)


def pi_rotation(entry: CatalogEntry) -> CatalogEntry:
    coords = {PI_ROTATION[k]: v for k, v in entry.coords.items()}
    return CatalogEntry(entry.name + "^", coords, entry.theta, entry.position)


def sign_coherence(entries: Sequence[CatalogEntry]) -> bool:
    """True iff no coordinate takes opposite signs on two entries."""
    labels = {k for e in entries for k in e.coords}
    for k in labels:
        signs = {e.coords.get(k, 0) > 0 for e in entries if e.coords.get(k, 0)}
        if len(signs) > 1:
            return False
    return True


# ------------------------------------------------------------ tracking

@dataclass(frozen=True)
class Station:
    prefix: tuple          # steps applied so far
    points: tuple          # δ-points pulled back to the base chart, indexed by current vertex
    theta_star: tuple      # starred Casimir value of each point

    def p_cluster(self, vertices: Sequence[int]) -> set:
        """Distinct θ* values over the given current-chart vertices, as weights."""
        return {as_weight(self.theta_star[v]) for v in vertices}


@dataclass(frozen=True)
class ClusterTrack:
    chart: PunctureChart
    path: tuple
    stations: tuple


def track_p_cluster(ch: PunctureChart, path: Sequence) -> ClusterTrack:
    path = tuple(path)
    n = ch.seed.size
    stations = []
    for k in range(len(path) + 1):
        prefix = path[:k]
        current = seed_after(ch.seed, prefix)
        back = invert_path(prefix)
        points = []
        for j in range(n):
            base, _ = apply_path(TropicalPoint.basis("X", n, j), current, back)
            points.append(base)
        thetas = tuple(dynkin_star(casimir(p, ch)) for p in points)
        stations.append(Station(prefix, tuple(points), thetas))
    return ClusterTrack(ch, path, tuple(stations))


def weight_set_from_z3(vectors) -> set:
    return {Weight.from_z3(v) for v in vectors}
