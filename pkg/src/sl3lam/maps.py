"""Piecewise-linear maps on tropical points: Casimir, ensemble, Dynkin, Weyl.

Every map has a `*_rows` form working on per-vertex rows (scalars or numpy
sample arrays, see `exchange`) and a point form wrapping it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .charts import PunctureChart, SpecialPointChart
from .errors import ChartMismatch, FlavorMismatch, MissingChart
from .exchange import (ExchangeSeed, Mutate, Permute, TropicalPoint, as_rational, pos,
                       seed_after, vmax, vmin)
from .lattices import Coweight, is_antidominant, is_dominant
from .triangulation import QuiverLayout, Triangulation


def _check(p: TropicalPoint, flavor: str, size: int):
    if p.flavor != flavor:
        raise FlavorMismatch(f"expected an {flavor}-point, got {p.flavor}")
    if len(p) != size:
        raise ChartMismatch(f"point has {len(p)} coordinates, expected {size}")


# ------------------------------------------------------------ Casimir

def casimir_rows(rows: list, ch: PunctureChart) -> tuple:
    x = {k: rows[v] for k, v in ch.local.items()}
    return x[3] + x[4] + x[5] + x[6], x[1] + x[2]


def casimir(x: TropicalPoint, ch: PunctureChart) -> Coweight:
    _check(x, "X", ch.seed.size)
    return Coweight(*casimir_rows(list(x.coords), ch))


# ------------------------------------------------------------ ensemble map

def ensemble_rows(rows: list, seed: ExchangeSeed) -> list:
    """x_i = Σ_j ε_ij a_j on unfrozen i; frozen outputs are set to zero."""
    out = []
    for i, row in enumerate(seed.matrix2):
        if i in seed.frozen:
            out.append(0 * rows[i])
            continue
        acc = 0 * rows[i]
        for j, m in enumerate(row):
            if m:
                acc = acc + (m // 2) * rows[j]
        out.append(acc)
    return out


def ensemble_tropical(a: TropicalPoint, seed: ExchangeSeed) -> TropicalPoint:
    _check(a, "A", seed.size)
    return TropicalPoint("X", ensemble_rows(list(a.coords), seed))


# ------------------------------------------------------------ Dynkin involution

def dynkin_rows(rows: list, tri: Triangulation, layout: QuiverLayout) -> list:
    """x_T -> -x_T and the edge swap with positive-part corrections.

    The triangle running along E in its stored direction lies on E's left.
    A boundary edge has one triangle; the missing side contributes nothing.
    """
    if len(rows) != layout.size:
        raise ChartMismatch(f"{len(rows)} coordinates for a layout of size {layout.size}")
    out = list(rows)
    for t, v in enumerate(layout.face_vertex):
        out[v] = -rows[v]
    for e in tri.edges:
        left = right = None
        for t, s in tri.slots_of(e.id):
            if tri.triangles[t].slots[s].forward:
                left = rows[layout.face_vertex[t]]
            else:
                right = rows[layout.face_vertex[t]]
        i1 = layout.edge_vertex[(e.id, 1)]
        i2 = layout.edge_vertex[(e.id, 2)]
        new1 = rows[i2]
        new2 = rows[i1]
        if left is not None:
            new1 = new1 + pos(left)
            new2 = new2 - pos(-left)
        if right is not None:
            new1 = new1 - pos(-right)
            new2 = new2 + pos(right)
        out[i1], out[i2] = new1, new2
    return out


def dynkin_pl(x: TropicalPoint, tri: Triangulation, layout: QuiverLayout) -> TropicalPoint:
    _check(x, "X", layout.size)
    return TropicalPoint("X", dynkin_rows(list(x.coords), tri, layout))


# ------------------------------------------------------------ Weyl actions

def r2_rows(rows: list, ch: PunctureChart) -> list:
    ch.check_rows(rows)
    v = ch.local
    x1, x2, x4, x6 = rows[v[1]], rows[v[2]], rows[v[4]], rows[v[6]]
    out = list(rows)
    out[v[1]] = -x2
    out[v[2]] = -x1
    out[v[4]] = x4 - pos(-x1) + pos(x2)
    out[v[6]] = x6 + pos(x1) - pos(-x2)
    return out


def r1_rows(rows: list, ch: PunctureChart) -> list:
    """Conjugate of the r2 formula by the Dynkin involution."""
    rows = dynkin_rows(rows, ch.tri, ch.layout)
    rows = r2_rows(rows, ch)
    return dynkin_rows(rows, ch.tri, ch.layout)


def weyl_rows(s: int, rows: list, ch: PunctureChart) -> list:
    if s == 1:
        return r1_rows(rows, ch)
    if s == 2:
        return r2_rows(rows, ch)
    raise ValueError(f"Weyl generator must be 1 or 2, got {s!r}")


def weyl_pl_r2(x: TropicalPoint, ch: PunctureChart) -> TropicalPoint:
    ch.check_point(x, "X")
    return TropicalPoint("X", r2_rows(list(x.coords), ch))


def weyl_pl_r1(x: TropicalPoint, ch: PunctureChart) -> TropicalPoint:
    ch.check_point(x, "X")
    return TropicalPoint("X", r1_rows(list(x.coords), ch))


def weyl_word_rows(word, rows: list, ch: PunctureChart) -> list:
    """Apply a word as a composition (rightmost generator first)."""
    for s in reversed(tuple(word)):
        rows = weyl_rows(s, rows, ch)
    return rows


# ------------------------------------------------------------ mutation loops

def _swap(ch: PunctureChart, a: int, b: int) -> Permute:
    return Permute.swap(ch.seed.size, ch.local[a], ch.local[b])


def _mut(ch: PunctureChart, *labels) -> list:
    return [Mutate(ch.local[k]) for k in labels]


def weyl_loop_forms(s: int, ch: PunctureChart) -> dict:
    """Equivalent presentations of the loop realizing r_s; steps run left to right.

    "palindrome" mutates out and back around the closing swap; "closing"
    ends with the swap; "leading" starts with it.
    """
    if s == 2:
        return {
            "palindrome": tuple(_mut(ch, 1) + [_swap(ch, 1, 2)] + _mut(ch, 1)),
            "closing": tuple(_mut(ch, 1, 2) + [_swap(ch, 1, 2)]),
            "leading": tuple([_swap(ch, 1, 2)] + _mut(ch, 2, 1)),
        }
    if s == 1:
        return {
            "palindrome": tuple(_mut(ch, 3, 4, 5) + [_swap(ch, 5, 6)] + _mut(ch, 5, 4, 3)),
            "closing": tuple(_mut(ch, 3, 4, 5, 6, 4, 3) + [_swap(ch, 5, 6)]),
            "leading": tuple([_swap(ch, 5, 6)] + _mut(ch, 3, 4, 6, 5, 4, 3)),
        }
    raise ValueError(f"Weyl generator must be 1 or 2, got {s!r}")


def weyl_loop(s: int, ch: PunctureChart) -> tuple:
    return weyl_loop_forms(s, ch)["palindrome"]


def reordered_loops(s: int, ch: PunctureChart) -> dict:
    """Palindromic loops starting elsewhere on the mutated cycle.

    For s = 1 the cycle 3 -> 4 -> 5 -> 6 is walked from each start in both
    directions; for s = 2 the start is 1 or 2.
    """
    if s == 2:
        return {(a,): tuple(_mut(ch, a) + [_swap(ch, 1, 2)] + _mut(ch, a)) for a in (1, 2)}
    cycle = (3, 4, 5, 6)
    out = {}
    for step in (1, -1):
        for start in range(4):
            a, b, c, d = (cycle[(start + step * n) % 4] for n in range(4))
            out[(a, b, c, d)] = tuple(_mut(ch, a, b, c) + [_swap(ch, c, d)] + _mut(ch, c, b, a))
    return out


def loop_closes(path, seed: ExchangeSeed) -> bool:
    return seed_after(seed, path) == seed


# ------------------------------------------------------------ A side

def u_rows(rows: list, ch: PunctureChart, s: int):
    a = {k: rows[v] for k, v in ch.local.items()}
    if s == 1:
        terms = [a[3] + a[4] - a[1] - a[7], a[4] + a[5] - a[2] - a[8],
                 a[5] + a[6] - a[2] - a[9], a[6] + a[3] - a[1] - a[10]]
    elif s == 2:
        terms = [a[1] + a[2] - a[4], a[1] + a[2] - a[6]]
    else:
        raise ValueError(f"Weyl generator must be 1 or 2, got {s!r}")
    out = terms[0]
    for t in terms[1:]:
        out = vmin(out, t)
    return out


def potential_u(a: TropicalPoint, ch: PunctureChart, s: int) -> Fraction:
    ch.check_point(a, "A")
    return u_rows(list(a.coords), ch, s)


def weyl_a_rows(rows: list, ch: PunctureChart, s: int) -> list:
    u = u_rows(rows, ch, s)
    out = list(rows)
    for k in ((3, 4, 5, 6) if s == 1 else (1, 2)):
        out[ch.local[k]] = rows[ch.local[k]] - u
    return out


def weyl_a_action(a: TropicalPoint, ch: PunctureChart, s: int) -> TropicalPoint:
    ch.check_point(a, "A")
    return TropicalPoint("A", weyl_a_rows(list(a.coords), ch, s))


PERIPHERAL = {1: Fraction(1, 3), 2: Fraction(1, 3), 3: Fraction(2, 3), 4: Fraction(2, 3),
              5: Fraction(2, 3), 6: Fraction(2, 3)}


def peripheral_vector(ch: PunctureChart) -> TropicalPoint:
    """A-point with u = (1, 0): ⅓ on the inner edge ends, ⅔ on the outer ring."""
    return TropicalPoint.from_sparse("A", ch.seed.size, {ch.local[k]: v for k, v in PERIPHERAL.items()})


# ------------------------------------------------------------ boundary data

def w_m_rows(rows: list, ch: SpecialPointChart):
    x = {k: rows[v] for k, v in ch.local.items()}
    return vmax(x[1], x[3] + pos(x[4]))


def w_m_tropical(x: TropicalPoint, ch: SpecialPointChart) -> Fraction:
    _check(x, "X", ch.seed.size)
    return w_m_rows(list(x.coords), ch)


def pinning_at(x: TropicalPoint, ch: SpecialPointChart) -> Coweight:
    """ν = ν⁺ϖ₁∨ + ν⁻ϖ₂∨ with ν⁺ = x₁ and ν⁻ = x₃ + [x₄]_+ in chart labels."""
    _check(x, "X", ch.seed.size)
    v = ch.local
    return Coweight(x[v[1]], x[v[3]] + pos(x[v[4]]))


@dataclass(frozen=True)
class Pinning:
    values: dict       # boundary edge id -> Coweight

    @classmethod
    def from_json(cls, data: dict) -> "Pinning":
        return cls({k: Coweight.from_json(v) for k, v in data.items()})


def is_in_Lp0(x: TropicalPoint, charts, pinning: Pinning, tri: Triangulation | None = None) -> bool:
    """Dominant Casimir at every puncture and antidominant pinning on every interval."""
    charts = list(charts.values()) if isinstance(charts, dict) else list(charts)
    if tri is not None:
        covered = {ch.puncture for ch in charts}
        missing = [p for p in tri.punctures() if p not in covered]
        if missing:
            raise MissingChart(f"no chart at punctures {missing}")
        absent = [e for e in tri.boundary_edges() if e not in pinning.values]
        if absent:
            raise MissingChart(f"no pinning on boundary intervals {absent}")
    return (all(is_dominant(casimir(x, ch)) for ch in charts)
            and all(is_antidominant(nu) for nu in pinning.values.values()))


def coweight_from(value) -> Coweight:
    if isinstance(value, Coweight):
        return value
    return Coweight(as_rational(value[0]), as_rational(value[1]))
