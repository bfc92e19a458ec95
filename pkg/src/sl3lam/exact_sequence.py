"""Kernel and annihilator checks for the ensemble map, with exact ranks."""

from __future__ import annotations

import sympy

from .charts import puncture_chart, special_point_chart
from .errors import InvalidTriangulation, MissingChart
from .exchange import ExchangeSeed
from .triangulation import QuiverLayout, Triangulation, build_quiver, validate


def ring_vectors(tri: Triangulation, layout: QuiverLayout, point: str) -> tuple:
    """(α₁, α₂) at a marked point, read off any triangulation.

    α₂ sums the edge vertices next to the point, one per edge end;
    α₁ sums the far vertex of each such edge plus the face of every corner
    at the point.
    """
    near = [0] * layout.size
    far = [0] * layout.size
    for e in tri.edges:
        for idx, end in enumerate(e.ends):
            if end == point:
                near[layout.edge_vertex[(e.id, idx + 1)]] += 1
                far[layout.edge_vertex[(e.id, 2 - idx)]] += 1
    for t, _ in tri.corners_at(point):
        far[layout.face_vertex[t]] += 1
    return tuple(far), tuple(near)


def chart_vectors(size: int, local: dict, labels_first: tuple, labels_second: tuple) -> tuple:
    def vec(labels):
        v = [0] * size
        for k in labels:
            v[local[k]] += 1
        return tuple(v)
    return vec(labels_first), vec(labels_second)


def _eps(seed: ExchangeSeed) -> sympy.Matrix:
    return sympy.Matrix(seed.matrix2) / 2


def unfrozen_rank(seed: ExchangeSeed) -> int:
    if not seed.unfrozen:
        return 0
    return _eps(seed).extract(list(seed.unfrozen), list(range(seed.size))).rank()


def kernel_rank(seed: ExchangeSeed) -> int:
    """dim ker p*, where p*(e_i) = Σ_j ε_ij f_j for unfrozen i."""
    return len(seed.unfrozen) - unfrozen_rank(seed)


def annihilator_rank(seed: ExchangeSeed) -> int:
    """dim of {v : Σ_j ε_ij v_j = 0 for every unfrozen i}."""
    return seed.size - unfrozen_rank(seed)


def in_kernel(seed: ExchangeSeed, v) -> bool:
    if any(v[i] for i in seed.frozen):
        return False
    return all(sum(v[i] * seed.matrix2[i][j] for i in range(seed.size)) == 0 for j in range(seed.size))


def annihilates(seed: ExchangeSeed, v) -> bool:
    return all(sum(seed.matrix2[i][j] * v[j] for j in range(seed.size)) == 0 for i in seed.unfrozen)


def span_rank(vectors) -> int:
    return sympy.Matrix([list(v) for v in vectors]).rank() if vectors else 0


def _check(name, passed, **details):
    return {"name": name, "passed": bool(passed), **details}


def verify_exact_sequence(tri: Triangulation, require_charts: bool = False) -> dict:
    """Kernel/annihilator ranks and explicit basis vectors for a triangulation.

    Basis vectors come from the local chart when one exists; otherwise the
    ring vectors are used, unless `require_charts` asks for MissingChart.
    """
    issues = validate(tri)
    if issues:
        raise InvalidTriangulation("; ".join(issues))
    seed, layout = build_quiver(tri)
    checks = []
    kernel_vectors = []
    ann_vectors = []
    for m in tri.marked_points:
        ring = ring_vectors(tri, layout, m.id)
        source = "ring"
        vecs = ring
        try:
            if m.kind == "puncture":
                ch = puncture_chart(tri, m.id, seed, layout)
                vecs = chart_vectors(seed.size, ch.local, (3, 4, 5, 6), (1, 2))
            else:
                ch = special_point_chart(tri, m.id, seed, layout)
                vecs = chart_vectors(seed.size, ch.local, (3, 4, 5), (1, 2))
            source = "chart"
            checks.append(_check(f"chart and ring vectors agree at {m.id}", vecs == ring))
        except MissingChart:
            if require_charts and m.kind == "puncture":
                raise
        if m.kind == "puncture":
            kernel_vectors += list(vecs)
            checks.append(_check(f"kernel vectors at puncture {m.id}",
                                 all(in_kernel(seed, v) for v in vecs), source=source))
        ann_vectors += list(vecs)
        checks.append(_check(f"annihilator vectors at {m.id}",
                             all(annihilates(seed, v) for v in vecs), source=source))
    n_punct = len(tri.punctures())
    n_marked = len(tri.marked_points)
    k_rank = kernel_rank(seed)
    a_rank = annihilator_rank(seed)
    checks += [
        _check("kernel rank equals twice the punctures", k_rank == 2 * n_punct,
               rank=k_rank, expected=2 * n_punct),
        _check("kernel vectors independent", span_rank(kernel_vectors) == 2 * n_punct,
               rank=span_rank(kernel_vectors)),
        _check("annihilator rank equals twice the marked points", a_rank == 2 * n_marked,
               rank=a_rank, expected=2 * n_marked),
        _check("annihilator vectors independent", span_rank(ann_vectors) == 2 * n_marked,
               rank=span_rank(ann_vectors)),
    ]
    return {"kernel_rank": k_rank, "annihilator_rank": a_rank,
            "passed": all(c["passed"] for c in checks), "checks": checks}
