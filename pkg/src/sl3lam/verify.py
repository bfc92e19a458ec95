"""Verification suites.  Each returns a JSON-ready report.

Sample sets: the full {-1,0,1} grid on a chosen set of coordinates (the
"orthant" set; every bending locus in play is a coordinate hyperplane) plus
seeded random rational points on all unfrozen coordinates.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable

import numpy as np

from . import ends as E
from .catalog import (catalog, dstar_chart, entry_point, orientation_reverse, pi_rotation,
                      track_p_cluster)
from .charts import all_puncture_charts, puncture_chart
from .errors import MissingChart, SelfFoldedFlip
from .exact_sequence import verify_exact_sequence
from .exchange import (Mutate, Permute, TropicalPoint, apply_path_rows, embed_rows,
                       first_difference, orthant_rows, permute_seed, random_rationals,
                       sample_of, seed_after, vectors_to_rows)
from .lattices import (NORMAL_FORMS, W1, W2, Coweight, Weight, dynkin_star, group_elements,
                       reflect)
from .maps import (casimir, casimir_rows, dynkin_rows, ensemble_rows, loop_closes,
                   peripheral_vector, potential_u, reordered_loops, u_rows, weyl_a_action,
                   weyl_a_rows, weyl_loop, weyl_loop_forms, weyl_rows, weyl_word_rows)
from .triangulation import (LOWER_ROUTE, UPPER_ROUTE, Triangulation, build_quiver, flip,
                            flip_route, load_triangulation, vertex_isomorphism)

DEFAULT_RANDOM = 1000
FULL_ORTHANT_LIMIT = 14
FLIP_ORTHANT_LIMIT = 10
CHUNK = 600_000


def _check(name: str, passed: bool, **details) -> dict:
    return {"name": name, "passed": bool(passed), **details}


def _skip(name: str, reason: str) -> dict:
    return {"name": name, "passed": True, "skipped": reason}


def _report(suite: str, claim: str, checks: list, surface: str | None = None) -> dict:
    out = {"suite": suite, "claim": claim}
    if surface is not None:
        out["surface"] = surface
    out["passed"] = all(c["passed"] for c in checks)
    out["checks"] = checks
    return out


def _fmt(values) -> list:
    return [str(Fraction(v)) for v in values]


class Samples:
    """Orthant grid on `positions` (in chunks) followed by random rational points."""

    def __init__(self, size: int, positions, random_positions, n_random: int, rng_seed: int):
        self.size = size
        self.positions = tuple(positions)
        self.random_positions = tuple(random_positions)
        self.n_random = n_random
        self.rng_seed = rng_seed

    def batches(self):
        if self.positions:
            grid = orthant_rows(len(self.positions))
            total = len(grid[0])
            for start in range(0, total, CHUNK):
                part = [g[start:start + CHUNK] for g in grid]
                yield "orthant", start, embed_rows(part, self.positions, self.size)
        if self.n_random and self.random_positions:
            vecs = random_rationals(len(self.random_positions), self.n_random, self.rng_seed)
            yield "random", 0, embed_rows(vectors_to_rows(vecs), self.random_positions, self.size)

    def describe(self) -> dict:
        return {"orthant_dims": len(self.positions), "orthant_points": 3 ** len(self.positions) if self.positions else 0,
                "random_points": self.n_random if self.random_positions else 0, "rng_seed": self.rng_seed}


def compare_maps(name: str, samples: Samples, left: Callable, right: Callable, positions=None) -> dict:
    """Evaluate two row maps on every sample and compare on `positions`."""
    for label, offset, rows in samples.batches():
        lv, rv = left(rows), right(rows)
        bad = first_difference(lv, rv, positions)
        if bad is not None:
            return _check(name, False, **samples.describe(), witness={
                "set": label, "index": offset + bad, "input": _fmt(sample_of(rows, bad)),
                "left": _fmt(sample_of(lv, bad)), "right": _fmt(sample_of(rv, bad))})
    return _check(name, True, **samples.describe())


def _surface(surface) -> tuple:
    if isinstance(surface, Triangulation):
        return "custom", surface
    return str(surface), load_triangulation(surface)


def _charts(tri):
    seed, layout = build_quiver(tri)
    charts, missing = {}, []
    for p in tri.punctures():
        try:
            charts[p] = puncture_chart(tri, p, seed, layout)
        except MissingChart as exc:
            missing.append(_skip(f"chart at {p}", str(exc)))
    return seed, layout, charts, missing


def _local(ch, labels=range(1, 7)) -> list:
    return [ch.local[k] for k in labels if ch.local[k] not in ch.seed.frozen]


def _chart_samples(ch, n_random, rng_seed, labels=range(1, 7), flavor="X") -> Samples:
    seed = ch.seed
    wide = seed.unfrozen if flavor == "X" else range(seed.size)
    if flavor == "X" and len(seed.unfrozen) <= 6:
        grid = seed.unfrozen
    else:
        grid = sorted(set(_local(ch, labels)) if flavor == "X" else {ch.local[k] for k in labels})
    return Samples(seed.size, grid, wide, n_random, rng_seed)


# ------------------------------------------------------------ suites

def suite_casimir_table(surface=None, rng_seed=0, n_random=DEFAULT_RANDOM) -> dict:
    ch = dstar_chart()
    checks = []
    entries = catalog()
    checks.append(_check("eleven entries", len(entries) == 11, count=len(entries)))
    for entry in entries:
        for variant, want in ((entry, entry.theta),
                              (orientation_reverse(entry), dynkin_star(entry.theta)),
                              (pi_rotation(entry), entry.theta)):
            got = casimir(entry_point(variant.coords, ch), ch)
            checks.append(_check(f"casimir of {variant.name}", got == want and variant.theta == want,
                                 coords={str(k): str(v) for k, v in sorted(variant.coords.items())},
                                 theta=got.to_json(), expected=want.to_json()))
    return _report("casimir-table", "Casimir values of the elementary braids and their symmetric images", checks)


def suite_weyl_loop_vs_pl(surface="dstar", rng_seed=0, n_random=DEFAULT_RANDOM) -> dict:
    name, tri = _surface(surface)
    seed, layout, charts, checks = _charts(tri)
    for p, ch in charts.items():
        samples = _chart_samples(ch, n_random, rng_seed)
        for s in (1, 2):
            closed = lambda rows, s=s, ch=ch: weyl_rows(s, rows, ch)
            for form, path in weyl_loop_forms(s, ch).items():
                checks.append(_check(f"{p}: loop r{s} ({form}) closes", loop_closes(path, seed)))
                checks.append(compare_maps(
                    f"{p}: loop r{s} ({form}) equals closed form", samples,
                    lambda rows, path=path: apply_path_rows(rows, seed, path, "X")[0], closed))
            for key, path in reordered_loops(s, ch).items():
                order = "".join(str(k) for k in key)
                checks.append(_check(f"{p}: reordered loop r{s} [{order}] closes", loop_closes(path, seed)))
                checks.append(compare_maps(
                    f"{p}: reordered loop r{s} [{order}] equals closed form", samples,
                    lambda rows, path=path: apply_path_rows(rows, seed, path, "X")[0], closed))
    return _report("weyl-loop-vs-pl", "mutation loops at a puncture realize the closed-form Weyl action",
                   checks, name)


def suite_weyl_relations(surface="dstar", rng_seed=0, n_random=DEFAULT_RANDOM) -> dict:
    name, tri = _surface(surface)
    seed, layout, charts, checks = _charts(tri)
    ident = lambda rows: rows
    for p, ch in charts.items():
        samples = _chart_samples(ch, n_random, rng_seed)
        for s in (1, 2):
            checks.append(compare_maps(f"{p}: r{s} is an involution", samples,
                                       lambda rows, s=s, ch=ch: weyl_word_rows((s, s), rows, ch), ident))
        checks.append(compare_maps(f"{p}: braid relation r1 r2 r1 = r2 r1 r2", samples,
                                   lambda rows, ch=ch: weyl_word_rows((1, 2, 1), rows, ch),
                                   lambda rows, ch=ch: weyl_word_rows((2, 1, 2), rows, ch)))
        for s in (1, 2):
            def lhs(rows, s=s, ch=ch):
                return list(casimir_rows(weyl_rows(s, rows, ch), ch))

            def rhs(rows, s=s, ch=ch):
                c1, c2 = casimir_rows(rows, ch)
                return [-c1, c1 + c2] if s == 1 else [c1 + c2, -c2]
            checks.append(compare_maps(f"{p}: casimir after r{s} equals reflected casimir", samples, lhs, rhs))
    names = sorted(charts)
    for i, p in enumerate(names):
        for q in names[i + 1:]:
            cp, cq = charts[p], charts[q]
            if len(seed.unfrozen) <= FULL_ORTHANT_LIMIT:
                grid = seed.unfrozen
            else:
                grid = sorted(set(_local(cp)) | set(_local(cq)))
            samples = Samples(seed.size, grid, seed.unfrozen, n_random, rng_seed)
            for s in (1, 2):
                for u in (1, 2):
                    checks.append(compare_maps(
                        f"r{s} at {p} commutes with r{u} at {q}", samples,
                        lambda rows, s=s, u=u, cp=cp, cq=cq: weyl_rows(s, weyl_rows(u, rows, cq), cp),
                        lambda rows, s=s, u=u, cp=cp, cq=cq: weyl_rows(u, weyl_rows(s, rows, cp), cq)))
    return _report("weyl-relations", "Weyl group relations and Casimir equivariance at punctures", checks, name)


def suite_dynkin(surface="dstar", rng_seed=0, n_random=DEFAULT_RANDOM) -> dict:
    name, tri = _surface(surface)
    seed, layout, charts, checks = _charts(tri)
    uf = seed.unfrozen
    grid = uf if len(uf) <= FULL_ORTHANT_LIMIT else uf[:FULL_ORTHANT_LIMIT]
    samples = Samples(seed.size, grid, uf, n_random, rng_seed)
    dyn = lambda rows: dynkin_rows(rows, tri, layout)
    checks.append(compare_maps("Dynkin map is an involution", samples, lambda rows: dyn(dyn(rows)), lambda rows: rows))
    for p, ch in charts.items():
        local = _chart_samples(ch, n_random, rng_seed)

        def lhs(rows, ch=ch):
            return list(casimir_rows(dyn(rows), ch))

        def rhs(rows, ch=ch):
            c1, c2 = casimir_rows(rows, ch)
            return [c2, c1]
        checks.append(compare_maps(f"{p}: casimir after Dynkin is the starred casimir", local, lhs, rhs))
        loop1, loop2 = weyl_loop(1, ch), weyl_loop(2, ch)
        checks.append(compare_maps(
            f"{p}: Dynkin conjugates loop r2 into loop r1", local,
            lambda rows, l=loop2: dyn(apply_path_rows(dyn(rows), seed, l, "X")[0]),
            lambda rows, l=loop1: apply_path_rows(rows, seed, l, "X")[0]))
    return _report("dynkin", "Dynkin involution: involutivity, Casimir compatibility, loop conjugation", checks, name)


def suite_exact_sequence(surface="dstar", rng_seed=0, n_random=DEFAULT_RANDOM) -> dict:
    name, tri = _surface(surface)
    report = verify_exact_sequence(tri)
    seed, layout, charts, checks = _charts(tri)
    checks = checks + report["checks"]
    n = seed.size
    for p, ch in charts.items():
        basis = [[1 if j == i else 0 for j in range(n)] for i in range(n)]
        zero_on_basis = all(casimir(TropicalPoint("X", ensemble_rows(b, seed)), ch) == Coweight() for b in basis)
        checks.append(_check(f"{p}: casimir of ensemble vanishes on A basis vectors", zero_on_basis))
        samples = Samples(n, range(n) if n <= 10 else (), range(n), n_random, rng_seed)
        checks.append(compare_maps(f"{p}: casimir of ensemble vanishes on samples", samples,
                                   lambda rows, ch=ch: list(casimir_rows(ensemble_rows(rows, seed), ch)),
                                   lambda rows: [0 * rows[0], 0 * rows[0]]))
    return _report("exact-sequence", "ensemble map kernel, Casimir annihilation and exact ranks",
                   checks, name) | {"kernel_rank": report["kernel_rank"],
                                    "annihilator_rank": report["annihilator_rank"]}


def suite_a_side(surface="dstar", rng_seed=0, n_random=DEFAULT_RANDOM) -> dict:
    name, tri = _surface(surface)
    seed, layout, charts, checks = _charts(tri)
    for p, ch in charts.items():
        samples = _chart_samples(ch, n_random, rng_seed, labels=range(1, 11), flavor="A")
        for s in (1, 2):
            rule = lambda rows, s=s, ch=ch: weyl_a_rows(rows, ch, s)
            for form, path in weyl_loop_forms(s, ch).items():
                checks.append(compare_maps(f"{p}: A-loop r{s} ({form}) equals the u-shift", samples,
                                           lambda rows, path=path: apply_path_rows(rows, seed, path, "A")[0], rule))
            checks.append(compare_maps(f"{p}: u-shift r{s} is an involution", samples,
                                       lambda rows, rule=rule: rule(rule(rows)), lambda rows: rows))
            loop = weyl_loop(s, ch)
            checks.append(compare_maps(
                f"{p}: ensemble intertwines A- and X-loops r{s}", samples,
                lambda rows, loop=loop: ensemble_rows(apply_path_rows(rows, seed, loop, "A")[0], seed),
                lambda rows, loop=loop: apply_path_rows(ensemble_rows(rows, seed), seed, loop, "X")[0],
                positions=seed.unfrozen))
        vec = peripheral_vector(ch)
        before = (potential_u(vec, ch, 1), potential_u(vec, ch, 2))
        moved = weyl_a_action(vec, ch, 1)
        after = (potential_u(moved, ch, 1), potential_u(moved, ch, 2))
        want = {ch.local[k]: Fraction(v) for k, v in
                {1: Fraction(1, 3), 2: Fraction(1, 3), 3: Fraction(-1, 3), 4: Fraction(-1, 3),
                 5: Fraction(-1, 3), 6: Fraction(-1, 3)}.items()}
        coords_ok = all(moved[i] == want.get(i, 0) for i in range(seed.size))
        checks.append(_check(f"{p}: peripheral vector has u = (1, 0)", before == (1, 0), u=_fmt(before)))
        checks.append(_check(f"{p}: r1 moves the peripheral vector to u = (-1, 1)",
                             after == (-1, 1) and coords_ok, u=_fmt(after), coords=_fmt(moved.coords)))
        x = ensemble_rows(list(vec.coords), seed)
        checks.append(_check(f"{p}: peripheral vector lies in the ensemble kernel",
                             all(x[i] == 0 for i in seed.unfrozen)))
    return _report("a-side", "A-side Weyl action: loops against the tropical potential rule", checks, name)


def suite_flip_consistency(surface="dstar", rng_seed=0, n_random=DEFAULT_RANDOM) -> dict:
    name, tri = _surface(surface)
    seed, layout = build_quiver(tri)
    uf = seed.unfrozen
    checks = []
    for eid in tri.interior_edges():
        upper = flip_route(tri, eid, UPPER_ROUTE)
        lower = flip_route(tri, eid, LOWER_ROUTE)
        grid = uf if len(uf) <= FLIP_ORTHANT_LIMIT else tuple(sorted({m.k for m in upper}))
        samples = Samples(seed.size, grid, uf, n_random, rng_seed)
        checks.append(compare_maps(f"{eid}: upper and lower routes agree", samples,
                                   lambda rows, u=upper: apply_path_rows(rows, seed, u, "X")[0],
                                   lambda rows, l=lower: apply_path_rows(rows, seed, l, "X")[0]))
        checks.append(_check(f"{eid}: routes reach the same seed", seed_after(seed, upper) == seed_after(seed, lower)))
        try:
            flipped, path, sigma = flip(tri, eid)
        except SelfFoldedFlip as exc:
            checks.append(_skip(f"{eid}: flip", str(exc)))
            continue
        rebuilt, _ = build_quiver(flipped)
        checks.append(_check(f"{eid}: mutated seed equals the rebuilt quiver after relabeling",
                             permute_seed(seed_after(seed, path), sigma) == rebuilt))
        back, path2, sigma2 = flip(flipped, eid)
        tau = vertex_isomorphism(back, tri)
        ok = tau is not None
        if ok:
            loop = path + (Permute(sigma),) + path2 + (Permute(sigma2), Permute(tau))
            ok = seed_after(seed, loop) == seed
        checks.append(_check(f"{eid}: flipping twice returns the original quiver", ok))
        if ok:
            checks.append(compare_maps(f"{eid}: flipping twice is the identity on points", samples,
                                       lambda rows, loop=loop: apply_path_rows(rows, seed, loop, "X")[0],
                                       lambda rows: rows))
    return _report("flip-consistency", "flips as mutation sequences", checks, name)


def suite_counts(surface="dstar", rng_seed=0, n_random=DEFAULT_RANDOM) -> dict:
    name, tri = _surface(surface)
    seed, layout = build_quiver(tri)
    c = tri.counts()
    checks = [_check(f"{key} count", c[key] == want, value=c[key], expected=want, chi=c["chi"])
              for key, want in c["expected"].items()]
    checks.append(_check("seed size matches vertex count", seed.size == c["vertices"]))
    checks.append(_check("unfrozen vertices match", len(seed.unfrozen) == c["unfrozen_vertices"]))
    return _report("counts", "vertex, edge and triangle counts from the Euler characteristic", checks, name)


def suite_end_calculus(surface=None, rng_seed=0, n_random=DEFAULT_RANDOM) -> dict:
    checks = []
    multisets = list(E.all_multisets(4))
    eq = inv = braid = conj = dyn_theta = norm = True
    witness = {}
    for m in multisets:
        for s in (1, 2):
            if E.theta(E.weyl_act(s, m)) != reflect(s, E.theta(m)):
                eq = False
                witness.setdefault("equivariance", str(m))
            if E.weyl_act(s, E.weyl_act(s, m)) != E.normalize(m):
                inv = False
                witness.setdefault("involution", str(m))
        if E.weyl_word((1, 2, 1), m) != E.weyl_word((2, 1, 2), m):
            braid = False
            witness.setdefault("braid", str(m))
        if E.dynkin(E.weyl_act(1, E.dynkin(m))) != E.weyl_act(2, m):
            conj = False
            witness.setdefault("conjugation", str(m))
        if E.theta(E.dynkin(m)) != dynkin_star(E.theta(m)):
            dyn_theta = False
        n = E.normalize(m)
        if E.theta(n) != E.theta(m) or E.normalize(n) != n or E.has_resolvable_pair(n):
            norm = False
    checks += [
        _check("multiset count", len(multisets) == 625, count=len(multisets)),
        _check("theta equivariance", eq, witness=witness.get("equivariance")),
        _check("involution up to normalization", inv, witness=witness.get("involution")),
        _check("braid relation", braid, witness=witness.get("braid")),
        _check("Dynkin conjugates r1 into r2", conj, witness=witness.get("conjugation")),
        _check("theta of Dynkin image is starred theta", dyn_theta),
        _check("normalization keeps theta, is idempotent, leaves no pair", norm),
    ]
    op = E.EndMultiset.of("o+")
    twice = E.weyl_act(1, E.weyl_act(1, op))
    raw = E.weyl_rewrite(1, E.IN_PLUS) + E.weyl_rewrite(1, E.IN_MINUS)
    checks.append(_check("r1 twice on o+: {i+, o+, o-} normalizes to {o+}",
                         raw == E.EndMultiset.of("i+", "o+", "o-") and twice == op,
                         before_normalizing=str(raw), result=str(twice)))
    chain_a = [str(E.weyl_word(w, op)) for w in ((1,), (2, 1), (1, 2, 1))]
    chain_b = [str(E.weyl_word(w, op)) for w in ((2,), (1, 2), (2, 1, 2))]
    thetas = [str(E.theta(E.weyl_word(w, op))) for w in ((1,), (2, 1), (1, 2, 1))]
    checks.append(_check("r1 r2 r1 and r2 r1 r2 send o+ to o-",
                         E.weyl_word((1, 2, 1), op) == E.weyl_word((2, 1, 2), op) == E.EndMultiset.of("o-"),
                         chain_121=chain_a, chain_212=chain_b, thetas_121=thetas))
    tags = True
    for kind in E.EXTENDED_KINDS:
        from .lattices import as_weight, fp_weight_vector
        tag = E.to_fp_tag(kind)
        outgoing = kind.startswith("o") or kind == E.LOOP_OUT
        tags &= len(tag) == (1 if outgoing else 2)
        tags &= fp_weight_vector(tag) == as_weight(E.kind_theta(kind))
    checks.append(_check("tags match end contributions and sizes", tags))
    checks.append(_check("Weyl group has six elements", len(group_elements()) == 6 == len(NORMAL_FORMS)))
    return _report("end-calculus", "Weyl action on signed ends at a puncture", checks)


def _theta_star_weights(station, vertices):
    from .lattices import as_weight
    return {v: as_weight(station.theta_star[v]) for v in vertices}


def suite_p_cluster_tracks(surface=None, rng_seed=0, n_random=DEFAULT_RANDOM) -> dict:
    ch = dstar_chart()
    L = ch.local
    w1, w2 = Weight(1, 0), Weight(0, 1)
    zero = Weight(0, 0)
    checks = []

    track = track_p_cluster(ch, [Mutate(L[5]), Mutate(L[3])])
    labels = (1, 2, 3, 4, 5, 6)
    expected = [
        {1: w1, 2: w1, 3: w2, 4: w2, 5: w2, 6: w2},
        {1: w1, 2: w1, 3: w2, 4: w2, 5: zero, 6: w2},
        {1: w1, 2: w1, 3: zero, 4: w2, 5: zero, 6: w2},
    ]
    for n, (station, want) in enumerate(zip(track.stations, expected)):
        got = _theta_star_weights(station, [L[k] for k in labels])
        ok = all(got[L[k]] == want[k] for k in labels)
        checks.append(_check(f"mu5 mu3 track, station {n}", ok,
                             values={k: got[L[k]].to_json() for k in labels}))

    prefix = [Mutate(L[5]), Mutate(L[3])]
    track = track_p_cluster(ch, prefix + [Mutate(L[2]), Mutate(L[6]), Mutate(L[4])])
    shown = [L[k] for k in (1, 2, 4, 6)]
    e = lambda *v: Weight.from_z3(v)
    clusters = [
        {e(1, 0, 0), e(1, 1, 0)},
        {e(1, 0, 0), e(0, 1, 0), e(1, 1, 0)},
        {e(1, 0, 0), e(0, 1, 0), e(1, 1, 0), e(0, 0, 0)},
        {e(1, 0, 0), e(0, 1, 0), e(0, 0, 1), e(0, 0, 0)},
    ]
    for n, want in enumerate(clusters):
        station = track.stations[len(prefix) + n]
        got = station.p_cluster(shown)
        checks.append(_check(f"dosp track from the mu5 mu3 seed, station {n}", got == want,
                             p_cluster=sorted(str(list(map(str, w.to_z3()))) for w in got)))

    track = track_p_cluster(ch, weyl_loop_forms(2, ch)["closing"])
    theta = [
        {1: W2, 2: W2, 3: W1, 4: W1, 5: W1, 6: W1},
        {1: W1 - W2, 2: W2, 3: W1, 4: W1, 5: W1, 6: W1},
        {1: W1 - W2, 2: W1 - W2, 3: W1, 4: W1, 5: W1, 6: W1},
    ]
    for n, want in enumerate(theta):
        station = track.stations[n]
        got = {k: dynkin_star(station.theta_star[L[k]]) for k in labels}
        checks.append(_check(f"r2 loop track, station {n}", got == want,
                             theta={k: v.to_json() for k, v in got.items()}))
    return _report("p-cluster-tracks", "P-clusters along mutation paths on the punctured digon", checks, "dstar")


SUITES = {
    "casimir-table": suite_casimir_table,
    "weyl-relations": suite_weyl_relations,
    "weyl-loop-vs-pl": suite_weyl_loop_vs_pl,
    "exact-sequence": suite_exact_sequence,
    "flip-consistency": suite_flip_consistency,
    "dynkin": suite_dynkin,
    "a-side": suite_a_side,
    "end-calculus": suite_end_calculus,
    "p-cluster-tracks": suite_p_cluster_tracks,
    "counts": suite_counts,
}


def run_suite(name: str, surface="dstar", rng_seed: int = 0, n_random: int = DEFAULT_RANDOM) -> dict:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    return SUITES[name](surface, rng_seed=rng_seed, n_random=n_random)
