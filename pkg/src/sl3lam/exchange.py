"""Seeds, tropical points, mutations and mutation paths.

Vertex ids are 0-based in Python and 1-based in JSON.  Point coordinates
are handled internally as a list of "rows": one entry per vertex, each
entry either a scalar (int or Fraction) or a numpy array holding the value
of that coordinate across a whole batch of sample points.  The same
piecewise-linear formulas then serve single points and vectorized sweeps.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

import numpy as np

from .errors import FlavorMismatch, FrozenMutation, IndexOutOfRange, InvalidPermutation

FLAVORS = ("X", "A")


def as_rational(value) -> Fraction:
    """Coerce an int, Fraction or "p/q" string to a Fraction.  Floats are refused."""
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, np.integer)):
        return Fraction(int(value))
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot read {value!r} as an exact rational")


def format_rational(value) -> str:
    return str(Fraction(value))


def pos(v):
    """Positive part [v]_+ for a scalar or an array of samples."""
    if isinstance(v, np.ndarray):
        return np.maximum(v, 0)
    return v if v > 0 else 0 * v


def vmax(u, v):
    if isinstance(u, np.ndarray) or isinstance(v, np.ndarray):
        return np.maximum(u, v)
    return u if u >= v else v


def vmin(u, v):
    if isinstance(u, np.ndarray) or isinstance(v, np.ndarray):
        return np.minimum(u, v)
    return u if u <= v else v


# ---------------------------------------------------------------- seeds

@dataclass(frozen=True)
class ExchangeSeed:
    """Skew-symmetric exchange matrix stored doubled, with a frozen set."""

    matrix2: tuple
    frozen: frozenset

    def __post_init__(self):
        rows = tuple(tuple(int(v) for v in row) for row in self.matrix2)
        n = len(rows)
        frozen = frozenset(int(i) for i in self.frozen)
        object.__setattr__(self, "matrix2", rows)
        object.__setattr__(self, "frozen", frozen)
        if any(len(row) != n for row in rows):
            raise ValueError("matrix2 must be square")
        if any(not 0 <= i < n for i in frozen):
            raise IndexOutOfRange("frozen vertex outside the seed")
        for i in range(n):
            for j in range(i, n):
                if rows[i][j] != -rows[j][i]:
                    raise ValueError(f"matrix2 not skew-symmetric at ({i}, {j})")
                both_frozen = i in frozen and j in frozen
                if not both_frozen and rows[i][j] % 2:
                    raise ValueError(f"half-integer entry at ({i}, {j}) outside the frozen block")

    @property
    def size(self) -> int:
        return len(self.matrix2)

    @property
    def unfrozen(self) -> tuple:
        return tuple(i for i in range(self.size) if i not in self.frozen)

    def eps(self, i: int, j: int) -> Fraction:
        return Fraction(self.matrix2[i][j], 2)

    def column(self, k: int) -> list:
        """Nonzero (i, ε_ik) for an unfrozen k; entries are integers there."""
        return [(i, row[k] // 2) for i, row in enumerate(self.matrix2) if row[k]]

    def arrows(self) -> list:
        """All (i, j, ε_ij) with ε_ij > 0."""
        return [(i, j, self.eps(i, j))
                for i in range(self.size) for j in range(self.size)
                if self.matrix2[i][j] > 0]

    @classmethod
    def from_eps(cls, eps: Sequence[Sequence], frozen: Iterable[int] = ()) -> "ExchangeSeed":
        doubled = []
        for row in eps:
            out = []
            for v in row:
                twice = 2 * as_rational(v)
                if twice.denominator != 1:
                    raise ValueError("ε entries must be half-integers")
                out.append(int(twice))
            doubled.append(out)
        return cls(doubled, frozenset(frozen))

    @classmethod
    def from_arrows(cls, size: int, arrows: Iterable, frozen: Iterable[int] = ()) -> "ExchangeSeed":
        """Build from (i, j) or (i, j, weight) triples meaning ε_ij += weight."""
        m = [[0] * size for _ in range(size)]
        for arrow in arrows:
            i, j = arrow[0], arrow[1]
            w = as_rational(arrow[2]) if len(arrow) > 2 else Fraction(1)
            m[i][j] += int(2 * w)
            m[j][i] -= int(2 * w)
        return cls(m, frozenset(frozen))

    def to_json(self) -> dict:
        return {"size": self.size,
                "frozen": sorted(i + 1 for i in self.frozen),
                "matrix2": [list(row) for row in self.matrix2]}

    @classmethod
    def from_json(cls, data: dict) -> "ExchangeSeed":
        seed = cls(data["matrix2"], frozenset(i - 1 for i in data.get("frozen", [])))
        if "size" in data and data["size"] != seed.size:
            raise ValueError("size does not match matrix2")
        return seed


# ---------------------------------------------------------------- points

@dataclass(frozen=True)
class TropicalPoint:
    flavor: str
    coords: tuple

    def __post_init__(self):
        if self.flavor not in FLAVORS:
            raise FlavorMismatch(f"unknown flavor {self.flavor!r}")
        object.__setattr__(self, "coords", tuple(as_rational(c) for c in self.coords))

    def __len__(self):
        return len(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    @classmethod
    def zero(cls, flavor: str, size: int) -> "TropicalPoint":
        return cls(flavor, (0,) * size)

    @classmethod
    def basis(cls, flavor: str, size: int, i: int) -> "TropicalPoint":
        return cls(flavor, tuple(1 if j == i else 0 for j in range(size)))

    @classmethod
    def from_sparse(cls, flavor: str, size: int, values: dict) -> "TropicalPoint":
        coords = [Fraction(0)] * size
        for i, v in values.items():
            coords[i] = as_rational(v)
        return cls(flavor, coords)

    def scaled(self, factor) -> "TropicalPoint":
        factor = as_rational(factor)
        return TropicalPoint(self.flavor, tuple(factor * c for c in self.coords))

    def to_json(self) -> dict:
        return {"flavor": self.flavor, "coords": [format_rational(c) for c in self.coords]}

    @classmethod
    def from_json(cls, data: dict) -> "TropicalPoint":
        return cls(data["flavor"], tuple(as_rational(c) for c in data["coords"]))


def _require(p: TropicalPoint, flavor: str, seed: ExchangeSeed | None = None):
    if p.flavor != flavor:
        raise FlavorMismatch(f"expected an {flavor}-point, got {p.flavor}")
    if seed is not None and len(p) != seed.size:
        raise IndexOutOfRange(f"point has {len(p)} coordinates, seed has {seed.size}")


# ---------------------------------------------------------------- steps

@dataclass(frozen=True)
class Mutate:
    k: int


@dataclass(frozen=True)
class Permute:
    """Relabel vertex i as sigma[i]."""

    sigma: tuple

    def __post_init__(self):
        sigma = tuple(int(s) for s in self.sigma)
        object.__setattr__(self, "sigma", sigma)
        if sorted(sigma) != list(range(len(sigma))):
            raise InvalidPermutation(f"{sigma} is not a permutation")

    @classmethod
    def swap(cls, size: int, i: int, j: int) -> "Permute":
        sigma = list(range(size))
        sigma[i], sigma[j] = j, i
        return cls(tuple(sigma))

    def inverse(self) -> "Permute":
        inv = [0] * len(self.sigma)
        for i, s in enumerate(self.sigma):
            inv[s] = i
        return Permute(tuple(inv))


Step = Union[Mutate, Permute]


def _check_k(seed: ExchangeSeed, k: int):
    if not 0 <= k < seed.size:
        raise IndexOutOfRange(f"vertex {k} outside a seed of size {seed.size}")
    if k in seed.frozen:
        raise FrozenMutation(f"vertex {k} is frozen")


def mutate_matrix(seed: ExchangeSeed, k: int) -> ExchangeSeed:
    _check_k(seed, k)
    m = seed.matrix2
    n = seed.size
    out = [list(row) for row in m]
    for i in range(n):
        for j in range(n):
            if i == k or j == k:
                out[i][j] = -m[i][j]
            else:
                mik, mkj = m[i][k], m[k][j]
                if mik and mkj:
                    # entries through k are even, so the quarter is exact
                    out[i][j] = m[i][j] + (mik * abs(mkj) + abs(mik) * mkj) // 4
    return ExchangeSeed(out, seed.frozen)


def permute_seed(seed: ExchangeSeed, sigma: Sequence[int]) -> ExchangeSeed:
    n = seed.size
    if len(sigma) != n:
        raise InvalidPermutation("permutation length differs from seed size")
    if {sigma[i] for i in seed.frozen} != set(seed.frozen):
        raise InvalidPermutation("permutation does not preserve the frozen set")
    out = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            out[sigma[i]][sigma[j]] = seed.matrix2[i][j]
    return ExchangeSeed(out, seed.frozen)


# ---------------------------------------------------------------- row maps

def x_mutation(rows: list, seed: ExchangeSeed, k: int) -> list:
    """x'_k = -x_k, x'_i = x_i - ε_ik [-sgn(ε_ik) x_k]_+ on rows."""
    _check_k(seed, k)
    xk = rows[k]
    out = list(rows)
    out[k] = -xk
    for i, e in seed.column(k):
        if i == k:
            continue
        out[i] = rows[i] - e * (pos(-xk) if e > 0 else pos(xk))
    return out


def a_mutation(rows: list, seed: ExchangeSeed, k: int) -> list:
    """a'_k = -a_k + max(Σ[ε_kj]_+ a_j, Σ[-ε_kj]_+ a_j) on rows."""
    _check_k(seed, k)
    plus = 0
    minus = 0
    for j, m in enumerate(seed.matrix2[k]):
        if m > 0:
            plus = plus + (m // 2) * rows[j]
        elif m < 0:
            minus = minus + (-m // 2) * rows[j]
    out = list(rows)
    out[k] = -rows[k] + vmax(plus, minus)
    return out


def permute_rows(rows: list, sigma: Sequence[int]) -> list:
    out = [None] * len(rows)
    for i, s in enumerate(sigma):
        out[s] = rows[i]
    return out


def apply_path_rows(rows: list, seed: ExchangeSeed, path: Sequence[Step], flavor: str):
    if flavor not in FLAVORS:
        raise FlavorMismatch(f"unknown flavor {flavor!r}")
    mutation = x_mutation if flavor == "X" else a_mutation
    for step in path:
        if isinstance(step, Mutate):
            rows = mutation(rows, seed, step.k)
            seed = mutate_matrix(seed, step.k)
        elif isinstance(step, Permute):
            seed = permute_seed(seed, step.sigma)
            rows = permute_rows(rows, step.sigma)
        else:
            raise TypeError(f"not a mutation step: {step!r}")
    return rows, seed


def seed_after(seed: ExchangeSeed, path: Sequence[Step]) -> ExchangeSeed:
    for step in path:
        if isinstance(step, Mutate):
            seed = mutate_matrix(seed, step.k)
        else:
            seed = permute_seed(seed, step.sigma)
    return seed


# ---------------------------------------------------------------- point API

def mutate_x_tropical(p: TropicalPoint, seed: ExchangeSeed, k: int) -> TropicalPoint:
    _require(p, "X", seed)
    return TropicalPoint("X", x_mutation(list(p.coords), seed, k))


def mutate_a_tropical(p: TropicalPoint, seed: ExchangeSeed, k: int) -> TropicalPoint:
    _require(p, "A", seed)
    return TropicalPoint("A", a_mutation(list(p.coords), seed, k))


def apply_path(p: TropicalPoint, seed: ExchangeSeed, path: Sequence[Step]):
    _require(p, p.flavor, seed)
    rows, seed = apply_path_rows(list(p.coords), seed, path, p.flavor)
    return TropicalPoint(p.flavor, rows), seed


def invert_path(path: Sequence[Step]) -> tuple:
    return tuple(step.inverse() if isinstance(step, Permute) else step
                 for step in reversed(tuple(path)))


def path_to_json(path: Sequence[Step]) -> list:
    out = []
    for step in path:
        if isinstance(step, Mutate):
            out.append({"mutate": step.k + 1})
        else:
            out.append({"permute": [s + 1 for s in step.sigma]})
    return out


def path_from_json(data: list) -> tuple:
    steps = []
    for item in data:
        if "mutate" in item:
            steps.append(Mutate(int(item["mutate"]) - 1))
        elif "permute" in item:
            steps.append(Permute(tuple(int(s) - 1 for s in item["permute"])))
        else:
            raise ValueError(f"unknown path step {item!r}")
    return tuple(steps)


# ---------------------------------------------------------------- sampling

def random_rationals(dim: int, count: int, rng_seed: int) -> list:
    rng = random.Random(rng_seed)
    return [tuple(Fraction(rng.randint(-10, 10), rng.randint(1, 5)) for _ in range(dim))
            for _ in range(count)]


def orthant_samples(dim: int, extra_random: int = 0, rng_seed: int = 0) -> list:
    """All of {-1,0,1}^dim followed by seeded random rational vectors."""
    if dim < 1:
        raise ValueError("dim must be at least 1")
    grid = [tuple(Fraction(v) for v in vec) for vec in itertools.product((-1, 0, 1), repeat=dim)]
    return grid + random_rationals(dim, extra_random, rng_seed)


def orthant_rows(dim: int) -> list:
    """{-1,0,1}^dim as dim int64 rows of length 3^dim, same order as orthant_samples."""
    if dim < 1:
        raise ValueError("dim must be at least 1")
    grid = np.array(list(itertools.product((-1, 0, 1), repeat=dim)), dtype=np.int64)
    return [grid[:, i].copy() for i in range(dim)]


def vectors_to_rows(vectors: Sequence[Sequence]) -> list:
    """Transpose sample vectors into rows (object dtype keeps Fractions exact)."""
    arr = np.empty((len(vectors), len(vectors[0])), dtype=object)
    for s, vec in enumerate(vectors):
        arr[s, :] = list(vec)
    return [arr[:, i] for i in range(arr.shape[1])]


def embed_rows(rows: list, positions: Sequence[int], size: int) -> list:
    """Place rows at the given vertex positions; other coordinates are zero."""
    batch = len(rows[0])
    dtype = rows[0].dtype
    zero = np.zeros(batch, dtype=np.int64) if dtype != object else np.array([Fraction(0)] * batch, dtype=object)
    out = [zero] * size
    for r, p in zip(rows, positions):
        out[p] = r
    return out


def rows_equal(left: list, right: list, positions: Iterable[int] | None = None) -> bool:
    idx = range(len(left)) if positions is None else positions
    return all(np.array_equal(np.asarray(left[i]), np.asarray(right[i])) for i in idx)


def first_difference(left: list, right: list, positions: Iterable[int] | None = None):
    """Index of the first sample where the rows disagree, or None."""
    idx = range(len(left)) if positions is None else positions
    bad = None
    for i in idx:
        diff = np.nonzero(np.asarray(left[i] != right[i]))[0]
        if diff.size and (bad is None or diff[0] < bad):
            bad = int(diff[0])
    return bad


def sample_of(rows: list, s: int) -> tuple:
    return tuple(Fraction(r[s]) if isinstance(r, np.ndarray) else Fraction(r) for r in rows)
