"""Root data of sl3: coweights, weights, the Weyl group and the Dynkin involution."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import InvalidTag
from .exchange import as_rational, format_rational


@dataclass(frozen=True)
class Coweight:
    """c1·ϖ₁∨ + c2·ϖ₂∨ with rational coefficients."""

    c1: Fraction = Fraction(0)
    c2: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "c1", as_rational(self.c1))
        object.__setattr__(self, "c2", as_rational(self.c2))

    def __add__(self, other: "Coweight") -> "Coweight":
        return Coweight(self.c1 + other.c1, self.c2 + other.c2)

    def __sub__(self, other: "Coweight") -> "Coweight":
        return Coweight(self.c1 - other.c1, self.c2 - other.c2)

    def __neg__(self) -> "Coweight":
        return Coweight(-self.c1, -self.c2)

    def __rmul__(self, k) -> "Coweight":
        k = as_rational(k)
        return Coweight(k * self.c1, k * self.c2)

    def __str__(self):
        return f"{format_rational(self.c1)}·w1 + {format_rational(self.c2)}·w2"

    def to_json(self) -> dict:
        return {"w1": format_rational(self.c1), "w2": format_rational(self.c2)}

    @classmethod
    def from_json(cls, data: dict) -> "Coweight":
        return cls(as_rational(data["w1"]), as_rational(data["w2"]))


ZERO = Coweight()
W1 = Coweight(1, 0)
W2 = Coweight(0, 1)
CARTAN = ((2, -1), (-1, 2))


def simple_coroot(s: int) -> Coweight:
    """α₁∨ = 2ϖ₁∨ - ϖ₂∨ and α₂∨ = -ϖ₁∨ + 2ϖ₂∨, read off the Cartan matrix."""
    row = CARTAN[_gen(s) - 1]
    return Coweight(row[0], row[1])


def pairing(s: int, lam: Coweight) -> Fraction:
    """⟨α_s, λ⟩; the simple roots are dual to the fundamental coweights."""
    return lam.c1 if _gen(s) == 1 else lam.c2


def _gen(s: int) -> int:
    if s not in (1, 2):
        raise ValueError(f"Weyl generator must be 1 or 2, got {s!r}")
    return s


def reflect(s: int, lam: Coweight) -> Coweight:
    return lam - pairing(s, lam) * simple_coroot(s)


def dynkin_star(lam: Coweight) -> Coweight:
    return Coweight(lam.c2, lam.c1)


def is_dominant(lam: Coweight) -> bool:
    return lam.c1 >= 0 and lam.c2 >= 0


def is_antidominant(lam: Coweight) -> bool:
    return is_dominant(-lam)


# ------------------------------------------------------------ Weyl group

NORMAL_FORMS = ((), (1,), (2,), (1, 2), (2, 1), (1, 2, 1))


def act(word: Iterable[int], lam: Coweight) -> Coweight:
    """Apply a word as a composition, rightmost letter first."""
    for s in reversed(tuple(word)):
        lam = reflect(s, lam)
    return lam


def _matrix(word) -> tuple:
    a = act(word, W1)
    b = act(word, W2)
    return (a.c1, a.c2, b.c1, b.c2)


def normal_form(word: Iterable[int]) -> tuple:
    """The reduced word among the six group elements acting like `word`."""
    target = _matrix(word)
    for nf in NORMAL_FORMS:
        if _matrix(nf) == target:
            return nf
    raise AssertionError("word outside the Weyl group")  # cannot happen


def group_elements() -> list:
    """Enumerate the group generated by r1, r2 by closure under left multiplication."""
    seen = {_matrix(()): ()}
    frontier = [()]
    while frontier:
        nxt = []
        for w in frontier:
            for s in (1, 2):
                v = (s,) + w
                key = _matrix(v)
                if key not in seen:
                    seen[key] = v
                    nxt.append(v)
        frontier = nxt
    return list(seen.values())


# ------------------------------------------------------------ weights

@dataclass(frozen=True)
class Weight:
    """d1·ϖ₁ + d2·ϖ₂, with ϖ₁ = e₁ and ϖ₂ = e₁+e₂ in ℤ³/(1,1,1)."""

    d1: Fraction = Fraction(0)
    d2: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "d1", as_rational(self.d1))
        object.__setattr__(self, "d2", as_rational(self.d2))

    @classmethod
    def from_z3(cls, v) -> "Weight":
        a, b, c = (as_rational(x) for x in v)
        return cls(a - b, b - c)

    def to_z3(self) -> tuple:
        """Representative with vanishing last entry."""
        return (self.d1 + self.d2, self.d2, Fraction(0))

    def to_json(self) -> dict:
        return {"w1": format_rational(self.d1), "w2": format_rational(self.d2)}


def as_weight(lam: Coweight) -> Weight:
    """ϖ_s∨ ↦ ϖ_s."""
    return Weight(lam.c1, lam.c2)


def fp_weight_vector(tag) -> Weight:
    tag = frozenset(tag)
    if not tag or tag == {1, 2, 3} or not tag <= {1, 2, 3}:
        raise InvalidTag(f"tag must be a proper nonempty subset of {{1,2,3}}, got {sorted(tag)}")
    return Weight.from_z3(tuple(1 if i in tag else 0 for i in (1, 2, 3)))
