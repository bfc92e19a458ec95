"""Signed oriented ends at a puncture and the Weyl rewriting calculus on them.

An end either points into the puncture ("i") or away from it ("o") and
carries a sign.  Multisets of ends are stored as counts in the fixed order
i+, i-, o+, o-.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import InvalidKind
from .lattices import Coweight, W1, W2

ORIENTATIONS = ("in", "out")
SIGNS = ("+", "-")


@dataclass(frozen=True)
class PrimitiveEnd:
    orientation: str
    sign: str

    def __post_init__(self):
        if self.orientation not in ORIENTATIONS or self.sign not in SIGNS:
            raise InvalidKind(f"bad end ({self.orientation}, {self.sign})")

    @property
    def notation(self) -> str:
        return self.orientation[0] + self.sign

    @classmethod
    def parse(cls, text: str) -> "PrimitiveEnd":
        text = text.strip()
        if len(text) != 2 or text[0] not in "io" or text[1] not in SIGNS:
            raise InvalidKind(f"cannot read end {text!r}; use i+, i-, o+ or o-")
        return cls("in" if text[0] == "i" else "out", text[1])

    def __str__(self):
        return self.notation


IN_PLUS = PrimitiveEnd("in", "+")
IN_MINUS = PrimitiveEnd("in", "-")
OUT_PLUS = PrimitiveEnd("out", "+")
OUT_MINUS = PrimitiveEnd("out", "-")
ALL_ENDS = (IN_PLUS, IN_MINUS, OUT_PLUS, OUT_MINUS)


@dataclass(frozen=True)
class EndMultiset:
    counts: tuple = (0, 0, 0, 0)

    def __post_init__(self):
        counts = tuple(int(c) for c in self.counts)
        if len(counts) != 4 or any(c < 0 for c in counts):
            raise ValueError("counts must be four nonnegative integers")
        object.__setattr__(self, "counts", counts)

    @classmethod
    def of(cls, *ends) -> "EndMultiset":
        counts = [0, 0, 0, 0]
        for e in ends:
            if isinstance(e, str):
                e = PrimitiveEnd.parse(e)
            counts[ALL_ENDS.index(e)] += 1
        return cls(tuple(counts))

    def count(self, e: PrimitiveEnd) -> int:
        return self.counts[ALL_ENDS.index(e)]

    def __add__(self, other: "EndMultiset") -> "EndMultiset":
        return EndMultiset(tuple(a + b for a, b in zip(self.counts, other.counts)))

    def __iter__(self):
        for e, c in zip(ALL_ENDS, self.counts):
            for _ in range(c):
                yield e

    def __len__(self):
        return sum(self.counts)

    def __str__(self):
        return "{" + ", ".join(e.notation for e in self) + "}"

    def to_json(self) -> list:
        return [[e.notation, c] for e, c in zip(ALL_ENDS, self.counts) if c]

    @classmethod
    def from_json(cls, data) -> "EndMultiset":
        if isinstance(data, str):
            return cls.of(*data.replace(",", " ").split())
        ends = []
        for item in data:
            if isinstance(item, str):
                ends.append(item)
            else:
                ends += [item[0]] * int(item[1])
        return cls.of(*ends)


EMPTY = EndMultiset()

_CONTRIBUTION = {IN_PLUS: W2, IN_MINUS: -W1, OUT_PLUS: W1, OUT_MINUS: -W2}


def contribution(e: PrimitiveEnd) -> Coweight:
    return _CONTRIBUTION[e]


def theta(m: EndMultiset) -> Coweight:
    total = Coweight()
    for e, c in zip(ALL_ENDS, m.counts):
        total = total + c * _CONTRIBUTION[e]
    return total


_REWRITE = {
    1: {IN_PLUS: (IN_PLUS,), IN_MINUS: (OUT_PLUS, OUT_MINUS),
        OUT_PLUS: (IN_PLUS, IN_MINUS), OUT_MINUS: (OUT_MINUS,)},
    2: {IN_PLUS: (OUT_PLUS, OUT_MINUS), IN_MINUS: (IN_MINUS,),
        OUT_PLUS: (OUT_PLUS,), OUT_MINUS: (IN_PLUS, IN_MINUS)},
}


def weyl_rewrite(s: int, e: PrimitiveEnd) -> EndMultiset:
    if s not in _REWRITE:
        raise ValueError(f"Weyl generator must be 1 or 2, got {s!r}")
    return EndMultiset.of(*_REWRITE[s][e])


def normalize(m: EndMultiset) -> EndMultiset:
    """Cancel resolvable pairs {i+, o-} and {i-, o+}."""
    ip, im, op, om = m.counts
    a = min(ip, om)
    b = min(im, op)
    return EndMultiset((ip - a, im - b, op - b, om - a))


def has_resolvable_pair(m: EndMultiset) -> bool:
    ip, im, op, om = m.counts
    return bool(min(ip, om) or min(im, op))


def weyl_act(s: int, m: EndMultiset) -> EndMultiset:
    out = EMPTY
    for e, c in zip(ALL_ENDS, m.counts):
        piece = weyl_rewrite(s, e)
        out = out + EndMultiset(tuple(c * k for k in piece.counts))
    return normalize(out)


def weyl_word(word, m: EndMultiset) -> EndMultiset:
    """Apply a word as a composition, rightmost generator first."""
    for s in reversed(tuple(word)):
        m = weyl_act(s, m)
    return m


def dynkin_end(e: PrimitiveEnd) -> PrimitiveEnd:
    return PrimitiveEnd("out" if e.orientation == "in" else "in", e.sign)


def dynkin(m: EndMultiset) -> EndMultiset:
    ip, im, op, om = m.counts
    return EndMultiset((op, om, ip, im))


def all_multisets(max_count: int = 4):
    """Every multiset with each primitive end used at most max_count times."""
    for counts in itertools.product(range(max_count + 1), repeat=4):
        yield EndMultiset(counts)


# ------------------------------------------------------------ tags

LOOP_OUT = "loop-out"
LOOP_IN = "loop-in"
EXTENDED_KINDS = ("o+", LOOP_OUT, "o-", "i+", LOOP_IN, "i-")

_TAGS = {
    "o+": frozenset({1}), LOOP_OUT: frozenset({2}), "o-": frozenset({3}),
    "i+": frozenset({1, 2}), LOOP_IN: frozenset({1, 3}), "i-": frozenset({2, 3}),
}

# a loop-attached end is an outgoing (incoming) strand whose two ends at the
# puncture point the other way
COMPOSITE_SHADOW = {LOOP_OUT: EndMultiset.of("i+", "i-"), LOOP_IN: EndMultiset.of("o+", "o-")}


def _kind(kind) -> str:
    if isinstance(kind, PrimitiveEnd):
        return kind.notation
    if kind not in _TAGS:
        raise InvalidKind(f"unknown end kind {kind!r}; expected one of {EXTENDED_KINDS}")
    return kind


def to_fp_tag(kind) -> frozenset:
    return _TAGS[_kind(kind)]


def kind_theta(kind) -> Coweight:
    kind = _kind(kind)
    if kind in COMPOSITE_SHADOW:
        return theta(COMPOSITE_SHADOW[kind])
    return contribution(PrimitiveEnd.parse(kind))
