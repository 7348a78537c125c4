"""Gromov product structures, their text notation and the relabeling action.

A structure on ``n`` points assigns to every node ``a`` (1-based) the unordered
pair ``{b, c}`` at which the Gromov product at ``a`` is minimal.  Pairs are
stored sorted, so two structures are equal exactly when their pick tuples are.

The compact notation writes node ``a`` picking ``{b, c}`` as the three digits
``abc``; ``serialize`` always emits tokens in node order with ``b < c``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

from .errors import (
    DuplicateNode,
    IndexOutOfRange,
    LengthMismatch,
    MalformedToken,
    MissingNode,
    PairContainsOwner,
    ValidationError,
    WrongTokenCount,
)

__all__ = [
    "GromovStructure",
    "Permutation",
    "make_structure",
    "apply_permutation",
    "serialize",
    "parse",
    "pair_table",
    "to_code",
    "from_code",
]

Pair = tuple[int, int]


@dataclass(frozen=True)
class Permutation:
    """A bijection on 1..n; ``images[a - 1]`` is the image of ``a``."""

    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(x) for x in self.images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValidationError(f"{images} is not a permutation of 1..{len(images)}")
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, a: int) -> int:
        return self.images[a - 1]

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for a, b in enumerate(self.images, start=1):
            inv[b - 1] = a
        return Permutation(tuple(inv))

    def compose(self, other: "Permutation") -> "Permutation":
        """Return ``self o other``, i.e. apply ``other`` first."""
        if other.n != self.n:
            raise LengthMismatch(self.n, other.n)
        return Permutation(tuple(self(other(a)) for a in range(1, self.n + 1)))


@dataclass(frozen=True)
class GromovStructure:
    """Validated, order-normalized map node -> picked pair.

    Build through :func:`make_structure` or :func:`parse`; the constructor
    itself only normalizes pair order and re-runs validation.
    """

    n: int
    picks: tuple[Pair, ...]

    def __post_init__(self):
        picks = tuple(tuple(sorted((int(b), int(c)))) for b, c in self.picks)
        _validate(self.n, picks)
        object.__setattr__(self, "picks", picks)

    def pick(self, a: int) -> Pair:
        return self.picks[a - 1]

    def image(self) -> frozenset[Pair]:
        """The set of distinct picked pairs."""
        return frozenset(self.picks)

    def __str__(self) -> str:
        return serialize(self)


def _validate(n: int, picks: Sequence[Pair]) -> None:
    if n < 4:
        raise ValidationError(f"need at least 4 points, got n={n}")
    if len(picks) != n:
        raise WrongTokenCount(len(picks), n)
    for a, (b, c) in enumerate(picks, start=1):
        for x in (b, c):
            if not 1 <= x <= n:
                raise IndexOutOfRange(x, n)
        if b == c or a in (b, c):
            raise PairContainsOwner(a)


def make_structure(n: int, picks) -> GromovStructure:
    """Validate ``picks`` and return the structure.

    ``picks`` is either a mapping ``node -> (b, c)`` or an iterable of
    ``(node, (b, c))`` items; every node 1..n must own exactly one pair.
    """
    items = picks.items() if hasattr(picks, "items") else picks
    owned: dict[int, Pair] = {}
    for node, pair in items:
        node = int(node)
        if not 1 <= node <= n:
            raise IndexOutOfRange(node, n)
        if node in owned:
            raise DuplicateNode(node)
        b, c = pair
        owned[node] = (int(b), int(c))
    for a in range(1, n + 1):
        if a not in owned:
            raise MissingNode(a)
    for a in range(1, n + 1):
        b, c = owned[a]
        for x in (b, c):
            if not 1 <= x <= n:
                raise IndexOutOfRange(x, n)
        if b == c or a in (b, c):
            raise PairContainsOwner(a)
    return GromovStructure(n, tuple(owned[a] for a in range(1, n + 1)))


def apply_permutation(s: GromovStructure, p: Permutation) -> GromovStructure:
    """Relabel: node ``p(a)`` picks ``{p(b), p(c)}``."""
    if p.n != s.n:
        raise LengthMismatch(s.n, p.n)
    out: list[Pair] = [(0, 0)] * s.n
    for a, (b, c) in enumerate(s.picks, start=1):
        x, y = p(b), p(c)
        out[p(a) - 1] = (x, y) if x < y else (y, x)
    return GromovStructure(s.n, tuple(out))


def serialize(s: GromovStructure, sep: str = ",") -> str:
    if s.n <= 9:
        return sep.join(f"{a}{b}{c}" for a, (b, c) in enumerate(s.picks, start=1))
    return ";".join(f"{a}:{b},{c}" for a, (b, c) in enumerate(s.picks, start=1))


_LONG = re.compile(r"^\s*(\d+)\s*:\s*(\d+)\s*,\s*(\d+)\s*$")


def parse(text: str, n: int | None = None) -> GromovStructure:
    """Parse compact (``124,213 ...``) or long (``1:2,4; 2:1,3``) notation.

    ``n`` defaults to the number of tokens.
    """
    text = text.strip()
    if ":" in text:
        raw = [t for t in re.split(r"[;\s]+(?=\d+\s*:)", text) if t.strip()]
        triples = []
        for tok in raw:
            m = _LONG.match(tok.strip().rstrip(";"))
            if not m:
                raise MalformedToken(tok)
            triples.append(tuple(int(g) for g in m.groups()))
    else:
        raw = [t for t in re.split(r"[,\s]+", text) if t]
        triples = []
        for tok in raw:
            if len(tok) != 3 or not tok.isdigit() or "0" in tok:
                raise MalformedToken(tok)
            triples.append(tuple(int(ch) for ch in tok))
    if n is None:
        n = len(triples)
    elif n > 9 and ":" not in text:
        raise ValidationError("compact notation supports n <= 9 only")
    if len(triples) != n:
        raise WrongTokenCount(len(triples), n)
    return make_structure(n, [(a, (b, c)) for a, b, c in triples])


# Integer codes: the 0-based index of each node's pair in lexicographic pair order.
# Lexicographic order on codes equals lexicographic order on serializations.


@lru_cache(maxsize=None)
def pair_table(n: int) -> tuple[tuple[Pair, ...], dict[Pair, int]]:
    pairs = tuple(combinations(range(1, n + 1), 2))
    return pairs, {p: i for i, p in enumerate(pairs)}


def to_code(s: GromovStructure) -> tuple[int, ...]:
    index = pair_table(s.n)[1]
    return tuple(index[p] for p in s.picks)


def from_code(n: int, code: Iterable[int]) -> GromovStructure:
    pairs = pair_table(n)[0]
    return GromovStructure(n, tuple(pairs[int(i)] for i in code))


def structures_from_codes(n: int, codes) -> list[GromovStructure]:
    return [from_code(n, row) for row in codes]
