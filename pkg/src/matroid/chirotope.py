"""Chirotopes: alternating basis-sign maps stored in lexicographic r-subset order."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Callable, Iterator, Sequence

from src.errors import ParseError, PreconditionError
from src.matroid import linear
from src.signs.sign_vector import Sign


def permutation_sign(seq: Sequence[int]) -> int:
    """+1/-1 for the parity of the sorting permutation of ``seq``; 0 on a repeated entry."""
    inversions = 0
    for i in range(len(seq)):
        a = seq[i]
        for j in range(i + 1, len(seq)):
            b = seq[j]
            if a == b:
                return 0
            if a > b:
                inversions += 1
    return -1 if inversions & 1 else 1


@lru_cache(maxsize=None)
def bases_in_order(n: int, r: int) -> tuple[tuple[int, ...], ...]:
    return tuple(combinations(range(n), r))


@lru_cache(maxsize=None)
def basis_index(n: int, r: int) -> dict[tuple[int, ...], int]:
    return {b: i for i, b in enumerate(bases_in_order(n, r))}


@dataclass(frozen=True)
class Chirotope:
    rank: int
    n: int
    signs: tuple[Sign, ...]

    def __post_init__(self):
        expected = comb(self.n, self.rank)
        if len(self.signs) != expected:
            raise ParseError(
                f"Chirotope of rank {self.rank} on {self.n} elements needs {expected} signs, got {len(self.signs)}"
            )

    @classmethod
    def from_string(cls, rank: int, n: int, text: str) -> "Chirotope":
        return cls(rank, n, tuple(Sign.from_char(c) for c in text.strip()))

    @classmethod
    def from_function(cls, rank: int, n: int, fn: Callable[[tuple[int, ...]], int]) -> "Chirotope":
        return cls(rank, n, tuple(Sign.of(fn(b)) for b in bases_in_order(n, rank)))

    def to_string(self) -> str:
        return "".join(s.char for s in self.signs)

    def bases(self) -> tuple[tuple[int, ...], ...]:
        return bases_in_order(self.n, self.rank)

    def items(self) -> Iterator[tuple[tuple[int, ...], Sign]]:
        return zip(self.bases(), self.signs)

    def basis_sign(self, basis: Sequence[int]) -> Sign:
        return self.signs[basis_index(self.n, self.rank)[tuple(basis)]]

    def __call__(self, *elements: int) -> Sign:
        """Value on an ordered r-tuple via the alternating extension."""
        parity = permutation_sign(elements)
        if parity == 0:
            return Sign.ZERO
        return self.basis_sign(tuple(sorted(elements))) * parity

    def is_uniform(self) -> bool:
        return Sign.ZERO not in self.signs

    def is_zero(self) -> bool:
        return all(s == Sign.ZERO for s in self.signs)

    def negate_basis(self, basis: Sequence[int]) -> "Chirotope":
        idx = basis_index(self.n, self.rank)[tuple(sorted(basis))]
        signs = list(self.signs)
        signs[idx] = -signs[idx]
        return Chirotope(self.rank, self.n, tuple(signs))

    def negated(self) -> "Chirotope":
        return Chirotope(self.rank, self.n, tuple(-s for s in self.signs))


def chirotope_from_points(config: Sequence[Sequence]) -> Chirotope:
    """Signs of the r x r minors of an n x r rational vector configuration."""
    rows = linear.to_fractions(config)
    if not rows:
        raise PreconditionError("Empty point configuration")
    n, r = len(rows), len(rows[0])
    if any(len(row) != r for row in rows):
        raise PreconditionError("Point configuration rows have different lengths")
    found = linear.rank(rows)
    if found < r:
        raise PreconditionError(f"Point configuration has rank {found} < {r}")
    return Chirotope.from_function(r, n, lambda b: linear.determinant([rows[i] for i in b]))
