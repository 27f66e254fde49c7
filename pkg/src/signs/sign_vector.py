"""Signs, packed sign vectors and the composition/separation/conformality primitives."""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum
from typing import Iterable, Iterator, Sequence

from src.errors import LengthMismatchError, ParseError

_CHARS = {"+": 1, "-": -1, "0": 0}


class Sign(IntEnum):
    MINUS = -1
    ZERO = 0
    PLUS = 1

    def __neg__(self) -> "Sign":
        return Sign(-int(self))

    def __mul__(self, other: object) -> "Sign":
        return Sign(int(self) * int(other))  # type: ignore[arg-type]

    __rmul__ = __mul__

    @property
    def char(self) -> str:
        return "+" if self is Sign.PLUS else "-" if self is Sign.MINUS else "0"

    @classmethod
    def from_char(cls, char: str) -> "Sign":
        try:
            return cls(_CHARS[char])
        except KeyError as exc:
            raise ParseError(f"Invalid sign character: {char!r}") from exc

    @classmethod
    def of(cls, value) -> "Sign":
        """Sign of a number (int, Fraction, ...)."""
        return cls.PLUS if value > 0 else cls.MINUS if value < 0 else cls.ZERO


def mask_of(elements: Iterable[int]) -> int:
    mask = 0
    for e in elements:
        mask |= 1 << e
    return mask


def elements_of(mask: int) -> frozenset[int]:
    return frozenset(iter_bits(mask))


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True, slots=True)
class SignVector:
    """A {+,0,-} assignment to the ground set 0..n-1, packed as two disjoint bitmasks."""

    n: int
    plus: int = 0
    minus: int = 0

    @classmethod
    def from_signs(cls, signs: Sequence[int]) -> "SignVector":
        plus = minus = 0
        for e, s in enumerate(signs):
            if s > 0:
                plus |= 1 << e
            elif s < 0:
                minus |= 1 << e
        return cls(len(signs), plus, minus)

    @classmethod
    def from_string(cls, text: str) -> "SignVector":
        return cls.from_signs([Sign.from_char(c) for c in text.strip()])

    @classmethod
    def zero(cls, n: int) -> "SignVector":
        return cls(n)

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    @property
    def support_mask(self) -> int:
        return self.plus | self.minus

    @property
    def zero_mask(self) -> int:
        return self.full & ~(self.plus | self.minus)

    def support(self) -> frozenset[int]:
        return elements_of(self.support_mask)

    def zero_set(self) -> frozenset[int]:
        return elements_of(self.zero_mask)

    def is_zero(self) -> bool:
        return not (self.plus or self.minus)

    def __getitem__(self, e: int) -> Sign:
        if not 0 <= e < self.n:
            raise IndexError(f"Element {e} outside ground set of size {self.n}")
        bit = 1 << e
        if self.plus & bit:
            return Sign.PLUS
        if self.minus & bit:
            return Sign.MINUS
        return Sign.ZERO

    def __len__(self) -> int:
        return self.n

    def __iter__(self) -> Iterator[Sign]:
        return (self[e] for e in range(self.n))

    def __neg__(self) -> "SignVector":
        return SignVector(self.n, self.minus, self.plus)

    def __str__(self) -> str:
        return self.to_string()

    def to_string(self) -> str:
        return "".join(s.char for s in self)

    def sort_key(self) -> str:
        return self.to_string()

    def _check(self, other: "SignVector") -> None:
        if self.n != other.n:
            raise LengthMismatchError(f"Sign vectors of lengths {self.n} and {other.n}")

    def compose(self, other: "SignVector") -> "SignVector":
        self._check(other)
        free = ~self.support_mask
        return SignVector(self.n, self.plus | (other.plus & free), self.minus | (other.minus & free))

    def separation_mask(self, other: "SignVector") -> int:
        self._check(other)
        return (self.plus & other.minus) | (self.minus & other.plus)

    def separation(self, other: "SignVector") -> frozenset[int]:
        return elements_of(self.separation_mask(other))

    def conformal(self, other: "SignVector") -> bool:
        return not self.separation_mask(other)

    def conforms_to(self, other: "SignVector") -> bool:
        """X <= T: every nonzero entry of X equals the entry of T."""
        self._check(other)
        return not (self.plus & ~other.plus) and not (self.minus & ~other.minus)

    def with_entry(self, e: int, sign: int) -> "SignVector":
        bit = 1 << e
        plus, minus = self.plus & ~bit, self.minus & ~bit
        if sign > 0:
            plus |= bit
        elif sign < 0:
            minus |= bit
        return SignVector(self.n, plus, minus)

    def append(self, sign: int) -> "SignVector":
        return SignVector(self.n + 1, self.plus, self.minus).with_entry(self.n, sign)

    def reorient(self, mask: int) -> "SignVector":
        keep = ~mask
        return SignVector(
            self.n,
            (self.plus & keep) | (self.minus & mask),
            (self.minus & keep) | (self.plus & mask),
        )

    def restrict(self, elements: Sequence[int]) -> "SignVector":
        """Sign vector on ``elements`` (in the given order), relabelled 0..len-1."""
        return SignVector.from_signs([self[e] for e in elements])

    def permute(self, new_of_old: Sequence[int]) -> "SignVector":
        """Move entry e to position ``new_of_old[e]``."""
        plus = minus = 0
        for e in iter_bits(self.plus):
            plus |= 1 << new_of_old[e]
        for e in iter_bits(self.minus):
            minus |= 1 << new_of_old[e]
        return SignVector(self.n, plus, minus)

    def pad(self, before: int, after: int) -> "SignVector":
        return SignVector(self.n + before + after, self.plus << before, self.minus << before)


def compose(x: SignVector, y: SignVector) -> SignVector:
    return x.compose(y)


def separation(x: SignVector, y: SignVector) -> frozenset[int]:
    return x.separation(y)


def conformal(x: SignVector, y: SignVector) -> bool:
    return x.conformal(y)


def compose_all(vectors: Iterable[SignVector], n: int) -> SignVector:
    result = SignVector.zero(n)
    for v in vectors:
        result = result.compose(v)
    return result
