"""The cocircuit representation of an oriented matroid with its hyperplane-based rank oracle."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations
from typing import Iterable, Optional, Sequence

import networkx as nx

from src.errors import PreconditionError, ValidationError
from src.matroid.chirotope import Chirotope
from src.matroid.validation import validate_chirotope
from src.signs.sign_vector import Sign, SignVector, elements_of, iter_bits, mask_of

logger = logging.getLogger(__name__)


class Provenance(str, Enum):
    FROM_POINTS = "from-points"
    FROM_CHIROTOPE = "from-chirotope"
    FROM_FILE = "from-file"
    DERIVED = "derived"


@dataclass(frozen=True, eq=False)
class OrientedMatroid:
    """Ground set 0..n-1 and a negation-closed cocircuit set.

    The cocircuit set is authoritative. ``chirotope`` is carried along when known and lets
    flips, lexicographic extensions and canonical forms take their fast paths.
    """

    n: int
    rank: int
    cocircuits: frozenset[SignVector]
    provenance: Provenance = Provenance.DERIVED
    chirotope: Optional[Chirotope] = None
    labels: Optional[tuple[str, ...]] = None
    _ordered: tuple[SignVector, ...] = field(init=False, repr=False)
    _hyperplanes: tuple[int, ...] = field(init=False, repr=False)
    _zero_at: tuple[tuple[SignVector, ...], ...] = field(init=False, repr=False)
    _rank_cache: dict = field(init=False, repr=False)

    def __post_init__(self):
        ordered = tuple(sorted(self.cocircuits, key=SignVector.sort_key))
        object.__setattr__(self, "_ordered", ordered)
        object.__setattr__(self, "_hyperplanes", tuple(sorted({x.zero_mask for x in ordered})))
        object.__setattr__(
            self,
            "_zero_at",
            tuple(tuple(x for x in ordered if not (x.support_mask >> e) & 1) for e in range(self.n)),
        )
        object.__setattr__(self, "_rank_cache", {})

    @classmethod
    def build(
        cls,
        cocircuits: Iterable[SignVector],
        n: int,
        rank: Optional[int] = None,
        provenance: Provenance = Provenance.DERIVED,
        chirotope: Optional[Chirotope] = None,
        labels: Optional[Sequence[str]] = None,
    ) -> "OrientedMatroid":
        vectors = frozenset(cocircuits)
        om = cls(n, rank if rank is not None else 0, vectors, provenance, chirotope,
                 tuple(labels) if labels else None)
        if rank is None:
            object.__setattr__(om, "rank", om.rank_of_mask(om.full))
        return om

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, OrientedMatroid):
            return NotImplemented
        return self.n == other.n and self.rank == other.rank and self.cocircuits == other.cocircuits

    def __hash__(self) -> int:
        return hash((self.n, self.rank, self.cocircuits))

    def __repr__(self) -> str:
        return f"OrientedMatroid(n={self.n}, rank={self.rank}, cocircuits={len(self.cocircuits)}, provenance={self.provenance.value})"

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    @property
    def ordered_cocircuits(self) -> tuple[SignVector, ...]:
        return self._ordered

    @property
    def hyperplanes(self) -> tuple[int, ...]:
        return self._hyperplanes

    def zero_at(self, e: int) -> tuple[SignVector, ...]:
        return self._zero_at[e]

    def positive_at(self, g: int) -> tuple[SignVector, ...]:
        bit = 1 << g
        return tuple(x for x in self._ordered if x.plus & bit)

    def label(self, e: int) -> str:
        return self.labels[e] if self.labels else str(e)

    # -- rank oracle -------------------------------------------------------------------------

    def closure_mask(self, mask: int) -> int:
        result = self.full
        for h in self._hyperplanes:
            if not mask & ~h:
                result &= h
        return result

    def rank_of_mask(self, mask: int) -> int:
        cached = self._rank_cache.get(mask)
        if cached is not None:
            return cached
        independent, rank = 0, 0
        closure = self.closure_mask(0)
        for e in iter_bits(mask):
            if not (closure >> e) & 1:
                independent |= 1 << e
                rank += 1
                closure = self.closure_mask(independent)
        self._rank_cache[mask] = rank
        return rank

    def is_basis(self, elements: Iterable[int]) -> bool:
        elements = list(elements)
        return len(set(elements)) == self.rank and self.rank_of_mask(mask_of(elements)) == self.rank

    def bases(self) -> list[tuple[int, ...]]:
        return [b for b in combinations(range(self.n), self.rank) if self.rank_of_mask(mask_of(b)) == self.rank]

    # -- element structure -------------------------------------------------------------------

    def loops_mask(self) -> int:
        support = 0
        for x in self._ordered:
            support |= x.support_mask
        return self.full & ~support

    def is_loop(self, e: int) -> bool:
        return bool((self.loops_mask() >> e) & 1)

    def is_coloop(self, e: int) -> bool:
        return any(x.support_mask == 1 << e for x in self._ordered)

    def proper_elements(self) -> list[int]:
        """Elements that are neither loops nor coloops."""
        return [e for e in range(self.n) if not self.is_loop(e) and not self.is_coloop(e)]

    def is_uniform(self) -> bool:
        if self.chirotope is not None:
            return self.chirotope.is_uniform()
        return self.n >= self.rank and all(
            bin(h).count("1") == self.rank - 1 for h in self._hyperplanes
        )

    def is_simple(self) -> bool:
        if self.loops_mask():
            return False
        return all(self.rank_of_mask((1 << a) | (1 << b)) == 2 for a, b in combinations(range(self.n), 2))

    def components(self) -> list[frozenset[int]]:
        """Connected components: elements linked through shared cocircuit supports."""
        graph = nx.Graph()
        graph.add_nodes_from(range(self.n))
        for x in self._ordered:
            elems = sorted(x.support())
            graph.add_edges_from(zip(elems, elems[1:]))
        return sorted((frozenset(c) for c in nx.connected_components(graph)), key=min)

    def is_connected(self) -> bool:
        return len(self.components()) == 1


def cocircuits_from_chirotope(
    chi: Chirotope,
    provenance: Provenance = Provenance.FROM_CHIROTOPE,
    labels: Optional[Sequence[str]] = None,
    validate: bool = True,
) -> OrientedMatroid:
    """For each (r-1)-subset A spanning a hyperplane emit +-C with C_e = chi(e, A)."""
    if validate:
        report = validate_chirotope(chi, max_violations=1)
        if not report.ok:
            raise ValidationError("Invalid chirotope", report=report)
    vectors: set[SignVector] = set()
    for a in combinations(range(chi.n), chi.rank - 1):
        signs = [chi(e, *a) for e in range(chi.n)]
        if all(s == Sign.ZERO for s in signs):
            continue
        x = SignVector.from_signs(signs)
        vectors.add(x)
        vectors.add(-x)
    return OrientedMatroid.build(vectors, chi.n, chi.rank, provenance, chi, labels)


def subset_rank(om: OrientedMatroid, elements: Iterable[int]) -> int:
    return om.rank_of_mask(mask_of(elements))


def closure(om: OrientedMatroid, elements: Iterable[int]) -> frozenset[int]:
    return elements_of(om.closure_mask(mask_of(elements)))


def require_element(om: OrientedMatroid, e: int) -> None:
    if not 0 <= e < om.n:
        raise PreconditionError(f"Element {e} outside ground set 0..{om.n - 1}")
