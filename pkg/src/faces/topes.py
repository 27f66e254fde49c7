"""Covector closure, topes and their adjacent cocircuits."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache

from src.errors import PreconditionError
from src.matroid.oriented_matroid import OrientedMatroid
from src.signs.sign_vector import SignVector, compose_all

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Tope:
    vector: SignVector
    adjacent_cocircuits: frozenset[SignVector]

    @property
    def size(self) -> int:
        return len(self.adjacent_cocircuits)


@lru_cache(maxsize=64)
def covectors(om: OrientedMatroid) -> frozenset[SignVector]:
    """Nonzero covectors: closure of the cocircuits under composition."""
    cocircuits = om.ordered_cocircuits
    found = set(cocircuits)
    frontier = list(cocircuits)
    while frontier:
        layer = []
        for x in frontier:
            free = x.zero_mask
            for c in cocircuits:
                if not c.support_mask & free:
                    continue
                y = x.compose(c)
                if y not in found:
                    found.add(y)
                    layer.append(y)
        frontier = layer
    logger.debug("Covector closure of %r has %d elements", om, len(found))
    return frozenset(found)


def adjacent_cocircuits(om: OrientedMatroid, vector: SignVector) -> frozenset[SignVector]:
    return frozenset(x for x in om.ordered_cocircuits if x.conforms_to(vector))


@lru_cache(maxsize=64)
def topes(om: OrientedMatroid) -> frozenset[Tope]:
    loops = om.loops_mask()
    return frozenset(
        Tope(v, adjacent_cocircuits(om, v)) for v in covectors(om) if v.zero_mask == loops
    )


def is_tope(om: OrientedMatroid, vector: SignVector) -> bool:
    """A full-support vector is a tope iff it is the composition of the cocircuits below it."""
    if vector.n != om.n or vector.zero_mask != om.loops_mask():
        return False
    below = sorted(adjacent_cocircuits(om, vector), key=SignVector.sort_key)
    return compose_all(below, om.n) == vector


def is_simplicial_tope(om: OrientedMatroid, vector: SignVector) -> bool:
    if not is_tope(om, vector):
        raise PreconditionError(f"{vector} is not a tope")
    return len(adjacent_cocircuits(om, vector)) == om.rank


def simplicial_topes(om: OrientedMatroid) -> frozenset[SignVector]:
    return frozenset(t.vector for t in topes(om) if t.size == om.rank)
