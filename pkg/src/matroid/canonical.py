"""Canonical chirotope strings for uniform oriented matroids, modulo relabelling, reorientation and negation."""

from __future__ import annotations

import hashlib
import logging
from collections import Counter
from functools import lru_cache
from typing import Iterator, Optional, Sequence

from src.config_loader import CONFIG
from src.errors import PreconditionError
from src.matroid.chirotope import Chirotope, bases_in_order, permutation_sign
from src.matroid.oriented_matroid import OrientedMatroid
from src.signs.sign_vector import mask_of

logger = logging.getLogger(__name__)

HASH_PREFIX = "~"


def _mutation_bases(om: OrientedMatroid) -> list[tuple[int, ...]]:
    # local import: faces depends on matroid
    from src.faces.mutations import mutations

    return [c.basis for c in mutations(om, cross_check=False)]


def _refine(n: int, bases: Sequence[tuple[int, ...]], colour: dict[int, int]) -> dict[int, int]:
    """Split colour classes by the colours met in the mutation bases through each element until stable."""
    while True:
        signature = {}
        for e in range(n):
            around = sorted(tuple(sorted(colour[b] for b in basis if b != e)) for basis in bases if e in basis)
            signature[e] = (colour[e], tuple(around))
        ranks = {sig: i for i, sig in enumerate(sorted(set(signature.values())))}
        refined = {e: ranks[signature[e]] for e in range(n)}
        if len(set(refined.values())) == len(set(colour.values())):
            return refined
        colour = refined


def _classes(colour: dict[int, int]) -> list[list[int]]:
    classes: dict[int, list[int]] = {}
    for e in sorted(colour):
        classes.setdefault(colour[e], []).append(e)
    return [classes[c] for c in sorted(classes)]


def element_classes(om: OrientedMatroid, mutation_bases: Optional[Sequence[tuple[int, ...]]] = None) -> list[list[int]]:
    """Colour refinement of the elements by their co-membership in mutation bases.

    The colours are invariant under relabelling, reorientation and negation.
    """
    bases = _mutation_bases(om) if mutation_bases is None else list(mutation_bases)
    return _classes(_refine(om.n, bases, {e: 0 for e in range(om.n)}))


def _individualized(colour: dict[int, int], v: int) -> dict[int, int]:
    keyed = {e: (c, 0 if e == v else 1) for e, c in colour.items()}
    ranks = {k: i for i, k in enumerate(sorted(set(keyed.values())))}
    return {e: ranks[k] for e, k in keyed.items()}


def _leaf_orders(n: int, bases: Sequence[tuple[int, ...]], colour: dict[int, int]) -> Iterator[list[int]]:
    """Discrete refinements reached by individualizing one element of the first split-able class at a time."""
    cells = _classes(colour)
    target = next((cell for cell in cells if len(cell) > 1), None)
    if target is None:
        yield [cell[0] for cell in cells]
        return
    for v in target:
        yield from _leaf_orders(n, bases, _refine(n, bases, _individualized(colour, v)))


def _gf2_solvers(rows: Sequence[int], n: int) -> list[int]:
    """For each row i a mask A_i with parity(rows[j] & A_i) = [i == j]."""
    reduced: list[tuple[int, int, int]] = []  # (row, combination of originals, pivot bit)
    for i, row in enumerate(rows):
        combo = 1 << i
        for r_row, r_combo, pivot in reduced:
            if row >> pivot & 1:
                row ^= r_row
                combo ^= r_combo
        if not row:
            raise PreconditionError("Pivot bases are not independent over GF(2)")
        pivot = (row & -row).bit_length() - 1
        updated = []
        for r_row, r_combo, r_pivot in reduced:
            if r_row >> pivot & 1:
                r_row ^= row
                r_combo ^= combo
            updated.append((r_row, r_combo, r_pivot))
        reduced = updated + [(row, combo, pivot)]
    solvers = []
    for i in range(len(rows)):
        a = 0
        for _, combo, pivot in reduced:
            if combo >> i & 1:
                a |= 1 << pivot
        solvers.append(a)
    return solvers


def _pivot_bases(n: int, r: int) -> list[int]:
    """Greedy GF(2)-independent set of basis masks, first in lexicographic order."""
    chosen: list[int] = []
    echelon: dict[int, int] = {}
    for basis in bases_in_order(n, r):
        row = mask_of(basis)
        while row:
            pivot = (row & -row).bit_length() - 1
            if pivot not in echelon:
                echelon[pivot] = row
                chosen.append(mask_of(basis))
                break
            row ^= echelon[pivot]
    return chosen


@lru_cache(maxsize=None)
def _reorientation_frame(n: int, r: int) -> tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]:
    masks = tuple(mask_of(b) for b in bases_in_order(n, r))
    pivots = _pivot_bases(n, r)
    return masks, tuple(masks.index(p) for p in pivots), tuple(_gf2_solvers(pivots, n))


class _Normalizer:
    """Reorientation normal form of relabelled chirotopes, shared across all permutations."""

    def __init__(self, chi: Chirotope):
        self.chi = chi
        self.n, self.r = chi.n, chi.rank
        self.bases = bases_in_order(self.n, self.r)
        self.masks, self.pivot_index, self.solvers = _reorientation_frame(self.n, self.r)

    def relabelled(self, old_of_new: Sequence[int]) -> list[int]:
        chi = self.chi
        values = []
        for basis in self.bases:
            old = [old_of_new[i] for i in basis]
            values.append(int(chi.basis_sign(tuple(sorted(old)))) * permutation_sign(old))
        return values

    def normalized(self, values: Sequence[int]) -> str:
        flip = 0
        for k, idx in enumerate(self.pivot_index):
            if values[idx] < 0:
                flip ^= self.solvers[k]
        chars = []
        for value, mask in zip(values, self.masks):
            if bin(mask & flip).count("1") & 1:
                value = -value
            chars.append("+" if value > 0 else "-" if value < 0 else "0")
        return "".join(chars)

    def best(self, old_of_new: Sequence[int]) -> str:
        values = self.relabelled(old_of_new)
        return min(self.normalized(values), self.normalized([-v for v in values]))


def _invariant_hash(om: OrientedMatroid, classes: list[list[int]], bases: Sequence[tuple[int, ...]]) -> str:
    sizes = [len(c) for c in classes]
    counts = Counter(e for b in bases for e in b)
    payload = f"{om.rank}:{om.n}:{len(bases)}:{sizes}:{sorted(counts.values())}"
    return HASH_PREFIX + hashlib.sha256(payload.encode()).hexdigest()[:32]


_cache: dict[tuple[Chirotope, int], str] = {}
_CACHE_LIMIT = 1 << 16


def canonical_form(
    om: OrientedMatroid,
    max_n: Optional[int] = None,
    mutation_bases: Optional[Sequence[tuple[int, ...]]] = None,
) -> str:
    """Lexicographically minimal chirotope string over relabellings, reorientations and negation.

    Returns ``"r n:<signs>"``. The relabellings searched are the discrete colourings reached by
    individualization and refinement on mutation bases; every isomorphic input reaches the same
    set of relabelled chirotopes. Above ``max_n`` elements (``OM_FORGE_CANONICAL_MAX_N``) an
    invariant hash prefixed with ``~`` is returned instead; it never separates isomorphic inputs
    but may merge non-isomorphic ones. Results are cached per labelled chirotope.
    """
    if om.chirotope is None or not om.chirotope.is_uniform():
        raise PreconditionError("Canonical forms need a uniform oriented matroid with a chirotope")
    max_n = CONFIG["canonical_max_n"] if max_n is None else max_n
    cached = _cache.get((om.chirotope, max_n))
    if cached is not None:
        return cached
    bases = _mutation_bases(om) if mutation_bases is None else list(mutation_bases)
    colour = _refine(om.n, bases, {e: 0 for e in range(om.n)})
    if om.n > max_n:
        logger.debug("n=%d above canonical limit %d, using invariant hash", om.n, max_n)
        key = _invariant_hash(om, _classes(colour), bases)
    else:
        normalizer = _Normalizer(om.chirotope)
        best: Optional[str] = None
        searched = 0
        for old_of_new in _leaf_orders(om.n, bases, colour):
            candidate = normalizer.best(old_of_new)
            searched += 1
            if best is None or candidate < best:
                best = candidate
        logger.debug("Canonical form of %r searched %d relabellings", om, searched)
        key = f"{om.rank} {om.n}:{best}"
    if len(_cache) >= _CACHE_LIMIT:
        _cache.clear()
    _cache[(om.chirotope, max_n)] = key
    return key


def is_exact_canonical(key: str) -> bool:
    return not key.startswith(HASH_PREFIX)
