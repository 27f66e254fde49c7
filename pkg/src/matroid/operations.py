"""Structural operations: duality, minors, reorientation, relabelling, direct sums and element tests."""

from __future__ import annotations

import logging
from enum import Enum
from itertools import combinations
from typing import Iterable, Optional, Sequence

from src.errors import PreconditionError
from src.matroid.chirotope import Chirotope, permutation_sign
from src.matroid.oriented_matroid import (
    OrientedMatroid,
    Provenance,
    cocircuits_from_chirotope,
    require_element,
)
from src.signs.sign_vector import Sign, SignVector, elements_of, mask_of

logger = logging.getLogger(__name__)


class Inseparability(str, Enum):
    CONTRAVARIANT = "contravariant"
    COVARIANT = "covariant"


# -- duality -------------------------------------------------------------------------------


def dual_chirotope(chi: Chirotope) -> Chirotope:
    """chi*(D) = sign(perm(B, D)) * chi(B) where B is the complement of D."""
    n, r = chi.n, chi.rank
    ground = set(range(n))

    def value(d: tuple[int, ...]) -> int:
        b = tuple(sorted(ground - set(d)))
        return permutation_sign(b + d) * chi.basis_sign(b)

    return Chirotope.from_function(n - r, n, value)


def _orthogonal(c: SignVector, d: SignVector) -> bool:
    agree = (c.plus & d.plus) | (c.minus & d.minus)
    disagree = (c.plus & d.minus) | (c.minus & d.plus)
    return (agree == 0) == (disagree == 0)


def circuits(om: OrientedMatroid) -> frozenset[SignVector]:
    """Support-minimal nonzero sign vectors orthogonal to every cocircuit."""
    found_supports: list[int] = []
    result: set[SignVector] = set()
    cocircuits = om.ordered_cocircuits
    for size in range(1, om.n + 1):
        for subset in combinations(range(om.n), size):
            smask = mask_of(subset)
            if any(not (s & ~smask) for s in found_supports):
                continue
            found = False
            tail = subset[1:]
            for pattern in range(1 << len(tail)):
                minus = mask_of(e for i, e in enumerate(tail) if (pattern >> i) & 1)
                candidate = SignVector(om.n, smask & ~minus, minus)
                if all(_orthogonal(candidate, d) for d in cocircuits):
                    result.add(candidate)
                    result.add(-candidate)
                    found = True
            if found:
                found_supports.append(smask)
    return frozenset(result)


def dual(om: OrientedMatroid) -> OrientedMatroid:
    if om.chirotope is not None and om.n > om.rank:
        return cocircuits_from_chirotope(dual_chirotope(om.chirotope), Provenance.DERIVED, om.labels, validate=False)
    return OrientedMatroid.build(circuits(om), om.n, om.n - om.rank, Provenance.DERIVED, labels=om.labels)


# -- minors --------------------------------------------------------------------------------


def _minor_chirotope(om: OrientedMatroid, keep: Sequence[int], contract: Sequence[int]) -> Optional[Chirotope]:
    chi = om.chirotope
    if chi is None:
        return None
    contract = tuple(sorted(contract))
    if om.rank_of_mask(mask_of(contract)) != len(contract):
        return None
    if om.rank_of_mask(mask_of(list(keep) + list(contract))) != om.rank:
        return None
    new_rank = om.rank - len(contract)
    if new_rank < 1:
        return None
    return Chirotope.from_function(
        new_rank, len(keep), lambda b: chi(*(keep[i] for i in b), *contract)
    )


def minor(om: OrientedMatroid, delete: Iterable[int] = (), contract: Iterable[int] = ()) -> OrientedMatroid:
    """(om / contract) \\ delete on the remaining elements, relabelled in increasing order."""
    d_mask, c_mask = mask_of(delete), mask_of(contract)
    if d_mask & c_mask:
        raise PreconditionError("Deleted and contracted sets overlap")
    if (d_mask | c_mask) == om.full:
        raise PreconditionError("Cannot delete or contract the whole ground set")
    if not d_mask and not c_mask:
        return om
    keep = [e for e in range(om.n) if not ((d_mask | c_mask) >> e) & 1]
    restricted = {
        x.restrict(keep) for x in om.ordered_cocircuits if not x.support_mask & c_mask
    }
    restricted.discard(SignVector.zero(len(keep)))
    supports = {x.support_mask for x in restricted}
    minimal = {
        x for x in restricted
        if not any(s != x.support_mask and not (s & ~x.support_mask) for s in supports)
    }
    rank = om.rank_of_mask(om.full & ~d_mask) - om.rank_of_mask(c_mask)
    labels = tuple(om.labels[e] for e in keep) if om.labels else None
    chi = _minor_chirotope(om, keep, sorted(elements_of(c_mask)))
    return OrientedMatroid.build(minimal, len(keep), rank, Provenance.DERIVED, chi, labels)


def delete_element(om: OrientedMatroid, e: int) -> OrientedMatroid:
    return minor(om, delete={e})


def contract_element(om: OrientedMatroid, e: int) -> OrientedMatroid:
    return minor(om, contract={e})


# -- reorientation, relabelling, sums ------------------------------------------------------


def reorient(om: OrientedMatroid, elements: Iterable[int]) -> OrientedMatroid:
    mask = mask_of(elements)
    if not mask:
        return om
    chi = None
    if om.chirotope is not None:
        c = om.chirotope
        chi = Chirotope(
            c.rank, c.n,
            tuple(s * (-1 if bin(mask_of(b) & mask).count("1") & 1 else 1) for b, s in c.items()),
        )
    return OrientedMatroid.build(
        (x.reorient(mask) for x in om.ordered_cocircuits), om.n, om.rank, Provenance.DERIVED, chi, om.labels
    )


def relabel(om: OrientedMatroid, new_of_old: Sequence[int]) -> OrientedMatroid:
    """Move element e to position ``new_of_old[e]``."""
    if sorted(new_of_old) != list(range(om.n)):
        raise PreconditionError("Relabelling is not a permutation of the ground set")
    old_of_new = [0] * om.n
    for old, new in enumerate(new_of_old):
        old_of_new[new] = old
    chi = None
    if om.chirotope is not None:
        c = om.chirotope
        chi = Chirotope.from_function(c.rank, c.n, lambda b: c(*(old_of_new[i] for i in b)))
    labels = tuple(om.labels[old_of_new[i]] for i in range(om.n)) if om.labels else None
    return OrientedMatroid.build(
        (x.permute(new_of_old) for x in om.ordered_cocircuits), om.n, om.rank, Provenance.DERIVED, chi, labels
    )


def swap_elements(om: OrientedMatroid, a: int, b: int) -> OrientedMatroid:
    perm = list(range(om.n))
    perm[a], perm[b] = b, a
    return relabel(om, perm)


def direct_sum(om1: OrientedMatroid, om2: OrientedMatroid) -> OrientedMatroid:
    vectors = [x.pad(0, om2.n) for x in om1.ordered_cocircuits]
    vectors += [y.pad(om1.n, 0) for y in om2.ordered_cocircuits]
    labels = None
    if om1.labels or om2.labels:
        labels = tuple(om1.label(e) for e in range(om1.n)) + tuple(om2.label(e) for e in range(om2.n))
    return OrientedMatroid.build(vectors, om1.n + om2.n, om1.rank + om2.rank, Provenance.DERIVED, labels=labels)


# -- element tests -------------------------------------------------------------------------


def is_general_position(om: OrientedMatroid, e: int) -> bool:
    """No hyperplane through e is already spanned by its other elements."""
    require_element(om, e)
    bit = 1 << e
    for h in om.hyperplanes:
        if h & bit and om.rank_of_mask(h & ~bit) == om.rank - 1:
            return False
    return True


def inseparable_partners(om: OrientedMatroid, f: int) -> list[tuple[int, Inseparability]]:
    """Elements g whose signs agree (contravariant) or oppose (covariant) f's on every co-supported cocircuit."""
    require_element(om, f)
    if om.is_loop(f):
        raise PreconditionError(f"Element {f} is a loop")
    partners = []
    for g in range(om.n):
        if g == f:
            continue
        relations = {x[f] * x[g] for x in om.ordered_cocircuits if x[f] != Sign.ZERO and x[g] != Sign.ZERO}
        if relations == {Sign.PLUS}:
            partners.append((g, Inseparability.CONTRAVARIANT))
        elif relations == {Sign.MINUS}:
            partners.append((g, Inseparability.COVARIANT))
    return partners


def inseparability(om: OrientedMatroid, f: int, g: int) -> Optional[Inseparability]:
    return dict(inseparable_partners(om, f)).get(g)


def exists_u24_minor(om: OrientedMatroid, through: Optional[int] = None) -> bool:
    """Search contractions by independent (r-2)-sets and 4-element restrictions for U_{2,4}."""
    if through is not None:
        require_element(om, through)
    r = om.rank
    if r < 2 or om.n < 4:
        return False
    for quad in combinations(range(om.n), 4):
        if through is not None and through not in quad:
            continue
        rest = [e for e in range(om.n) if e not in quad]
        for contract in combinations(rest, r - 2):
            c_mask = mask_of(contract)
            if om.rank_of_mask(c_mask) != r - 2:
                continue
            if all(om.rank_of_mask(c_mask | (1 << a) | (1 << b)) == r for a, b in combinations(quad, 2)):
                logger.debug("U24 minor on %s contracting %s", quad, contract)
                return True
    return False


def has_cosupported_cocircuit(om: OrientedMatroid, g: int, f: int) -> bool:
    """Some cocircuit is nonzero on both g and f."""
    both = (1 << g) | (1 << f)
    return any(x.support_mask & both == both for x in om.ordered_cocircuits)


