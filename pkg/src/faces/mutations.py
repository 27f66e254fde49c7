"""Mutations (simplicial topes) certified by bases, adjacency statistics and mutation flips."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterable, Optional, Sequence

from src.config_loader import CONFIG
from src.errors import PreconditionError, StaleCertificateError, ValidationError, VerificationError
from src.faces.topes import adjacent_cocircuits, simplicial_topes
from src.matroid.oriented_matroid import OrientedMatroid, Provenance, cocircuits_from_chirotope
from src.matroid.validation import validate_chirotope
from src.signs.sign_vector import SignVector, compose_all, iter_bits, mask_of
from src.utils.parallel import thread_map

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MutationCertificate:
    """A basis whose base cocircuits are pairwise conformal after sign normalization."""

    basis: tuple[int, ...]
    base_cocircuits: tuple[tuple[int, SignVector], ...]
    tope: SignVector

    @property
    def cocircuits(self) -> tuple[SignVector, ...]:
        return tuple(x for _, x in self.base_cocircuits)

    def cocircuit_of(self, b: int) -> SignVector:
        return dict(self.base_cocircuits)[b]

    def contains(self, e: int) -> bool:
        return e in self.basis

    def oriented(self, e: int, sign: int = 1) -> "MutationCertificate":
        """The same mutation with its tope pair member chosen so that tope[e] == sign."""
        if self.tope[e] == sign:
            return self
        return MutationCertificate(
            self.basis, tuple((b, -x) for b, x in self.base_cocircuits), -self.tope
        )

    def as_dict(self) -> dict:
        return {
            "basis": list(self.basis),
            "tope": self.tope.to_string(),
            "cocircuits": {str(b): x.to_string() for b, x in self.base_cocircuits},
        }


def base_cocircuit(om: OrientedMatroid, basis: Sequence[int], b: int) -> SignVector:
    """c*(b, B): the cocircuit vanishing on B - b, normalized to be + at b."""
    rest = mask_of(e for e in basis if e != b)
    bit = 1 << b
    for x in om.ordered_cocircuits:
        if x.plus & bit and not rest & ~x.zero_mask:
            return x
    raise PreconditionError(f"No base cocircuit for {b} in {tuple(basis)}")


def mutation_from_basis(om: OrientedMatroid, basis: Iterable[int]) -> Optional[MutationCertificate]:
    basis = tuple(sorted(basis))
    if not om.is_basis(basis):
        raise PreconditionError(f"{basis} is not a basis")
    base = [base_cocircuit(om, basis, b) for b in basis]
    first, others = base[0], base[1:]
    for signs in product((1, -1), repeat=len(others)):
        chosen = [first] + [x if s > 0 else -x for x, s in zip(others, signs)]
        if all(x.conformal(y) for x, y in combinations(chosen, 2)):
            return MutationCertificate(basis, tuple(zip(basis, chosen)), compose_all(chosen, om.n))
    return None


def certificate_topes(om: OrientedMatroid, basis: Sequence[int]) -> frozenset[SignVector]:
    """Every tope composed from a pairwise-conformal normalization of the base cocircuits."""
    base = [base_cocircuit(om, basis, b) for b in basis]
    result = set()
    for signs in product((1, -1), repeat=len(base)):
        chosen = [x if s > 0 else -x for x, s in zip(base, signs)]
        if all(x.conformal(y) for x, y in combinations(chosen, 2)):
            result.add(compose_all(chosen, om.n))
    return frozenset(result)


def basis_of_simplicial_tope(om: OrientedMatroid, tope: SignVector) -> Optional[tuple[int, ...]]:
    """The basis whose base cocircuits are the tope's r cocircuits, when it is unambiguous."""
    below = list(adjacent_cocircuits(om, tope))
    if len(below) != om.rank:
        return None
    basis = []
    for i, x in enumerate(below):
        common = om.full
        for j, y in enumerate(below):
            if j != i:
                common &= y.zero_mask
        candidates = list(iter_bits(common & x.support_mask))
        if len(candidates) != 1:
            return None
        basis.append(candidates[0])
    return tuple(sorted(basis))


def mutations(
    om: OrientedMatroid, cross_check: Optional[bool] = None, threads: Optional[int] = None
) -> tuple[MutationCertificate, ...]:
    """All certificates, one per basis, in lexicographic basis order."""
    found = thread_map(lambda b: mutation_from_basis(om, b), om.bases(), threads)
    certificates = tuple(c for c in found if c is not None)
    if cross_check if cross_check is not None else CONFIG["cross_check"]:
        _cross_check(om, certificates)
    return certificates


def _cross_check(om: OrientedMatroid, certificates: Sequence[MutationCertificate]) -> None:
    expected = frozenset().union(*(certificate_topes(om, c.basis) for c in certificates)) if certificates else frozenset()
    actual = simplicial_topes(om)
    if expected != actual:
        raise VerificationError(
            "Mutation certificates disagree with simplicial tope enumeration",
            missing=sorted(t.to_string() for t in actual - expected),
            extra=sorted(t.to_string() for t in expected - actual),
        )
    if om.is_simple():
        bases = {c.basis for c in certificates}
        for t in actual:
            if basis_of_simplicial_tope(om, t) not in bases:
                raise VerificationError(f"Simplicial tope {t} has no certified basis")
    logger.debug("Cross-checked %d certificates against %d simplicial topes", len(certificates), len(actual))


def adjacent_mutation_count(
    om: OrientedMatroid, e: int, certificates: Optional[Sequence[MutationCertificate]] = None
) -> int:
    certificates = mutations(om) if certificates is None else certificates
    return sum(1 for c in certificates if c.contains(e))


def adjacency_table(
    om: OrientedMatroid, certificates: Optional[Sequence[MutationCertificate]] = None
) -> dict[int, int]:
    certificates = mutations(om) if certificates is None else certificates
    return {e: adjacent_mutation_count(om, e, certificates) for e in range(om.n)}


def l_statistic(om: OrientedMatroid, certificates: Optional[Sequence[MutationCertificate]] = None) -> int:
    """Minimum number of adjacent mutations over elements that are neither loops nor coloops."""
    table = adjacency_table(om, certificates)
    proper = om.proper_elements()
    return min((table[e] for e in proper), default=0)


def shared_cocircuits(first: MutationCertificate, second: MutationCertificate) -> frozenset[SignVector]:
    """Cocircuits (up to sign) of the two tope pairs that coincide."""
    def unsigned(c: MutationCertificate) -> set[SignVector]:
        return {min(x, -x, key=SignVector.sort_key) for x in c.cocircuits}

    return frozenset(unsigned(first) & unsigned(second))


def _require_uniform_chirotope(om: OrientedMatroid) -> None:
    if om.chirotope is None or not om.chirotope.is_uniform():
        raise PreconditionError("Mutation flips need a uniform oriented matroid with a chirotope")


def mutation_flip_valid(om: OrientedMatroid, basis: Iterable[int]) -> bool:
    """Chirotope-side test: negating chi on the basis still satisfies the GP relations."""
    _require_uniform_chirotope(om)
    return validate_chirotope(om.chirotope.negate_basis(tuple(basis)), max_violations=1).ok


def flip(om: OrientedMatroid, certificate: MutationCertificate) -> OrientedMatroid:
    _require_uniform_chirotope(om)
    current = mutation_from_basis(om, certificate.basis)
    if current is None or certificate.tope not in (current.tope, -current.tope):
        raise StaleCertificateError(f"{certificate.basis} is not a mutation of this oriented matroid")
    chi = om.chirotope.negate_basis(certificate.basis)
    report = validate_chirotope(chi, max_violations=1)
    if not report.ok:
        raise ValidationError(f"Flip at {certificate.basis} is not a chirotope", report=report)
    return cocircuits_from_chirotope(chi, Provenance.DERIVED, om.labels, validate=False)


def flip_basis(om: OrientedMatroid, basis: Iterable[int]) -> OrientedMatroid:
    certificate = mutation_from_basis(om, basis)
    if certificate is None:
        raise PreconditionError(f"{tuple(sorted(basis))} is not a mutation")
    return flip(om, certificate)
