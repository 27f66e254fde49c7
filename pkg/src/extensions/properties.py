"""Executable checks of how lexicographic extensions create, keep and destroy mutations."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional, Sequence

from pydantic import BaseModel

from src.errors import PreconditionError
from src.extensions.lexicographic import LexExtensionSpec, lex_extend
from src.faces.mutations import MutationCertificate, mutation_from_basis, mutations
from src.faces.topes import adjacent_cocircuits, is_tope
from src.matroid.operations import (
    Inseparability,
    delete_element,
    inseparability,
    is_general_position,
    reorient,
    swap_elements,
)
from src.matroid.oriented_matroid import OrientedMatroid, require_element
from src.programs.program import Program, cocircuit_graph
from src.signs.sign_vector import Sign

logger = logging.getLogger(__name__)


def _require_uniform(om: OrientedMatroid) -> None:
    if not om.is_uniform():
        raise PreconditionError("This check needs a uniform oriented matroid")


@dataclass(frozen=True)
class OrientedMutation:
    """An oriented matroid reoriented on ``reoriented`` so that a mutation's tope is + on its basis."""

    om: OrientedMatroid
    reoriented: tuple[int, ...]
    certificate: MutationCertificate


def orient_versus_mutation(om: OrientedMatroid, basis: Sequence[int], g: Optional[int] = None) -> OrientedMutation:
    """Reorient basis elements so the mutation's tope is + on the basis (and + at ``g`` when given)."""
    certificate = mutation_from_basis(om, basis)
    if certificate is None:
        raise PreconditionError(f"{tuple(basis)} is not a mutation")
    tope = certificate.tope
    if g is not None:
        require_element(om, g)
        if tope[g] == Sign.ZERO:
            raise PreconditionError(f"Mutation tope vanishes at {g}")
        if tope[g] == Sign.MINUS:
            tope = -tope
    flipped = tuple(e for e in certificate.basis if tope[e] == Sign.MINUS)
    oriented = reorient(om, flipped)
    new_cert = mutation_from_basis(oriented, certificate.basis)
    new_cert = new_cert.oriented(certificate.basis[0], Sign.PLUS)
    return OrientedMutation(oriented, flipped, new_cert)


def swapped_spec(spec: LexExtensionSpec) -> LexExtensionSpec:
    """[f^a1, e_2^(-a2), ..., e_k^(-ak)]."""
    return spec.with_signs([spec.signs[0]] + [-a for a in spec.signs[1:]])


def swap_isomorphic(
    first: OrientedMatroid, second: OrientedMatroid, f: int, p: int, head_sign: int = Sign.PLUS
) -> bool:
    """Exchanging f and p carries the cocircuits of ``first`` onto those of ``second``.

    With head sign - the exchange is followed by reorienting both elements.
    """
    moved = swap_elements(first, f, p)
    if head_sign == Sign.MINUS:
        moved = reorient(moved, (f, p))
    return moved.cocircuits == second.cocircuits


def swap_isomorphism_check(om: OrientedMatroid, spec: LexExtensionSpec) -> bool:
    """The swapped-sign extension is the original one with f and f' exchanged."""
    _require_uniform(om)
    f = spec.head
    if not is_general_position(om, f):
        raise PreconditionError(f"Head {f} is not in general position")
    second = lex_extend(om, spec)
    third = lex_extend(om, swapped_spec(spec))
    return swap_isomorphic(third, second, f, om.n, spec.signs[0])


def creation_check(om: OrientedMatroid, spec: LexExtensionSpec) -> Optional[MutationCertificate]:
    """For O' = O[f^+, e_1^+, ..., e_{r-1}^+] the certificate of [f, f', e_1, ..., e_{r-2}], if any."""
    _require_uniform(om)
    if len(spec) != om.rank or any(a != Sign.PLUS for a in spec.signs):
        raise PreconditionError("Creation needs a full-length all-plus spec")
    ext = lex_extend(om, spec)
    basis = (spec.head, om.n) + spec.elements[1: om.rank - 1]
    return mutation_from_basis(ext, basis)


def non_adjacent_mutations_preserved(om: OrientedMatroid, spec: LexExtensionSpec) -> bool:
    _require_uniform(om)
    ext = lex_extend(om, spec)
    lost = [c.basis for c in mutations(om) if spec.head not in c.basis and mutation_from_basis(ext, c.basis) is None]
    if lost:
        logger.warning("Extension %s lost non-adjacent mutations %s", spec, lost)
    return not lost


class DestructionReport(BaseModel):
    basis: list[int]
    f: int
    g: int
    reoriented: list[int]
    spec: str
    m_prime: list[int]
    m_prime_is_mutation: bool
    tope: str
    tope_adjacent_cocircuits: int
    destroyed: bool
    ok: bool


def destruction_check(
    om: OrientedMatroid,
    basis: Sequence[int],
    g: int,
    f: Optional[int] = None,
    tail: Optional[Sequence[tuple[int, int]]] = None,
) -> DestructionReport:
    """Extend by [f^+, g^-, ...] with M oriented versus itself and look at M' and the old tope.

    ``tail`` defaults to the first r-2 elements of M - f, each with sign +.
    """
    _require_uniform(om)
    basis = tuple(sorted(basis))
    f = basis[0] if f is None else f
    if f not in basis:
        raise PreconditionError(f"{f} is not in the mutation {basis}")
    if g in basis:
        raise PreconditionError(f"{g} must lie outside the mutation {basis}")
    oriented = orient_versus_mutation(om, basis, g)
    others = [e for e in basis if e != f]
    if tail is None:
        tail = [(e, 1) for e in others[: om.rank - 2]]
    spec = LexExtensionSpec.of((f, 1), (g, -1), *tail)
    ext = lex_extend(oriented.om, spec)
    p = om.n
    m_prime = tuple(sorted(others + [p]))
    m_prime_ok = mutation_from_basis(ext, m_prime) is not None
    old_tope = oriented.certificate.tope.append(Sign.MINUS)
    count = len(adjacent_cocircuits(ext, old_tope)) if is_tope(ext, old_tope) else 0
    destroyed = count > om.rank
    return DestructionReport(
        basis=list(basis),
        f=f,
        g=g,
        reoriented=list(oriented.reoriented),
        spec=spec.to_string(),
        m_prime=list(m_prime),
        m_prime_is_mutation=m_prime_ok,
        tope=old_tope.to_string(),
        tope_adjacent_cocircuits=count,
        destroyed=destroyed,
        ok=m_prime_ok and (destroyed or om.rank < 3),
    )


class ContravariantMutationReport(BaseModel):
    f: int
    f_prime: int
    negative_part_empty: bool
    mutation: Optional[list[int]] = None
    survives_deletion: bool = False


def contravariant_mutation_check(om: OrientedMatroid, f: int, f_prime: int) -> ContravariantMutationReport:
    """For a contravariant pair (f, f') with f' in general position: G_f^- of (om, f', f) is empty,
    and f has a mutation whose cocircuits all have f' = + and which survives deleting f'."""
    if inseparability(om, f, f_prime) is not Inseparability.CONTRAVARIANT:
        raise PreconditionError(f"({f}, {f_prime}) is not a contravariant pair")
    if not is_general_position(om, f_prime):
        raise PreconditionError(f"{f_prime} is not in general position")
    graph = cocircuit_graph(Program(om, f_prime, f))
    report = ContravariantMutationReport(f=f, f_prime=f_prime, negative_part_empty=not graph.negative_part())
    bit = 1 << f_prime
    for cert in mutations(om):
        if f not in cert.basis or f_prime in cert.basis:
            continue
        oriented = cert.oriented(f, Sign.PLUS)
        if not all(x.plus & bit for x in oriented.cocircuits):
            continue
        report.mutation = list(cert.basis)
        shifted = [e - 1 if e > f_prime else e for e in cert.basis]
        report.survives_deletion = mutation_from_basis(delete_element(om, f_prime), shifted) is not None
        break
    return report

