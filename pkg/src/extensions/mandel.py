"""Commuting flips with lexicographic extensions, and the Mandel extension built from a Euclidean mutant."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional, Sequence

from pydantic import BaseModel

from src.errors import PreconditionError, VerificationError
from src.extensions.properties import orient_versus_mutation, swap_isomorphic
from src.extensions.lexicographic import LexExtensionSpec, lex_extend
from src.faces.mutations import flip_basis, mutation_from_basis
from src.matroid.operations import contract_element, delete_element, reorient
from src.matroid.oriented_matroid import OrientedMatroid
from src.programs.program import Program, is_euclidean, is_euclidean_om

logger = logging.getLogger(__name__)


def _split(om: OrientedMatroid, basis: Sequence[int], f: Optional[int], g: int) -> tuple[int, list[int]]:
    if not om.is_uniform() or om.chirotope is None:
        raise PreconditionError("Needs a uniform oriented matroid with a chirotope")
    basis = sorted(basis)
    f = basis[0] if f is None else f
    if f not in basis:
        raise PreconditionError(f"{f} is not in the mutation {tuple(basis)}")
    if g in basis or not 0 <= g < om.n:
        raise PreconditionError(f"{g} must be an element outside the mutation {tuple(basis)}")
    return f, [e for e in basis if e != f]


class FlipLexCommuteReport(BaseModel):
    basis: list[int]
    f: int
    g: int
    reoriented: list[int]
    spec_before_flip: str
    spec_after_flip: str
    m_prime: list[int]
    mutations_survive: bool
    isomorphic: bool


def flip_lex_commute(
    om: OrientedMatroid,
    basis: Sequence[int],
    g: int,
    f: Optional[int] = None,
    alphas: Optional[Sequence[int]] = None,
) -> FlipLexCommuteReport:
    """Compare O_{f',M'} (extend, then flip M') with O_{M,f',M'} (flip M, extend, flip M').

    The extensions are [f^+, g^-, e_3^a3, ...] and [f^+, g^+, e_3^-a3, ...] where e_2 is the smallest
    element of M - f and e_3, ... the rest.
    """
    f, others = _split(om, basis, f, g)
    oriented = orient_versus_mutation(om, basis, g)
    om_a = oriented.om
    tail = others[1:]
    alphas = [1] * len(tail) if alphas is None else list(alphas)
    if len(alphas) != len(tail):
        raise PreconditionError(f"Expected {len(tail)} signs for {tail}")
    p = om.n
    m_prime = tuple(sorted(others + [p]))

    before = LexExtensionSpec.of((f, 1), (g, -1), *zip(tail, alphas))
    after = LexExtensionSpec.of((f, 1), (g, 1), *zip(tail, [-a for a in alphas]))
    first = flip_basis(lex_extend(om_a, before), m_prime)
    second = flip_basis(lex_extend(flip_basis(om_a, basis), after), m_prime)

    survive = all(
        mutation_from_basis(o, b) is not None for o in (first, second) for b in (tuple(sorted(basis)), m_prime)
    )
    return FlipLexCommuteReport(
        basis=sorted(basis),
        f=f,
        g=g,
        reoriented=list(oriented.reoriented),
        spec_before_flip=before.to_string(),
        spec_after_flip=after.to_string(),
        m_prime=list(m_prime),
        mutations_survive=survive,
        isomorphic=swap_isomorphic(first, second, f, p, before.signs[0]),
    )


def flip_lex_commute_check(om: OrientedMatroid, basis: Sequence[int], g: int, f: Optional[int] = None) -> bool:
    return flip_lex_commute(om, basis, g, f).isomorphic


@dataclass(frozen=True)
class MandelConstruction:
    """A single-element extension of ``om`` by ``element`` with every (ext, e, element) Euclidean."""

    om: OrientedMatroid
    extension: OrientedMatroid
    element: int
    spec: LexExtensionSpec
    basis: tuple[int, ...]
    reoriented: tuple[int, ...]

    def as_dict(self) -> dict:
        return {
            "element": self.element,
            "spec": self.spec.to_string(),
            "flipped": list(self.basis),
            "reoriented": list(self.reoriented),
        }


def mandel_hypotheses_hold(om: OrientedMatroid, basis: Sequence[int], f: int) -> bool:
    """The mutant at M is Euclidean and the contraction by f is Euclidean."""
    if not is_euclidean_om(flip_basis(om, basis)):
        return False
    return is_euclidean_om(contract_element(om, f))


def mandel_from_euclidean_mutant(
    om: OrientedMatroid,
    basis: Sequence[int],
    g: int,
    f: Optional[int] = None,
    check_hypotheses: bool = True,
) -> MandelConstruction:
    """Extend by [f^+, g^-, e_3^-, ..., e_r^-], flip M' = [f', e_2, ..., e_r] and verify the result.

    The construction runs on om reoriented versus M (with g = + on M's cocircuits) and the
    reorientation is undone on the returned extension.
    """
    f, others = _split(om, basis, f, g)
    if check_hypotheses and not mandel_hypotheses_hold(om, basis, f):
        raise PreconditionError(f"Mutant at {tuple(sorted(basis))} or the contraction by {f} is not Euclidean")
    oriented = orient_versus_mutation(om, basis, g)
    p = om.n
    spec = LexExtensionSpec.of((f, 1), (g, -1), *((e, -1) for e in others[1:]))
    m_prime = tuple(sorted(others + [p]))
    flipped = flip_basis(lex_extend(oriented.om, spec), m_prime)
    extension = reorient(flipped, oriented.reoriented)

    for e in range(om.n):
        verdict = is_euclidean(Program(extension, e, p))
        if not verdict.euclidean:
            raise VerificationError(
                f"Program (g={e}, f={p}) of the constructed extension has a directed cycle",
                verdict=verdict.model_dump(mode="json"),
            )
    if delete_element(extension, p).cocircuits != om.cocircuits:
        raise VerificationError("Deleting the new element does not recover the input")
    logger.info("Mandel extension of %r through flip of %s verified", om, m_prime)
    return MandelConstruction(om, extension, p, spec, m_prime, oriented.reoriented)
