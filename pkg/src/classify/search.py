"""Las Vergnas test, Mandel witness search and minor stability of witnesses."""

from __future__ import annotations

import logging
import time
from itertools import permutations, product
from typing import Iterable, Literal, Optional, Sequence

from pydantic import BaseModel

from src.config_loader import CONFIG
from src.errors import OMError
from src.extensions.lexicographic import LexExtensionSpec, lex_extend, parse_spec
from src.extensions.mandel import mandel_from_euclidean_mutant
from src.faces.mutations import MutationCertificate, adjacency_table, flip_basis, mutations
from src.matroid.operations import contract_element, is_general_position, minor, reorient
from src.matroid.oriented_matroid import OrientedMatroid
from src.programs.program import Program, is_euclidean, is_euclidean_om

logger = logging.getLogger(__name__)


def is_las_vergnas(om: OrientedMatroid, certificates: Optional[Sequence[MutationCertificate]] = None) -> bool:
    """Every element that is neither a loop nor a coloop has an adjacent mutation."""
    table = adjacency_table(om, certificates)
    return all(table[e] >= 1 for e in om.proper_elements())


class MandelWitness(BaseModel):
    kind: Literal["lexicographic", "mutant-pipeline"]
    spec: str
    element: int
    flip_basis: Optional[list[int]] = None
    reoriented: list[int] = []


def witness_extension(om: OrientedMatroid, witness: MandelWitness) -> OrientedMatroid:
    """Rebuild the single-element extension a witness describes."""
    spec = parse_spec(witness.spec)
    if witness.kind == "lexicographic":
        return lex_extend(om, spec)
    oriented = reorient(om, witness.reoriented)
    flipped = flip_basis(lex_extend(oriented, spec), witness.flip_basis or [])
    return reorient(flipped, witness.reoriented)


def witness_programs_euclidean(ext: OrientedMatroid, element: int, kind: str) -> bool:
    """(ext, p, e) for lexicographic witnesses, (ext, e, p) for mutant-pipeline ones, over all old e."""
    for e in range(ext.n):
        if e == element:
            continue
        g, f = (element, e) if kind == "lexicographic" else (e, element)
        if not Program.is_valid(ext, g, f):
            continue
        if not is_euclidean(Program(ext, g, f)).euclidean:
            return False
    return True


class _Budget:
    def __init__(self, candidates: int, time_ms: int):
        self.left = candidates
        self.deadline = time.monotonic() + time_ms / 1000 if time_ms else None

    def take(self) -> bool:
        if self.left <= 0 or (self.deadline is not None and time.monotonic() > self.deadline):
            return False
        self.left -= 1
        return True


def _pipeline_candidates(om: OrientedMatroid, budget: _Budget) -> Optional[MandelWitness]:
    for cert in mutations(om):
        try:
            mutant_ok = is_euclidean_om(flip_basis(om, cert.basis))
        except OMError:
            continue
        if not mutant_ok:
            continue
        for f in cert.basis:
            if not is_euclidean_om(contract_element(om, f)):
                continue
            for g in range(om.n):
                if g in cert.basis:
                    continue
                if not budget.take():
                    return None
                try:
                    built = mandel_from_euclidean_mutant(om, cert.basis, g, f, check_hypotheses=False)
                except OMError as exc:
                    logger.debug("Mutant pipeline at %s (f=%d, g=%d) failed: %s", cert.basis, f, g, exc)
                    continue
                return MandelWitness(
                    kind="mutant-pipeline",
                    spec=built.spec.to_string(),
                    element=built.element,
                    flip_basis=list(built.basis),
                    reoriented=list(built.reoriented),
                )
    return None


def lex_candidates(om: OrientedMatroid) -> Iterable[LexExtensionSpec]:
    for elements in permutations(range(om.n), om.rank):
        if om.rank_of_mask(sum(1 << e for e in elements)) != om.rank:
            continue
        for signs in product((1, -1), repeat=om.rank):
            yield LexExtensionSpec.of(*zip(elements, signs))


def mandel_witness_search(
    om: OrientedMatroid,
    max_candidates: Optional[int] = None,
    time_ms: Optional[int] = None,
) -> Optional[MandelWitness]:
    """First Mandel witness found; None means undetermined, never "not Mandel".

    Non-Euclidean uniform inputs first try the Euclidean-mutant construction, then every input
    falls back to lexicographic extensions in enumeration order.
    """
    if om.chirotope is None or not om.is_uniform():
        logger.info("Mandel search skipped: needs a uniform oriented matroid with a chirotope")
        return None
    budget = _Budget(
        CONFIG["max_candidates"] if max_candidates is None else max_candidates,
        CONFIG["time_ms"] if time_ms is None else time_ms,
    )
    if not is_euclidean_om(om):
        witness = _pipeline_candidates(om, budget)
        if witness is not None:
            return witness
    p = om.n
    for spec in lex_candidates(om):
        if not budget.take():
            logger.info("Mandel search budget exhausted")
            return None
        ext = lex_extend(om, spec)
        if not is_general_position(ext, p) or ext.is_coloop(p):
            continue
        if witness_programs_euclidean(ext, p, "lexicographic"):
            return MandelWitness(kind="lexicographic", spec=spec.to_string(), element=p)
    return None


def witness_certifies_minor(
    om: OrientedMatroid,
    witness: MandelWitness,
    delete: Iterable[int] = (),
    contract: Iterable[int] = (),
) -> bool:
    """The witness extension, minored the same way, still certifies the minor of om."""
    delete, contract = list(delete), list(contract)
    ext = witness_extension(om, witness)
    minor_ext = minor(ext, delete, contract)
    p = minor_ext.n - 1
    if minor_ext.is_coloop(p) or minor_ext.is_loop(p) or not is_general_position(minor_ext, p):
        return False
    if minor(minor_ext, delete=[p]).cocircuits != minor(om, delete, contract).cocircuits:
        return False
    return witness_programs_euclidean(minor_ext, p, witness.kind)
