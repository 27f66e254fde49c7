"""Directed-cycle structure: strong components, chordless reduction and per-element cycle reports."""

from __future__ import annotations

import logging
from itertools import combinations
from typing import Optional, Sequence

import networkx as nx
from pydantic import BaseModel, Field

from src.errors import PreconditionError
from src.faces.mutations import MutationCertificate, mutations
from src.faces.topes import simplicial_topes, topes
from src.programs.program import (
    CocircuitGraph,
    DirectedCycleWitness,
    Program,
    cocircuit_graph,
    witness_from_vertices,
)
from src.signs.sign_vector import Sign, SignVector, compose_all, iter_bits

logger = logging.getLogger(__name__)


def very_strong_components(program: Program) -> list[frozenset[SignVector]]:
    """Strong components of the strictly directed graph, largest first; singletons included."""
    graph = cocircuit_graph(program)
    components = nx.strongly_connected_components(graph.strict_digraph())
    result = [frozenset(graph.vertices[i] for i in c) for c in components]
    return sorted(result, key=lambda c: (-len(c), min(x.sort_key() for x in c)))


class ComponentReport(BaseModel):
    size: int
    cocircuits: list[str]
    elements_on_edge_zero: list[int] = Field(default_factory=list)
    elements_with_both_signs: list[int] = Field(default_factory=list)


def very_strong_component_report(program: Program) -> list[ComponentReport]:
    graph = cocircuit_graph(program)
    reports = []
    for component in very_strong_components(program):
        if len(component) < 2:
            continue
        members = sorted(component, key=SignVector.sort_key)
        on_edge = 0
        for x, y in combinations(members, 2):
            if graph.has_edge(x, y):
                on_edge |= x.zero_mask & y.zero_mask
        plus = minus = 0
        for x in members:
            plus |= x.plus
            minus |= x.minus
        reports.append(ComponentReport(
            size=len(members),
            cocircuits=[x.to_string() for x in members],
            elements_on_edge_zero=sorted(iter_bits(on_edge)),
            elements_with_both_signs=sorted(iter_bits(plus & minus)),
        ))
    return reports


def verify_cycle(program: Program, witness: DirectedCycleWitness, graph: Optional[CocircuitGraph] = None) -> bool:
    """Every step X_i -> X_{i+1} is an edge of the cocircuit graph with direction +."""
    graph = graph or cocircuit_graph(program)
    cycle = witness.cocircuits
    if len(cycle) < 3 or len(set(cycle)) != len(cycle):
        return False
    if any(x[program.g] != Sign.PLUS for x in cycle):
        return False
    for x, y in witness.edges():
        if not graph.has_edge(x, y) or graph.direction(x, y) != Sign.PLUS:
            return False
    return True


def _find_chord(graph: CocircuitGraph, cycle: Sequence[SignVector]) -> Optional[tuple[int, int, Sign]]:
    k = len(cycle)
    for i in range(k):
        for j in range(i + 2, k):
            if i == 0 and j == k - 1:
                continue
            if graph.has_edge(cycle[i], cycle[j]):
                d = graph.direction(cycle[i], cycle[j])
                if d != Sign.ZERO:
                    return i, j, d
    return None


def reduce_cycle_chordless(program: Program, witness: DirectedCycleWitness) -> DirectedCycleWitness:
    """Shortcut along forward chords and cut at backward ones until no strict chord remains.

    Chords with direction 0 are not traversable and are left in place.
    """
    graph = cocircuit_graph(program)
    if not verify_cycle(program, witness, graph):
        raise PreconditionError("Input is not a directed cycle of the program")
    cycle = list(witness.cocircuits)
    while True:
        chord = _find_chord(graph, cycle)
        if chord is None:
            break
        i, j, d = chord
        if d == Sign.PLUS:
            cycle = cycle[: i + 1] + cycle[j:]
        else:
            cycle = cycle[i: j + 1]
    reduced = witness_from_vertices(graph, [graph.index(x) for x in cycle])
    if not verify_cycle(program, reduced, graph):
        raise PreconditionError("Chordless reduction lost the directed cycle")
    if len(reduced) < len(witness):
        logger.debug("Reduced a %d-cycle to a chordless %d-cycle", len(witness), len(reduced))
    return reduced


class ElementCycleFacts(BaseModel):
    element: int
    signs: str
    all_zero: bool
    constant_sign: bool
    half_open: bool
    on_edge_zero: bool
    both_signs: Optional[bool] = None


class CycleReport(BaseModel):
    g: int
    f: int
    length: int
    cycle: list[str]
    elements: list[ElementCycleFacts]
    in_single_tope: bool
    on_single_simplicial_tope: bool
    uses_all_tope_cocircuits: bool


def cycle_tope_facts(program: Program, witness: DirectedCycleWitness) -> tuple[bool, bool, bool]:
    """(inside one tope, inside one simplicial tope, uses every cocircuit of a containing tope)."""
    om = program.om
    cycle = witness.cocircuits
    if not all(x.conformal(y) for x, y in combinations(cycle, 2)):
        return False, False, False
    bottom = compose_all(cycle, om.n)
    members = set(cycle)
    containing = [t for t in topes(om) if bottom.conforms_to(t.vector)]
    simplicial = simplicial_topes(om)
    on_simplicial = any(t.vector in simplicial for t in containing)
    uses_all = any(t.adjacent_cocircuits <= members for t in containing)
    return bool(containing), on_simplicial, uses_all


def analyze_cycle(program: Program, witness: DirectedCycleWitness) -> CycleReport:
    cycle = witness.cocircuits
    edge_zero = 0
    for x, y in witness.edges():
        edge_zero |= x.zero_mask & y.zero_mask
    facts = []
    for e in range(program.om.n):
        seen = {x[e] for x in cycle}
        on_edge = bool((edge_zero >> e) & 1)
        facts.append(ElementCycleFacts(
            element=e,
            signs="".join(s.char for s in sorted(seen, reverse=True)),
            all_zero=seen == {Sign.ZERO},
            constant_sign=len(seen) == 1 and Sign.ZERO not in seen,
            half_open=seen in ({Sign.PLUS, Sign.ZERO}, {Sign.MINUS, Sign.ZERO}),
            on_edge_zero=on_edge,
            both_signs={Sign.PLUS, Sign.MINUS} <= seen if on_edge else None,
        ))
    single, simplicial, uses_all = cycle_tope_facts(program, witness)
    return CycleReport(
        g=program.g,
        f=program.f,
        length=len(cycle),
        cycle=[x.to_string() for x in cycle],
        elements=facts,
        in_single_tope=single,
        on_single_simplicial_tope=simplicial,
        uses_all_tope_cocircuits=uses_all,
    )


def mutation_cocircuits_in_cycles(
    program: Program, certificates: Optional[Sequence[MutationCertificate]] = None
) -> list[tuple[tuple[int, ...], str]]:
    """Cocircuits of mutations meeting {f, g} that lie in a non-trivial strong component."""
    certificates = mutations(program.om) if certificates is None else certificates
    cyclic = set()
    for component in very_strong_components(program):
        if len(component) > 1:
            cyclic |= component
    found = []
    touching = {program.f, program.g}
    for cert in certificates:
        if not touching & set(cert.basis):
            continue
        for x in cert.cocircuits:
            for v in (x, -x):
                if v in cyclic:
                    found.append((cert.basis, v.to_string()))
    return found
