"""Oriented-matroid programs (om, g, f), elimination, directed cocircuit graphs and Euclideaness."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations
from typing import Optional

import networkx as nx
from pydantic import BaseModel, ConfigDict, field_serializer

from src.errors import (
    NotAnEdgeError,
    NotComodularError,
    NotInSeparatorError,
    PreconditionError,
    VerificationError,
)
from src.matroid.oriented_matroid import OrientedMatroid, require_element
from src.signs.sign_vector import Sign, SignVector
from src.utils.parallel import thread_map

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Program:
    """The program (om, g, f): g is the element at infinity, f the target."""

    om: OrientedMatroid
    g: int
    f: int

    def __post_init__(self):
        require_element(self.om, self.g)
        require_element(self.om, self.f)
        if self.f == self.g:
            raise PreconditionError("Infinity and target must differ")
        if self.om.is_loop(self.g):
            raise PreconditionError(f"Infinity {self.g} is a loop")
        if self.om.is_coloop(self.f):
            raise PreconditionError(f"Target {self.f} is a coloop")

    @classmethod
    def is_valid(cls, om: OrientedMatroid, g: int, f: int) -> bool:
        return f != g and not om.is_loop(g) and not om.is_coloop(f)


def comodular(om: OrientedMatroid, x: SignVector, y: SignVector) -> bool:
    common = x.zero_mask & y.zero_mask
    if om.is_uniform():
        return bin(common).count("1") == om.rank - 2
    return om.rank_of_mask(common) == om.rank - 2


def eliminate(om: OrientedMatroid, x: SignVector, y: SignVector, e: int) -> SignVector:
    """The cocircuit Z with Z_e = 0 obtained by eliminating e between the comodular pair X, Y."""
    if not (x.separation_mask(y) >> e) & 1:
        raise NotInSeparatorError(f"Element {e} does not separate {x} and {y}")
    if not comodular(om, x, y):
        raise NotComodularError(f"{x} and {y} are not comodular; elimination is not unique")
    plus, minus = x.plus | y.plus, x.minus | y.minus
    common = x.zero_mask & y.zero_mask
    for z in om.zero_at(e):
        if z.plus & ~plus or z.minus & ~minus:
            continue
        if common & ~z.zero_mask:
            continue
        return z
    raise VerificationError(f"No elimination of {e} between {x} and {y}; the cocircuit set is not an oriented matroid")


@lru_cache(maxsize=256)
def _edges_at_infinity(om: OrientedMatroid, g: int) -> tuple[tuple[SignVector, ...], tuple[tuple[int, int, SignVector], ...]]:
    """Vertices with X_g = + and, per edge, the elimination El(-X, Y, g)."""
    vertices = om.positive_at(g)
    edges = []
    for i, x in enumerate(vertices):
        for j in range(i + 1, len(vertices)):
            y = vertices[j]
            if x.conformal(y) and comodular(om, x, y):
                edges.append((i, j, eliminate(om, -x, y, g)))
    return vertices, tuple(edges)


@dataclass(frozen=True)
class CocircuitGraph:
    """Vertices are the cocircuits with g = +; ``directions[(i, j)]`` is d(X_i, X_j) for i < j."""

    program: Program
    vertices: tuple[SignVector, ...]
    edges: tuple[tuple[int, int], ...]
    directions: dict[tuple[int, int], Sign]
    eliminations: dict[tuple[int, int], SignVector]
    _index: dict[SignVector, int] = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", {x: i for i, x in enumerate(self.vertices)})

    def index(self, x: SignVector) -> int:
        try:
            return self._index[x]
        except KeyError as exc:
            raise NotAnEdgeError(f"{x} is not a vertex of the cocircuit graph") from exc

    def has_edge(self, x: SignVector, y: SignVector) -> bool:
        i, j = self._index.get(x), self._index.get(y)
        if i is None or j is None or i == j:
            return False
        return (min(i, j), max(i, j)) in self.directions

    def direction(self, x: SignVector, y: SignVector) -> Sign:
        i, j = self.index(x), self.index(y)
        key = (min(i, j), max(i, j))
        if key not in self.directions:
            raise NotAnEdgeError(f"{x} and {y} are not adjacent")
        d = self.directions[key]
        return d if i < j else -d

    def elimination(self, x: SignVector, y: SignVector) -> SignVector:
        """El(-X, Y, g) for the edge read in the given orientation."""
        i, j = self.index(x), self.index(y)
        z = self.eliminations[(min(i, j), max(i, j))]
        return z if i < j else -z

    def positive_part(self) -> list[int]:
        f = self.program.f
        return [i for i, x in enumerate(self.vertices) if x[f] == Sign.PLUS]

    def negative_part(self) -> list[int]:
        f = self.program.f
        return [i for i, x in enumerate(self.vertices) if x[f] == Sign.MINUS]

    def strict_digraph(self) -> nx.DiGraph:
        """Strictly directed edges only; an edge i -> j means f increases from X_i to X_j."""
        graph = nx.DiGraph()
        graph.add_nodes_from(range(len(self.vertices)))
        for (i, j), d in self.directions.items():
            if d == Sign.PLUS:
                graph.add_edge(i, j)
            elif d == Sign.MINUS:
                graph.add_edge(j, i)
        return graph

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        for i, x in enumerate(self.vertices):
            graph.add_node(i, cocircuit=x.to_string())
        for (i, j), d in self.directions.items():
            graph.add_edge(i, j, direction=int(d))
        return graph


def cocircuit_graph(program: Program) -> CocircuitGraph:
    vertices, edges = _edges_at_infinity(program.om, program.g)
    f = program.f
    return CocircuitGraph(
        program,
        vertices,
        tuple((i, j) for i, j, _ in edges),
        {(i, j): z[f] for i, j, z in edges},
        {(i, j): z for i, j, z in edges},
    )


def edge_direction(program: Program, x: SignVector, y: SignVector) -> Sign:
    """d(X, Y) = El(-X, Y, g)_f; + means the edge is directed X -> Y."""
    g = program.g
    if x[g] != Sign.PLUS or y[g] != Sign.PLUS or x == y:
        raise NotAnEdgeError(f"{x} and {y} are not both vertices at infinity {g}")
    om = program.om
    if x not in om.cocircuits or y not in om.cocircuits:
        raise NotAnEdgeError("Edge endpoints must be cocircuits")
    if not x.conformal(y) or not comodular(om, x, y):
        raise NotAnEdgeError(f"{x} and {y} are not adjacent")
    return eliminate(om, -x, y, g)[program.f]


@dataclass(frozen=True)
class DirectedCycleWitness:
    """X_1 -> X_2 -> ... -> X_k -> X_1 with Z_i = El(-X_i, X_{i+1}, g) and Z_i[f] = +."""

    cocircuits: tuple[SignVector, ...]
    eliminations: tuple[SignVector, ...]

    def __len__(self) -> int:
        return len(self.cocircuits)

    def edges(self) -> list[tuple[SignVector, SignVector]]:
        k = len(self.cocircuits)
        return [(self.cocircuits[i], self.cocircuits[(i + 1) % k]) for i in range(k)]

    def as_dict(self) -> dict:
        return {
            "cycle": [x.to_string() for x in self.cocircuits],
            "eliminations": [z.to_string() for z in self.eliminations],
        }


def witness_from_vertices(graph: CocircuitGraph, indices: list[int]) -> DirectedCycleWitness:
    cycle = tuple(graph.vertices[i] for i in indices)
    k = len(cycle)
    return DirectedCycleWitness(cycle, tuple(graph.elimination(cycle[i], cycle[(i + 1) % k]) for i in range(k)))


class EuclideanVerdict(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    g: int
    f: int
    euclidean: bool
    witness: Optional[DirectedCycleWitness] = None

    @field_serializer("witness")
    def _dump_witness(self, witness: Optional[DirectedCycleWitness]):
        return None if witness is None else witness.as_dict()


def _cycle_in(digraph: nx.DiGraph, component: set[int]) -> list[int]:
    start = min(component)
    sub = digraph.subgraph(component)
    edges = nx.find_cycle(sub, source=start)
    return [u for u, _ in edges]


def is_euclidean(program: Program) -> EuclideanVerdict:
    """Euclidean iff the strictly directed cocircuit graph has no non-trivial strong component."""
    graph = cocircuit_graph(program)
    digraph = graph.strict_digraph()
    components = sorted((c for c in nx.strongly_connected_components(digraph) if len(c) > 1), key=min)
    if not components:
        return EuclideanVerdict(g=program.g, f=program.f, euclidean=True)
    cycle = _cycle_in(digraph, components[0])
    logger.debug("Program (g=%d, f=%d) has a directed %d-cycle", program.g, program.f, len(cycle))
    return EuclideanVerdict(
        g=program.g, f=program.f, euclidean=False, witness=witness_from_vertices(graph, cycle)
    )


def valid_pairs(om: OrientedMatroid) -> list[tuple[int, int]]:
    return [(g, f) for g, f in permutations(range(om.n), 2) if Program.is_valid(om, g, f)]


def euclidean_all(om: OrientedMatroid, threads: Optional[int] = None) -> dict[tuple[int, int], EuclideanVerdict]:
    """Verdict for every valid ordered pair (g, f)."""
    pairs = valid_pairs(om)
    verdicts = thread_map(lambda gf: is_euclidean(Program(om, *gf)), pairs, threads)
    return dict(zip(pairs, verdicts))


def is_euclidean_om(om: OrientedMatroid) -> bool:
    """All programs Euclidean, stopping at the first directed cycle."""
    return all(is_euclidean(Program(om, g, f)).euclidean for g, f in valid_pairs(om))


def is_totally_non_euclidean(om: OrientedMatroid) -> bool:
    for g, f in valid_pairs(om):
        if is_euclidean(Program(om, g, f)).euclidean:
            return False
    return True


def exchange_cross_check(om: OrientedMatroid) -> list[tuple[int, int]]:
    """Pairs whose verdict differs from the exchanged program (om, f, g); disagreements are logged."""
    verdicts = euclidean_all(om)
    disagreements = []
    for (g, f), verdict in verdicts.items():
        other = verdicts.get((f, g))
        if other is not None and other.euclidean != verdict.euclidean:
            disagreements.append((g, f))
    if disagreements:
        logger.warning("Exchanging target and infinity changed the verdict for %s", disagreements)
    return disagreements
