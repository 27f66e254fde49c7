"""Breadth-first exploration of the mutation graph of uniform oriented matroids up to isomorphism."""

from __future__ import annotations

import logging
import time
from collections import deque
from dataclasses import dataclass, field
from typing import Optional, Sequence

import networkx as nx
from pydantic import BaseModel, Field

from src.config_loader import CONFIG
from src.errors import OMError, PreconditionError
from src.faces.mutations import MutationCertificate, flip, l_statistic, mutations
from src.matroid.canonical import canonical_form, is_exact_canonical
from src.matroid.oriented_matroid import OrientedMatroid
from src.programs.program import is_euclidean_om
from src.utils.parallel import thread_map

logger = logging.getLogger(__name__)


class MutationGraphNode(BaseModel):
    key: str
    chirotope: str
    depth: int
    mutation_count: int
    L: int
    euclidean: Optional[bool] = None
    neighbours: list[str] = Field(default_factory=list)


@dataclass
class MutationGraph:
    seed_key: str
    nodes: dict[str, MutationGraphNode] = field(default_factory=dict)
    representatives: dict[str, OrientedMatroid] = field(default_factory=dict, repr=False)
    complete: bool = True
    stopped_by: Optional[str] = None
    exact_keys: bool = True

    def __len__(self) -> int:
        return len(self.nodes)

    def add_edge(self, a: str, b: str) -> None:
        for x, y in ((a, b), (b, a)):
            neighbours = self.nodes[x].neighbours
            if y not in neighbours:
                neighbours.append(y)

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        for key, node in self.nodes.items():
            graph.add_node(key, depth=node.depth, euclidean=node.euclidean, L=node.L, mutations=node.mutation_count)
        for key, node in self.nodes.items():
            for other in node.neighbours:
                if other in self.nodes:
                    graph.add_edge(key, other)
        return graph

    def is_connected(self) -> bool:
        return nx.is_connected(self.to_networkx()) if self.nodes else True

    def as_dict(self) -> dict:
        return {
            "seed": self.seed_key,
            "classes": len(self.nodes),
            "complete": self.complete,
            "stopped_by": self.stopped_by,
            "exact_keys": self.exact_keys,
            "nodes": [n.model_dump() for n in self.nodes.values()],
        }


def _flip_neighbours(
    om: OrientedMatroid,
    certificates: Optional[Sequence[MutationCertificate]] = None,
    threads: Optional[int] = None,
) -> list[tuple[str, OrientedMatroid]]:
    def neighbour(cert: MutationCertificate) -> Optional[tuple[str, OrientedMatroid]]:
        try:
            mutant = flip(om, cert)
        except OMError as exc:
            logger.warning("Flip at %s failed: %s", cert.basis, exc)
            return None
        return canonical_form(mutant), mutant

    certificates = mutations(om) if certificates is None else certificates
    return [found for found in thread_map(neighbour, certificates, threads) if found is not None]


def mutation_graph_bfs(
    seed: OrientedMatroid,
    max_nodes: Optional[int] = None,
    max_depth: Optional[int] = None,
    classify_nodes: bool = True,
    time_ms: Optional[int] = None,
    threads: Optional[int] = None,
) -> MutationGraph:
    """Flip-BFS from ``seed``; on budget exhaustion the partial graph comes back with ``complete=False``."""
    if seed.chirotope is None or not seed.is_uniform():
        raise PreconditionError("Mutation graphs need a uniform seed with a chirotope")
    max_nodes = CONFIG["max_nodes"] if max_nodes is None else max_nodes
    max_depth = CONFIG["max_depth"] if max_depth is None else max_depth
    time_ms = CONFIG["time_ms"] if time_ms is None else time_ms
    deadline = time.monotonic() + time_ms / 1000 if time_ms else None

    seed_key = canonical_form(seed)
    graph = MutationGraph(seed_key, exact_keys=is_exact_canonical(seed_key))
    queue: deque[str] = deque()
    certificates_of: dict[str, tuple[MutationCertificate, ...]] = {}

    def admit(key: str, om: OrientedMatroid, depth: int) -> None:
        certificates = mutations(om)
        graph.nodes[key] = MutationGraphNode(
            key=key,
            chirotope=om.chirotope.to_string(),
            depth=depth,
            mutation_count=len(certificates),
            L=l_statistic(om, certificates),
        )
        graph.representatives[key] = om
        certificates_of[key] = certificates
        queue.append(key)

    admit(seed_key, seed, 0)
    while queue:
        if deadline is not None and time.monotonic() > deadline:
            graph.complete, graph.stopped_by = False, "time"
            break
        key = queue.popleft()
        node = graph.nodes[key]
        neighbours = _flip_neighbours(graph.representatives[key], certificates_of.pop(key), threads)
        for other_key, mutant in neighbours:
            if other_key not in graph.nodes:
                if node.depth + 1 > max_depth:
                    graph.complete, graph.stopped_by = False, graph.stopped_by or "max_depth"
                    continue
                if len(graph.nodes) >= max_nodes:
                    graph.complete, graph.stopped_by = False, "max_nodes"
                    continue
                admit(other_key, mutant, node.depth + 1)
                graph.exact_keys &= is_exact_canonical(other_key)
            graph.add_edge(key, other_key)
        if len(graph.nodes) % 50 == 0:
            logger.info("Mutation graph: %d classes, %d queued", len(graph.nodes), len(queue))

    if classify_nodes:
        keys = list(graph.nodes)
        flags = thread_map(lambda k: is_euclidean_om(graph.representatives[k]), keys, threads)
        for k, flag in zip(keys, flags):
            graph.nodes[k].euclidean = flag
    logger.info("Mutation graph from %s: %d classes, complete=%s", seed_key[:24], len(graph.nodes), graph.complete)
    return graph


def flip_distance_to_euclidean(om: OrientedMatroid, radius: Optional[int] = None) -> Optional[int]:
    """Flip distance to the nearest oriented matroid with all programs Euclidean, within ``radius``."""
    if om.chirotope is None or not om.is_uniform():
        raise PreconditionError("Flip distances need a uniform oriented matroid with a chirotope")
    radius = CONFIG["max_depth"] if radius is None else radius
    seen = {canonical_form(om)}
    frontier = [om]
    for depth in range(radius + 1):
        for candidate in frontier:
            if is_euclidean_om(candidate):
                return depth
        if depth == radius:
            break
        nxt = []
        for candidate in frontier:
            for key, mutant in _flip_neighbours(candidate):
                if key not in seen:
                    seen.add(key)
                    nxt.append(mutant)
        frontier = nxt
    return None
