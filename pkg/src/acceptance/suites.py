"""Seeded acceptance batteries over realizable corpora, lexicographic extensions and flip searches."""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from math import comb
from typing import Callable, Optional

import numpy as np
from pydantic import BaseModel, Field

from src.classify.mutation_graph import MutationGraph, mutation_graph_bfs
from src.config_loader import CONFIG
from src.errors import BudgetExhausted, OMError
from src.extensions.properties import (
    creation_check,
    destruction_check,
    non_adjacent_mutations_preserved,
    swap_isomorphism_check,
)
from src.extensions.lexicographic import (
    LexExtensionSpec,
    expected_cocircuit_count,
    fprime_zero_relation_holds,
    lex_extend,
    lex_paths_agree,
)
from src.extensions.mandel import mandel_from_euclidean_mutant
from src.classify.search import witness_programs_euclidean
from src.faces.mutations import adjacency_table, flip, l_statistic, mutations
from src.matroid.chirotope import chirotope_from_points
from src.matroid.operations import direct_sum, inseparability
from src.matroid.oriented_matroid import OrientedMatroid, cocircuits_from_chirotope
from src.matroid.realizable import Configuration, cyclic, om_from_points, point_cocircuits, random_configuration, w3
from src.programs.cycles import cycle_tope_facts, mutation_cocircuits_in_cycles, reduce_cycle_chordless, verify_cycle
from src.programs.program import Program, euclidean_all, is_euclidean, is_euclidean_om, is_totally_non_euclidean

logger = logging.getLogger(__name__)


class SuiteResult(BaseModel):
    suite: str
    passed: bool
    budget_exhausted: bool = False
    seed: int
    instances: int
    counts: dict[str, int] = Field(default_factory=dict)
    failures: list[str] = Field(default_factory=list)
    notes: dict = Field(default_factory=dict)
    elapsed: float = 0.0


@dataclass
class SuiteContext:
    seed: int
    instances: Optional[int] = None
    max_nodes: Optional[int] = None
    max_depth: Optional[int] = None
    time_ms: Optional[int] = None
    threads: Optional[int] = None
    rng: np.random.Generator = field(init=False)

    def __post_init__(self):
        self.rng = np.random.default_rng(self.seed)

    def count(self, default: int) -> int:
        return default if self.instances is None else self.instances


class _Checks:
    def __init__(self, suite: str, ctx: SuiteContext, instances: int):
        self.result = SuiteResult(suite=suite, passed=True, seed=ctx.seed, instances=instances)

    def check(self, name: str, condition: bool, detail: str = "") -> bool:
        self.result.counts[name] = self.result.counts.get(name, 0) + 1
        if not condition:
            self.result.failures.append(f"{name}: {detail}" if detail else name)
        return condition


def _corpus(ctx: SuiteContext, count: int, ranks=(2, 3, 4), max_n: int = 9) -> list[tuple[Configuration, OrientedMatroid]]:
    instances = []
    for _ in range(count):
        r = int(ctx.rng.choice(ranks))
        n = int(ctx.rng.integers(r + 1, max_n + 1))
        config = random_configuration(ctx.rng, r, n)
        instances.append((config, om_from_points(config)))
    return instances


def _random_spec(ctx: SuiteContext, om: OrientedMatroid) -> LexExtensionSpec:
    elements = [int(e) for e in ctx.rng.permutation(om.n)[: om.rank]]
    signs = [int(s) for s in ctx.rng.choice([1, -1], size=om.rank)]
    return LexExtensionSpec.of(*zip(elements, signs))


def _euclidean_mutant_bases(om: OrientedMatroid) -> list[tuple[int, ...]]:
    found = []
    for cert in mutations(om):
        try:
            if is_euclidean_om(flip(om, cert)):
                found.append(cert.basis)
        except OMError:
            continue
    return found


# -- suites --------------------------------------------------------------------------------


def oracle_equivalence(ctx: SuiteContext, checks: _Checks) -> None:
    """Chirotope cocircuits against point-side normal vectors."""
    for config, _ in _corpus(ctx, checks.result.instances):
        via_chi = cocircuits_from_chirotope(chirotope_from_points(config)).cocircuits
        checks.check("cocircuits-agree", via_chi == point_cocircuits(config), f"{len(config)}x{len(config[0])} {config}")


def realizable_shannon(ctx: SuiteContext, checks: _Checks) -> None:
    minima = []
    for config, om in _corpus(ctx, checks.result.instances):
        table = adjacency_table(om)
        low = min(table.values())
        minima.append(low == om.rank)
        checks.check("every-element-at-least-rank", low >= om.rank, f"rank {om.rank}, table {table}")
    checks.check("minimum-equals-rank-observed", any(minima))


def realizable_euclidean(ctx: SuiteContext, checks: _Checks) -> None:
    for config, om in _corpus(ctx, checks.result.instances):
        bad = [gf for gf, v in euclidean_all(om, ctx.threads).items() if not v.euclidean]
        checks.check("no-directed-cycles", not bad, f"{config}: {bad[:3]}")


def _bfs(ctx: SuiteContext, seed: OrientedMatroid, max_nodes: int, max_depth: int) -> MutationGraph:
    return mutation_graph_bfs(
        seed,
        max_nodes=ctx.max_nodes or max_nodes,
        max_depth=ctx.max_depth if ctx.max_depth is not None else max_depth,
        classify_nodes=True,
        time_ms=ctx.time_ms,
        threads=ctx.threads,
    )


def rank3_universality(ctx: SuiteContext, checks: _Checks) -> None:
    graph = _bfs(ctx, cyclic(3, 6), 500, 64)
    checks.result.notes.update(classes=len(graph), complete=graph.complete)
    checks.result.budget_exhausted = graph.stopped_by == "time"
    for key, node in graph.nodes.items():
        checks.check("class-euclidean", bool(node.euclidean), key)
        checks.check("class-L-at-least-3", node.L >= 3, f"{key}: L={node.L}")


def lex_suite(ctx: SuiteContext, checks: _Checks) -> None:
    for config, om in _corpus(ctx, checks.result.instances, ranks=(3, 4), max_n=8):
        spec = _random_spec(ctx, om)
        ext = lex_extend(om, spec)
        label = f"{om!r} {spec.to_string()}"
        checks.check("cocircuit-count", len(ext.cocircuits) == expected_cocircuit_count(om.n + 1, om.rank), label)
        checks.check("chirotope-and-localization-agree", lex_paths_agree(om, spec), label)
        checks.check("fprime-zero-relation", fprime_zero_relation_holds(om, spec), label)
        checks.check("swap-isomorphism", swap_isomorphism_check(om, spec), label)
        checks.check("non-adjacent-mutations-preserved", non_adjacent_mutations_preserved(om, spec), label)
        plus = spec.with_signs([1] * len(spec))
        checks.check("creation-certificate", creation_check(om, plus) is not None, plus.to_string())
        certificates = mutations(om)
        cert = certificates[int(ctx.rng.integers(len(certificates)))]
        outside = [e for e in range(om.n) if e not in cert.basis]
        g = outside[int(ctx.rng.integers(len(outside)))]
        report = destruction_check(om, cert.basis, g)
        checks.check("destruction", report.ok, report.model_dump_json())


def preservation(ctx: SuiteContext, checks: _Checks) -> None:
    corpus = _corpus(ctx, checks.result.instances, ranks=(3, 4), max_n=7)
    for _, om in corpus:
        spec = _random_spec(ctx, om)
        ext = lex_extend(om, spec)
        checks.check("lex-extension-euclidean", witness_programs_euclidean(ext, om.n, "lexicographic"), spec.to_string())

        f = spec.head
        for g in range(om.n):
            if g == f or inseparability(ext, f, om.n) is None:
                continue
            same = is_euclidean(Program(ext, g, f)).euclidean == is_euclidean(Program(ext, g, om.n)).euclidean
            checks.check("inseparable-substitution", same, f"{spec.to_string()} g={g}")

        certificates = mutations(om)
        cert = certificates[int(ctx.rng.integers(len(certificates)))]
        mutant = flip(om, cert)
        for f in cert.basis:
            for g in (e for e in range(om.n) if e not in cert.basis):
                if is_euclidean(Program(om, g, f)).euclidean:
                    after = is_euclidean(Program(mutant, g, f)).euclidean
                    checks.check("flip-preserves-verdict", after, f"{cert.basis} g={g} f={f}")

    for _ in range(checks.result.instances):
        a = _small_summand(ctx, 5)
        b = _small_summand(ctx, 9 - a.n)
        checks.check("direct-sum-euclidean", is_euclidean_om(direct_sum(a, b)), f"{a!r} + {b!r}")
    summed = checks.result.counts.get("direct-sum-euclidean", 0)
    checks.check("direct-sum-instances", summed >= checks.result.instances, f"{summed} sums checked")


def _small_summand(ctx: SuiteContext, max_n: int) -> OrientedMatroid:
    """W3, or a random rank 2 or 3 configuration on at most min(max_n, 5) points."""
    max_n = min(max_n, 5)
    shapes = [(2, n) for n in range(3, max_n + 1)] + [(3, n) for n in range(4, max_n + 1)]
    pick = int(ctx.rng.integers(len(shapes) + 1))
    if pick == len(shapes):
        return w3()
    r, n = shapes[pick]
    return om_from_points(random_configuration(ctx.rng, r, n))


def euclidean_l3(ctx: SuiteContext, checks: _Checks) -> None:
    """Every Euclidean connected uniform rank-4 instance with n >= 7 has L >= 3."""
    pool = [om for _, om in _corpus(ctx, checks.result.instances, ranks=(4,), max_n=8)]
    seed = cyclic(4, 8)
    pool.append(seed)
    for cert in mutations(seed):
        pool.append(flip(seed, cert))
    for om in pool:
        if om.n < om.rank + 3 or not om.is_connected() or not is_euclidean_om(om):
            continue
        checks.check("L-at-least-3", l_statistic(om) >= 3, om.chirotope.to_string() if om.chirotope else repr(om))


def _mandel_verified(om: OrientedMatroid, bases: list[tuple[int, ...]]) -> bool:
    for basis in bases:
        for f in basis:
            for g in (e for e in range(om.n) if e not in basis):
                try:
                    mandel_from_euclidean_mutant(om, basis, g, f, check_hypotheses=False)
                except OMError:
                    continue
                return True
    return False


def eight_point(ctx: SuiteContext, checks: _Checks) -> None:
    graph = _bfs(ctx, cyclic(4, 8), checks.result.instances, 64)
    checks.result.notes.update(classes=len(graph), complete=graph.complete, stopped_by=graph.stopped_by)
    checks.result.budget_exhausted = graph.stopped_by == "time"
    for key, node in graph.nodes.items():
        om = graph.representatives[key]
        keeps_program = node.euclidean or not is_totally_non_euclidean(om)
        checks.check("not-totally-non-euclidean", keeps_program, key)
        if node.depth <= 2:
            checks.check("retains-euclidean-program-near-seed", keeps_program, key)
        if node.euclidean:
            continue
        bases = _euclidean_mutant_bases(om)
        checks.check("euclidean-mutant-at-distance-1", bool(bases), key)
        if bases:
            checks.check("mandel-construction-verified", _mandel_verified(om, bases), key)


def cycle_structure(ctx: SuiteContext, checks: _Checks) -> None:
    graph = _bfs(ctx, cyclic(4, 8), checks.result.instances, 64)
    witnesses = 0
    for key, node in graph.nodes.items():
        if node.euclidean:
            continue
        om = graph.representatives[key]
        certificates = mutations(om)
        for (g, f), verdict in euclidean_all(om, ctx.threads).items():
            if verdict.euclidean:
                continue
            witnesses += 1
            program = Program(om, g, f)
            reduced = reduce_cycle_chordless(program, verdict.witness)
            label = f"{key} g={g} f={f}"
            checks.check("chordless-reduction-verifies", verify_cycle(program, reduced), label)
            in_tope, on_simplicial, uses_all = cycle_tope_facts(program, reduced)
            checks.check("not-on-one-simplicial-tope", not on_simplicial, label)
            checks.check("not-all-cocircuits-of-one-tope", not (in_tope and uses_all), label)
            touching = mutation_cocircuits_in_cycles(program, certificates)
            checks.check("mutation-cocircuits-outside-cycles", not touching, f"{label}: {touching[:2]}")
    checks.result.notes.update(classes=len(graph), witnesses=witnesses)


def direct_sum_counting(ctx: SuiteContext, checks: _Checks) -> None:
    a = w3()
    summed = direct_sum(a, a)
    k = len(mutations(a))
    total = len(mutations(summed))
    checks.check("count-is-product", total == k * k, f"{total} != {k}*{k}")
    checks.check("at-least-3n-9", total >= 3 * summed.n - 9, str(total))
    single = adjacency_table(a)
    table = adjacency_table(summed)
    for e in range(summed.n):
        m = single[e % a.n]
        checks.check("adjacency-is-m-times-k", table[e] == m * k, f"element {e}: {table[e]} != {m}*{k}")
    checks.result.notes.update(mutations=total, binomial_bases=comb(summed.n, summed.rank))


SUITES: dict[str, tuple[Callable[[SuiteContext, _Checks], None], int]] = {
    "oracle-equivalence": (oracle_equivalence, 100),
    "realizable-shannon": (realizable_shannon, 100),
    "realizable-euclidean": (realizable_euclidean, 100),
    "rank3-universality": (rank3_universality, 500),
    "lex-suite": (lex_suite, 50),
    "preservation": (preservation, 50),
    "euclidean-l3": (euclidean_l3, 20),
    "eight-point": (eight_point, 500),
    "cycle-structure": (cycle_structure, 40),
    "direct-sum": (direct_sum_counting, 1),
}


def run_suite(name: str, ctx: SuiteContext) -> SuiteResult:
    try:
        fn, default = SUITES[name]
    except KeyError:
        raise KeyError(f"Unknown acceptance suite {name!r}; choose from {sorted(SUITES)}") from None
    checks = _Checks(name, ctx, ctx.count(default))
    started = time.monotonic()
    logger.info("Acceptance %s: %d instances, seed %d", name, checks.result.instances, ctx.seed)
    try:
        fn(ctx, checks)
    except BudgetExhausted as exc:
        checks.result.budget_exhausted = True
        checks.result.notes["budget"] = str(exc)
    checks.result.elapsed = time.monotonic() - started
    checks.result.passed = not checks.result.failures
    logger.info(
        "Acceptance %s: %s (%d checks, %d failures, %.2fs)",
        name,
        "pass" if checks.result.passed else "FAIL",
        sum(checks.result.counts.values()),
        len(checks.result.failures),
        checks.result.elapsed,
    )
    return checks.result


def run_suites(names: list[str], seed: Optional[int] = None, **budgets) -> list[SuiteResult]:
    seed = CONFIG["seed"] if seed is None else seed
    return [run_suite(name, SuiteContext(seed=seed, **budgets)) for name in names]
