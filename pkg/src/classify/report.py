"""Classification along realizable, Euclidean, Mandel and Las Vergnas, with chain consistency checks."""

from __future__ import annotations

import logging
from math import ceil
from typing import Literal, Optional

from pydantic import BaseModel, Field

from src.classify.search import MandelWitness, is_las_vergnas, mandel_witness_search
from src.faces.mutations import adjacency_table, l_statistic, mutations
from src.matroid.canonical import canonical_form
from src.matroid.operations import dual
from src.matroid.oriented_matroid import OrientedMatroid, Provenance
from src.programs.program import euclidean_all

logger = logging.getLogger(__name__)

MandelStatus = Literal["witnessed", "undetermined", "skipped"]


class ClassificationReport(BaseModel):
    n: int
    rank: int
    uniform: bool
    simple: bool
    connected: bool
    realizable_by_construction: bool
    euclidean_all_programs: bool
    totally_non_euclidean: bool
    non_euclidean_programs: list[list[int]] = Field(default_factory=list)
    las_vergnas: bool
    mandel_status: MandelStatus = "skipped"
    mandel_witness: Optional[MandelWitness] = None
    L: int
    adjacency: dict[int, int]
    mutation_count: int
    mutation_lower_bound: Optional[int] = None
    canonical: Optional[str] = None
    dual: Optional["ClassificationReport"] = None

    def chain_violations(self) -> list[str]:
        """Decidable implications of the inclusion chain that this report breaks."""
        problems = []
        if self.realizable_by_construction and not self.euclidean_all_programs:
            problems.append("realizable but not Euclidean")
        if self.realizable_by_construction and self.L < self.rank:
            problems.append(f"realizable with L={self.L} < rank {self.rank}")
        if self.mandel_witness is not None and not self.las_vergnas:
            problems.append("Mandel witness on a non Las Vergnas oriented matroid")
        if self.totally_non_euclidean and self.euclidean_all_programs:
            problems.append("totally non-Euclidean yet Euclidean")
        if self.euclidean_all_programs and self.uniform and self.rank >= 3 and self.is_connected_enough() and self.L < 3:
            problems.append(f"Euclidean with L={self.L} < 3")
        if self.mutation_lower_bound is not None and self.mutation_count < self.mutation_lower_bound:
            problems.append(f"{self.mutation_count} mutations below the bound {self.mutation_lower_bound}")
        if self.dual is not None:
            problems.extend(f"dual: {p}" for p in self.dual.chain_violations())
            if self.dual.mutation_count != self.mutation_count:
                problems.append("dual has a different number of mutations")
        return problems

    def is_connected_enough(self) -> bool:
        return self.connected and self.n >= self.rank + 3


ClassificationReport.model_rebuild()


def classify(
    om: OrientedMatroid,
    mandel: bool = True,
    with_dual: bool = False,
    max_candidates: Optional[int] = None,
    canonical: bool = False,
) -> ClassificationReport:
    certificates = mutations(om)
    verdicts = euclidean_all(om)
    euclidean = all(v.euclidean for v in verdicts.values())
    totally = bool(verdicts) and not any(v.euclidean for v in verdicts.values())
    uniform = om.is_uniform()
    bound = None
    if euclidean and uniform and om.rank >= 3 and om.is_connected() and om.n >= om.rank + 3:
        bound = ceil(3 * om.n / om.rank)

    witness, status = None, "skipped"
    if mandel:
        witness = mandel_witness_search(om, max_candidates=max_candidates)
        status = "witnessed" if witness is not None else "undetermined"

    report = ClassificationReport(
        n=om.n,
        rank=om.rank,
        uniform=uniform,
        simple=om.is_simple(),
        connected=om.is_connected(),
        realizable_by_construction=om.provenance is Provenance.FROM_POINTS,
        euclidean_all_programs=euclidean,
        totally_non_euclidean=totally,
        non_euclidean_programs=[[g, f] for (g, f), v in verdicts.items() if not v.euclidean],
        las_vergnas=is_las_vergnas(om, certificates),
        mandel_status=status,
        mandel_witness=witness,
        L=l_statistic(om, certificates),
        adjacency=adjacency_table(om, certificates),
        mutation_count=len(certificates),
        mutation_lower_bound=bound,
        canonical=canonical_form(om) if canonical and uniform and om.chirotope is not None else None,
        dual=classify(dual(om), mandel=False) if with_dual and om.n > om.rank else None,
    )
    violations = report.chain_violations()
    if violations:
        logger.warning("Classification chain violations: %s", violations)
    return report
