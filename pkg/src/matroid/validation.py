"""Exhaustive axiom checks for chirotopes (3-term Grassmann-Pluecker) and cocircuit sets (C0-C3)."""

from __future__ import annotations

import logging
from itertools import combinations
from typing import Iterable

from pydantic import BaseModel, Field

from src.matroid.chirotope import Chirotope
from src.signs.sign_vector import Sign, SignVector, iter_bits

logger = logging.getLogger(__name__)


class Violation(BaseModel):
    axiom: str
    witness: list = Field(default_factory=list)


class ValidationReport(BaseModel):
    violations: list[Violation] = Field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, axiom: str, *witness) -> None:
        self.violations.append(Violation(axiom=axiom, witness=list(witness)))

    def summary(self) -> dict:
        return {"ok": self.ok, "violations": [v.model_dump() for v in self.violations]}


def validate_chirotope(chi: Chirotope, max_violations: int | None = None) -> ValidationReport:
    """Nonzero, matroid support (only needed when non-uniform) and all 3-term GP relations."""
    report = ValidationReport()
    if chi.is_zero():
        report.add("nonzero")
        return report
    r, n = chi.rank, chi.n

    if not chi.is_uniform():
        support = {b for b, s in chi.items() if s != Sign.ZERO}
        for b1 in support:
            for b2 in support:
                for e in set(b1) - set(b2):
                    rest = set(b1) - {e}
                    if not any(tuple(sorted(rest | {f})) in support for f in set(b2) - set(b1)):
                        report.add("basis_exchange", list(b1), list(b2), e)
                        if max_violations and len(report.violations) >= max_violations:
                            return report

    if r < 2 or n < r + 2:
        return report
    for sigma in combinations(range(n), r - 2):
        rest = [e for e in range(n) if e not in sigma]
        for a, b, c, d in combinations(rest, 4):
            terms = (
                chi(*sigma, a, b) * chi(*sigma, c, d),
                -(chi(*sigma, a, c) * chi(*sigma, b, d)),
                chi(*sigma, a, d) * chi(*sigma, b, c),
            )
            nonzero = {t for t in terms if t != Sign.ZERO}
            if len(nonzero) == 1:
                report.add("gp3", *sigma, a, b, c, d)
                if max_violations and len(report.violations) >= max_violations:
                    return report
    return report


def validate_cocircuit_axioms(cocircuits: Iterable[SignVector], n: int | None = None) -> ValidationReport:
    """C0 no zero vector, C1 negation closure, C2 support incomparability, C3 weak elimination."""
    vectors = sorted(set(cocircuits), key=SignVector.sort_key)
    report = ValidationReport()
    if not vectors:
        return report
    n = vectors[0].n if n is None else n
    if any(v.n != n for v in vectors):
        report.add("length")
        return report
    members = set(vectors)

    for x in vectors:
        if x.is_zero():
            report.add("C0", x.to_string())
        if -x not in members:
            report.add("C1", x.to_string())

    for i, x in enumerate(vectors):
        for y in vectors[i + 1:]:
            sx, sy = x.support_mask, y.support_mask
            if sx == sy and y != -x:
                report.add("C2", x.to_string(), y.to_string())
            elif sx != sy and (sx & ~sy == 0 or sy & ~sx == 0):
                report.add("C2", x.to_string(), y.to_string())

    zero_at = [[z for z in vectors if not (z.support_mask >> e) & 1] for e in range(n)]
    for i, x in enumerate(vectors):
        for y in vectors[i + 1:]:
            if y == -x:
                continue
            sep = x.separation_mask(y)
            if not sep:
                continue
            plus, minus = x.plus | y.plus, x.minus | y.minus
            for e in iter_bits(sep):
                if not any(not (z.plus & ~plus) and not (z.minus & ~minus) for z in zero_at[e]):
                    report.add("C3", x.to_string(), y.to_string(), e)
    if report.violations:
        logger.debug("Cocircuit validation found %d violations", len(report.violations))
    return report
