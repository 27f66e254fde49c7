"""Rational vector configurations: the realizable test corpus, a point-side cocircuit oracle and IP1-style extensions."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import lcm
from typing import Iterable, Optional, Sequence

import numpy as np

from src.errors import BudgetExhausted, PreconditionError
from src.matroid import linear
from src.matroid.chirotope import chirotope_from_points
from src.matroid.oriented_matroid import OrientedMatroid, Provenance, cocircuits_from_chirotope
from src.signs.sign_vector import Sign, SignVector

logger = logging.getLogger(__name__)

Configuration = tuple[tuple[int | Fraction, ...], ...]


def om_from_points(config: Sequence[Sequence], labels: Optional[Sequence[str]] = None) -> OrientedMatroid:
    chi = chirotope_from_points(config)
    return cocircuits_from_chirotope(chi, Provenance.FROM_POINTS, labels, validate=False)


def point_cocircuits(config: Sequence[Sequence]) -> frozenset[SignVector]:
    """Cocircuits read off the normal vector of every hyperplane spanned by r-1 rows."""
    rows = linear.to_fractions(config)
    r = len(rows[0])
    vectors: set[SignVector] = set()
    for a in combinations(range(len(rows)), r - 1):
        sub = [rows[i] for i in a]
        if linear.rank(sub) != r - 1:
            continue
        normal = linear.null_space(sub, r)[0]
        x = SignVector.from_signs([Sign.of(linear.dot(row, normal)) for row in rows])
        vectors.add(x)
        vectors.add(-x)
    return frozenset(vectors)


# -- catalog -------------------------------------------------------------------------------


def cyclic_configuration(r: int, n: int, start: int = 1) -> Configuration:
    """Moment-curve rows (1, t, ..., t^(r-1)); every maximal minor is a positive Vandermonde."""
    return tuple(tuple(t ** k for k in range(r)) for t in range(start, start + n))


def w3_configuration() -> Configuration:
    return ((1, 1), (1, 2), (1, 3))


def w3() -> OrientedMatroid:
    return om_from_points(w3_configuration())


def cyclic(r: int, n: int) -> OrientedMatroid:
    return om_from_points(cyclic_configuration(r, n))


def uniform_rank2(n: int) -> OrientedMatroid:
    return cyclic(2, n)


def random_configuration(
    rng: np.random.Generator,
    r: int,
    n: int,
    bound: int = 9,
    uniform: bool = True,
    max_attempts: int = 1000,
) -> Configuration:
    """Seeded random integer configuration of rank r, generic when ``uniform``."""
    for _ in range(max_attempts):
        rows = rng.integers(-bound, bound + 1, size=(n, r))
        config = tuple(tuple(int(v) for v in row) for row in rows)
        if linear.rank(config) < r:
            continue
        if uniform and not chirotope_from_points(config).is_uniform():
            continue
        return config
    raise BudgetExhausted(f"No rank-{r} configuration on {n} points after {max_attempts} attempts")


# -- extensions through hyperplanes --------------------------------------------------------


@dataclass(frozen=True)
class ThroughExtension:
    config: Configuration
    seed: Optional[int]
    attempts: int

    @property
    def point(self) -> tuple:
        return self.config[-1]


def _integral(vector: Sequence[Fraction]) -> tuple[int, ...]:
    scale = lcm(*(v.denominator for v in vector))
    return tuple(int(v * scale) for v in vector)


def realizable_extend_through(
    config: Sequence[Sequence],
    targets: Iterable[Iterable[int]],
    rng: Optional[np.random.Generator] = None,
    seed: Optional[int] = None,
    max_attempts: int = 200,
) -> ThroughExtension:
    """Append a vector lying on every target hyperplane and otherwise generic.

    Args:
        config: n x r integer or rational vector configuration.
        targets: zero sets of cocircuits; each must span a hyperplane.
        rng: generator to draw coefficients from; built from ``seed`` when absent.

    Raises:
        PreconditionError: too many targets, a target not spanning a hyperplane, or targets whose
            hyperplanes meet only in the origin.
    """
    rows = linear.to_fractions(config)
    r = len(rows[0])
    targets = [sorted(t) for t in targets]
    if len(targets) > r - 1:
        raise PreconditionError(f"At most {r - 1} target hyperplanes in rank {r}")
    normals = []
    for t in targets:
        sub = [rows[i] for i in t]
        if linear.rank(sub) != r - 1:
            raise PreconditionError(f"Target {t} does not span a hyperplane")
        normals.append(linear.null_space(sub, r)[0])
    solutions = linear.null_space(normals, r)
    if not solutions:
        raise PreconditionError("Targets force the zero vector only")

    if rng is None:
        rng = np.random.default_rng(seed)
    hyperplanes = [
        [rows[i] for i in a]
        for a in combinations(range(len(rows)), r - 1)
        if linear.rank([rows[i] for i in a]) == r - 1
    ]
    free = [
        sub for sub in hyperplanes
        if any(linear.determinant(sub + [b]) != 0 for b in solutions)
    ]
    for attempt in range(1, max_attempts + 1):
        bound = 2 + attempt
        coefficients = [
            Fraction(int(rng.integers(-bound, bound + 1)), int(rng.integers(1, bound + 1)))
            for _ in solutions
        ]
        if all(c == 0 for c in coefficients):
            continue
        vector = [sum((c * b[k] for c, b in zip(coefficients, solutions)), Fraction(0)) for k in range(r)]
        if all(v == 0 for v in vector):
            continue
        if all(linear.determinant(sub + [vector]) != 0 for sub in free):
            logger.debug("Extension through %s found after %d attempts", targets, attempt)
            new_config = tuple(tuple(row) for row in config) + (_integral(vector),)
            return ThroughExtension(new_config, seed, attempt)
    raise BudgetExhausted(f"No generic point through {targets} after {max_attempts} attempts")
