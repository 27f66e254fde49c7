"""Lexicographic single-element extensions via localizations and via the chirotope."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from math import comb
from typing import Literal, Optional, Sequence

from src.errors import ParseError, PreconditionError, ValidationError, VerificationError
from src.matroid.chirotope import Chirotope
from src.matroid.operations import Inseparability, delete_element, inseparability, is_general_position
from src.matroid.oriented_matroid import OrientedMatroid, Provenance, cocircuits_from_chirotope, require_element
from src.matroid.validation import validate_cocircuit_axioms
from src.programs.program import comodular
from src.signs.sign_vector import Sign, SignVector, mask_of

logger = logging.getLogger(__name__)

Method = Literal["auto", "chirotope", "localization"]


@dataclass(frozen=True)
class LexExtensionSpec:
    """Ordered signed elements [(e_1, a_1), ..., (e_k, a_k)] of O[e_1^a_1, ..., e_k^a_k]."""

    entries: tuple[tuple[int, Sign], ...]

    def __post_init__(self):
        if not self.entries:
            raise PreconditionError("A lexicographic extension needs at least one element")
        elements = [e for e, _ in self.entries]
        if len(set(elements)) != len(elements):
            raise PreconditionError(f"Repeated element in {self}")
        if any(a == Sign.ZERO for _, a in self.entries):
            raise PreconditionError("Lexicographic signs must be + or -")

    @classmethod
    def of(cls, *pairs: tuple[int, int]) -> "LexExtensionSpec":
        return cls(tuple((e, Sign(a)) for e, a in pairs))

    @property
    def elements(self) -> tuple[int, ...]:
        return tuple(e for e, _ in self.entries)

    @property
    def signs(self) -> tuple[Sign, ...]:
        return tuple(a for _, a in self.entries)

    @property
    def head(self) -> int:
        return self.entries[0][0]

    def __len__(self) -> int:
        return len(self.entries)

    def __str__(self) -> str:
        return self.to_string()

    def to_string(self) -> str:
        return ",".join(f"{e}:{a.char}" for e, a in self.entries)

    def with_signs(self, signs: Sequence[int]) -> "LexExtensionSpec":
        return LexExtensionSpec(tuple((e, Sign(s)) for e, s in zip(self.elements, signs)))

    def check(self, om: OrientedMatroid) -> None:
        for e in self.elements:
            require_element(om, e)
        if len(self) > om.rank:
            raise PreconditionError(f"Spec {self} is longer than the rank {om.rank}")
        if om.rank_of_mask(mask_of(self.elements)) != len(self):
            raise PreconditionError(f"Spec elements {self.elements} are dependent")


def parse_spec(text: str) -> LexExtensionSpec:
    """Parse ``"0:+,1:-"`` (the colon is optional: ``"0+,1-"``)."""
    entries = []
    for token in text.split(","):
        token = token.strip().replace(":", "")
        if len(token) < 2 or token[-1] not in "+-":
            raise ParseError(f"Bad spec entry {token!r}; expected '<element>:<+|->'")
        try:
            e = int(token[:-1])
        except ValueError as exc:
            raise ParseError(f"Bad element in spec entry {token!r}") from exc
        entries.append((e, Sign.from_char(token[-1])))
    return LexExtensionSpec(tuple(entries))


@dataclass(frozen=True)
class Localization:
    """Signs sigma(X) of the new element on every cocircuit X of ``om``."""

    om: OrientedMatroid
    values: dict[SignVector, Sign]

    @classmethod
    def of_spec(cls, om: OrientedMatroid, spec: LexExtensionSpec) -> "Localization":
        values = {}
        for x in om.ordered_cocircuits:
            sign = Sign.ZERO
            for e, a in spec.entries:
                if x[e] != Sign.ZERO:
                    sign = a * x[e]
                    break
            values[x] = sign
        return cls(om, values)

    def __call__(self, x: SignVector) -> Sign:
        return self.values[x]

    def with_value(self, x: SignVector, sign: int) -> "Localization":
        values = dict(self.values)
        values[x] = Sign(sign)
        values[-x] = Sign(-sign)
        return Localization(self.om, values)


def extension_from_localization(
    localization: Localization,
    validate: bool = False,
    labels: Optional[Sequence[str]] = None,
) -> OrientedMatroid:
    """Old cocircuits extended by sigma plus (X o Y, 0) for every edge whose ends sigma separates."""
    om, sigma = localization.om, localization
    vectors = {x.append(sigma(x)) for x in om.ordered_cocircuits}
    ordered = om.ordered_cocircuits
    for i, x in enumerate(ordered):
        sx = sigma(x)
        if sx == Sign.ZERO:
            continue
        for y in ordered[i + 1:]:
            if sigma(y) != -sx or not x.conformal(y) or not comodular(om, x, y):
                continue
            vectors.add(x.compose(y).append(Sign.ZERO))
            vectors.add((-x).compose(-y).append(Sign.ZERO))
    if labels is None and om.labels:
        labels = tuple(om.labels) + ("p",)
    extended = OrientedMatroid.build(vectors, om.n + 1, om.rank, Provenance.DERIVED, labels=labels)
    if validate:
        report = validate_cocircuit_axioms(extended.ordered_cocircuits, extended.n)
        if not report.ok:
            raise ValidationError("Localization does not define a single-element extension", report=report)
    return extended


def localization_of(om_ext: OrientedMatroid, e: Optional[int] = None) -> Localization:
    """Recover (om_ext \\ e, sigma) from a single-element extension."""
    e = om_ext.n - 1 if e is None else e
    require_element(om_ext, e)
    om = delete_element(om_ext, e)
    keep = [h for h in range(om_ext.n) if h != e]
    values: dict[SignVector, Sign] = {}
    for y in om_ext.ordered_cocircuits:
        restricted = y.restrict(keep)
        if restricted in om.cocircuits:
            values[restricted] = y[e]
    missing = [x for x in om.ordered_cocircuits if x not in values]
    if missing:
        raise VerificationError(f"Cocircuits {[str(x) for x in missing]} have no lift in the extension")
    return Localization(om, values)


def _lex_chirotope(chi: Chirotope, spec: LexExtensionSpec) -> Chirotope:
    """chi'(p, lambda) = first nonzero a_i * chi(e_i, lambda); p is stored last."""
    r, n = chi.rank, chi.n
    parity = -1 if (r - 1) & 1 else 1

    def value(basis: tuple[int, ...]) -> int:
        if basis[-1] != n:
            return chi.basis_sign(basis)
        rest = basis[:-1]
        for e, a in spec.entries:
            s = chi(e, *rest)
            if s != Sign.ZERO:
                return parity * a * s
        return 0

    return Chirotope.from_function(r, n + 1, value)


def lex_extend(om: OrientedMatroid, spec: LexExtensionSpec, method: Method = "auto") -> OrientedMatroid:
    """O[e_1^a_1, ..., e_k^a_k] with the new element appended as element n."""
    spec.check(om)
    fast = om.chirotope is not None and om.chirotope.is_uniform() and len(spec) == om.rank
    if method == "chirotope" and not fast:
        raise PreconditionError("The chirotope path needs a uniform chirotope and a full-length spec")
    labels = tuple(om.labels) + ("p",) if om.labels else None
    if method == "chirotope" or (method == "auto" and fast):
        chi = _lex_chirotope(om.chirotope, spec)
        return cocircuits_from_chirotope(chi, Provenance.DERIVED, labels, validate=False)
    return extension_from_localization(Localization.of_spec(om, spec), labels=labels)


def lex_paths_agree(om: OrientedMatroid, spec: LexExtensionSpec) -> bool:
    return lex_extend(om, spec, "chirotope").cocircuits == lex_extend(om, spec, "localization").cocircuits


def corresponding_cocircuit(om_ext: OrientedMatroid, x: SignVector, f: int, f_prime: int) -> SignVector:
    """The neighbour Y of X across the inseparable pair (f, f').

    For X_{f'} = 0 != X_f, Y has Y_f = 0, agrees with X off {f, f'} and X_f = -a * Y_{f'} with
    a = + for a contravariant pair and - for a covariant one; symmetric with f and f' exchanged.
    """
    kind = inseparability(om_ext, f, f_prime)
    if kind is None:
        raise PreconditionError(f"Elements {f} and {f_prime} are not inseparable")
    if x not in om_ext.cocircuits:
        raise PreconditionError(f"{x} is not a cocircuit")
    if x[f_prime] == Sign.ZERO and x[f] != Sign.ZERO:
        zero, nonzero = f_prime, f
    elif x[f] == Sign.ZERO and x[f_prime] != Sign.ZERO:
        zero, nonzero = f, f_prime
    else:
        raise PreconditionError(f"{x} must vanish on exactly one of {f}, {f_prime}")
    alpha = 1 if kind is Inseparability.CONTRAVARIANT else -1
    target = x.with_entry(nonzero, Sign.ZERO).with_entry(zero, -alpha * x[nonzero])
    if target not in om_ext.cocircuits:
        raise VerificationError(f"No corresponding cocircuit {target} for {x}")
    return target


def fprime_zero_relation_holds(om: OrientedMatroid, spec: LexExtensionSpec) -> bool:
    """Cocircuits of O[f^a1, e_2^a2, ...] with f' = 0 != f satisfy X_f = -a1 * a_i * X_{e_i}.

    Here i is the first index past the head with X_{e_i} != 0, and a_i its sign.
    """
    if not is_general_position(om, spec.head):
        raise PreconditionError(f"Head {spec.head} is not in general position")
    ext = lex_extend(om, spec)
    p, f = om.n, spec.head
    a1 = spec.signs[0]
    for x in ext.zero_at(p):
        if x[f] == Sign.ZERO:
            continue
        for e, a in spec.entries[1:]:
            if x[e] != Sign.ZERO:
                if x[f] != -(a1 * a * x[e]):
                    logger.debug("Relation fails on %s at %d", x, e)
                    return False
                break
    return True


def new_cocircuits(om: OrientedMatroid, ext: OrientedMatroid) -> list[SignVector]:
    """Cocircuits of the extension that vanish on the new element but do not restrict to an old cocircuit."""
    p = ext.n - 1
    keep = list(range(om.n))
    return [x for x in ext.zero_at(p) if x.restrict(keep) not in om.cocircuits]


def expected_cocircuit_count(n: int, r: int) -> int:
    """2 * C(n, r - 1) cocircuits for a uniform oriented matroid."""
    return 2 * comb(n, r - 1)

