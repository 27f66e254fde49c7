"""Perturbing a single-element extension at one cocircuit through the new element."""

from __future__ import annotations

import logging

from src.errors import PerturbationError, PreconditionError, ValidationError
from src.extensions.lexicographic import extension_from_localization, localization_of
from src.matroid.operations import relabel
from src.matroid.oriented_matroid import OrientedMatroid, require_element
from src.signs.sign_vector import Sign, SignVector

logger = logging.getLogger(__name__)


def perturb_extension(om_ext: OrientedMatroid, x: SignVector, e: int, sign: int = Sign.MINUS) -> OrientedMatroid:
    """Move e off (or back onto) the cocircuit X: X_e becomes ``sign`` and -X_e becomes -sign.

    Every other cocircuit of om_ext \\ e keeps its e-value. Raises PerturbationError when X does not
    lift a cocircuit of om_ext \\ e or the result violates the cocircuit axioms.
    """
    require_element(om_ext, e)
    if x not in om_ext.cocircuits:
        raise PreconditionError(f"{x} is not a cocircuit")
    keep = [h for h in range(om_ext.n) if h != e]
    localization = localization_of(om_ext, e)
    restricted = x.restrict(keep)
    if restricted not in localization.values:
        raise PerturbationError(f"{x} does not lift a cocircuit of the deletion of {e}")
    changed = localization.with_value(restricted, Sign(sign))
    try:
        rebuilt = extension_from_localization(changed, validate=True)
    except ValidationError as exc:
        raise PerturbationError(f"Perturbing {e} at {x} leaves the oriented matroids: {exc}", report=exc.report) from exc
    # rebuilt has e appended last; move it back to its position
    new_of_old = keep + [e]
    result = relabel(rebuilt, new_of_old)
    logger.debug("Perturbed element %d at %s to %s", e, x, Sign(sign).char)
    return OrientedMatroid.build(result.cocircuits, result.n, result.rank, om_ext.provenance, labels=om_ext.labels)
