"""Readers and writers for the .chi, .pts and .ccj oriented-matroid file formats."""

from __future__ import annotations

import json
import logging
import pathlib
from dataclasses import dataclass
from typing import Optional

from src.errors import ParseError, ValidationError
from src.matroid.chirotope import Chirotope
from src.matroid.oriented_matroid import OrientedMatroid, Provenance, cocircuits_from_chirotope
from src.matroid.realizable import Configuration, om_from_points
from src.matroid.validation import ValidationReport
from src.signs.sign_vector import SignVector

logger = logging.getLogger(__name__)


def _header(line: str, path) -> tuple[int, int]:
    try:
        r, n = (int(tok) for tok in line.split())
    except ValueError as exc:
        raise ParseError(f"{path}: expected 'r n' header, got {line!r}") from exc
    return r, n


def _lines(path) -> list[str]:
    try:
        text = pathlib.Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"Cannot read {path}: {exc}") from exc
    return [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]


def read_chirotope(path) -> Chirotope:
    lines = _lines(path)
    if len(lines) < 2:
        raise ParseError(f"{path}: chirotope file needs a header and a sign string")
    r, n = _header(lines[0], path)
    return Chirotope.from_string(r, n, "".join(lines[1:]))


def write_chirotope(chi: Chirotope, path) -> None:
    pathlib.Path(path).write_text(f"{chi.rank} {chi.n}\n{chi.to_string()}\n")


def read_points(path) -> Configuration:
    lines = _lines(path)
    if not lines:
        raise ParseError(f"{path}: empty point file")
    r, n = _header(lines[0], path)
    rows = []
    for ln in lines[1:]:
        try:
            row = tuple(int(tok) for tok in ln.split())
        except ValueError as exc:
            raise ParseError(f"{path}: non-integer coordinate in {ln!r}") from exc
        if len(row) != r:
            raise ParseError(f"{path}: row {ln!r} does not have {r} entries")
        rows.append(row)
    if len(rows) != n:
        raise ParseError(f"{path}: expected {n} rows, found {len(rows)}")
    return tuple(rows)


def write_points(config: Configuration, path) -> None:
    r, n = len(config[0]), len(config)
    body = "\n".join(" ".join(str(v) for v in row) for row in config)
    pathlib.Path(path).write_text(f"{r} {n}\n{body}\n")


def read_cocircuits(path) -> OrientedMatroid:
    try:
        data = json.loads(pathlib.Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"Cannot read cocircuit file {path}: {exc}") from exc
    try:
        n, rank = int(data["n"]), int(data["rank"])
        vectors = {SignVector.from_string(s) for s in data["cocircuits"]}
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"{path}: malformed cocircuit file: {exc}") from exc
    if any(v.n != n for v in vectors):
        raise ParseError(f"{path}: cocircuit length differs from n={n}")
    missing = [v.to_string() for v in vectors if -v not in vectors]
    if missing:
        report = ValidationReport()
        for m in missing:
            report.add("C1", m)
        raise ValidationError(f"{path}: cocircuit set is not closed under negation", report=report)
    return OrientedMatroid.build(vectors, n, rank, Provenance.FROM_FILE, labels=data.get("labels"))


def write_cocircuits(om: OrientedMatroid, path) -> None:
    payload = {
        "n": om.n,
        "rank": om.rank,
        "cocircuits": [x.to_string() for x in om.ordered_cocircuits],
    }
    if om.labels:
        payload["labels"] = list(om.labels)
    pathlib.Path(path).write_text(json.dumps(payload, indent=2) + "\n")


@dataclass(frozen=True)
class Loaded:
    om: OrientedMatroid
    config: Optional[Configuration] = None


def load(path) -> Loaded:
    """Dispatch on the file suffix."""
    suffix = pathlib.Path(path).suffix.lower()
    if suffix == ".chi":
        return Loaded(cocircuits_from_chirotope(read_chirotope(path), Provenance.FROM_FILE))
    if suffix == ".pts":
        config = read_points(path)
        return Loaded(om_from_points(config), config)
    if suffix in (".ccj", ".json"):
        return Loaded(read_cocircuits(path))
    raise ParseError(f"Unknown oriented-matroid file type: {path}")


def save(om: OrientedMatroid, path) -> None:
    suffix = pathlib.Path(path).suffix.lower()
    if suffix == ".chi":
        if om.chirotope is None:
            raise ParseError("Only oriented matroids with a chirotope can be written as .chi")
        write_chirotope(om.chirotope, path)
    else:
        write_cocircuits(om, path)
