"""Aggregate L statistics by classification flags."""

from __future__ import annotations

from math import ceil
from typing import Iterable

import pandas as pd

from src.classify.report import ClassificationReport


def reports_frame(reports: Iterable[ClassificationReport]) -> pd.DataFrame:
    rows = [
        {
            "rank": r.rank,
            "n": r.n,
            "realizable": r.realizable_by_construction,
            "euclidean": r.euclidean_all_programs,
            "mandel": r.mandel_witness is not None,
            "las_vergnas": r.las_vergnas,
            "L": r.L,
            "mutations": r.mutation_count,
        }
        for r in reports
    ]
    return pd.DataFrame(rows, columns=["rank", "n", "realizable", "euclidean", "mandel", "las_vergnas", "L", "mutations"])


def summary_table(reports: Iterable[ClassificationReport]) -> pd.DataFrame:
    """One row per (class, rank) with the L range observed and the mutation floor ceil(3n/r) for Euclidean rows."""
    frame = reports_frame(reports)
    if frame.empty:
        return pd.DataFrame(columns=["class", "rank", "instances", "L_min", "L_max", "mutations_min", "mutation_floor"])
    parts = []
    for label in ("realizable", "euclidean", "mandel", "las_vergnas"):
        members = frame[frame[label]]
        if members.empty:
            continue
        grouped = members.groupby("rank").agg(
            instances=("L", "size"),
            L_min=("L", "min"),
            L_max=("L", "max"),
            mutations_min=("mutations", "min"),
            n_max=("n", "max"),
        ).reset_index()
        grouped.insert(0, "class", label)
        parts.append(grouped)
    if not parts:
        return pd.DataFrame(columns=["class", "rank", "instances", "L_min", "L_max", "mutations_min", "mutation_floor"])
    table = pd.concat(parts, ignore_index=True)
    table["mutation_floor"] = [
        ceil(3 * n / r) if cls == "euclidean" and r >= 3 else None
        for cls, n, r in zip(table["class"], table["n_max"], table["rank"])
    ]
    return table.drop(columns=["n_max"])
