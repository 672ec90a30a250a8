"""Enumerate ``S`` over a box of ``(p, q)`` and report one row per triple class."""

from __future__ import annotations

import logging
from collections.abc import Iterable
from dataclasses import dataclass
from itertools import product

import polars as pl
from polars._typing import PolarsDataType

from .family import ExplicitPoints, explicit_points, s_membership
from .triples import TripleClass, canonicalize

logger = logging.getLogger(__name__)

SEARCH_SCHEMA: dict[str, PolarsDataType] = {
    "class": pl.String,
    "t": pl.String,
    "p": pl.String,
    "q": pl.String,
    "u": pl.String,
    "triple": pl.String,
    "q1": pl.String,
    "q2": pl.String,
    "q1_torsion": pl.Boolean,
    "q2_torsion": pl.Boolean,
    "degenerate": pl.Boolean,
    "rank_lower_bound": pl.String,
    "witnesses": pl.String,
}


@dataclass(frozen=True, slots=True)
class SearchRow:
    triple_class: TripleClass
    points: ExplicitPoints
    witnesses: tuple[tuple[int, int], ...]
    rank_lower_bound: int

    def as_record(self) -> dict[str, object]:
        member = self.points.member
        return {
            "class": str(self.triple_class.representative),
            "t": str(self.triple_class.parameter),
            "p": str(member.p),
            "q": str(member.q),
            "u": str(member.u),
            "triple": str(member.triple),
            "q1": str(self.points.q1),
            "q2": str(self.points.q2),
            "q1_torsion": self.points.q1_test.torsion,
            "q2_torsion": self.points.q2_test.torsion,
            "degenerate": self.points.degenerate,
            "rank_lower_bound": str(self.rank_lower_bound),
            "witnesses": ";".join(f"({p},{q})" for p, q in self.witnesses),
        }


@dataclass(frozen=True, slots=True)
class SearchReport:
    rows: tuple[SearchRow, ...]

    def __len__(self) -> int:
        return len(self.rows)

    def frame(self) -> pl.DataFrame:
        if not self.rows:
            return pl.DataFrame(schema=SEARCH_SCHEMA)
        return pl.DataFrame([row.as_record() for row in self.rows], schema=SEARCH_SCHEMA)

    def degenerate(self) -> list[SearchRow]:
        return [row for row in self.rows if row.points.degenerate]

    def row_for(self, p: int, q: int) -> SearchRow | None:
        return next((row for row in self.rows if (p, q) in row.witnesses), None)


def search_report(p_values: Iterable[int], q_values: Iterable[int] | None = None) -> SearchReport:
    """Every ``(p, q)`` of the box, grouped by triple class in order of first appearance.

    ``q_values`` defaults to ``p_values``.  Pairs with ``p = 0`` or ``q = 0``
    are skipped.  Each class keeps the points of its first witness and the
    best rank lower bound over all of them.
    """

    ps = sorted(set(p_values))
    qs = sorted(set(q_values)) if q_values is not None else ps
    groups: dict[TripleClass, list[ExplicitPoints]] = {}
    for p, q in product(ps, qs):
        if p == 0 or q == 0:
            continue
        member = s_membership(p, q)
        groups.setdefault(canonicalize(member.triple), []).append(explicit_points(member))
    rows = tuple(
        SearchRow(
            triple_class,
            members[0],
            tuple((m.member.p, m.member.q) for m in members),
            max(m.rank_lower_bound for m in members),
        )
        for triple_class, members in groups.items()
    )
    logger.info("searched %d pairs: %d classes", len(ps) * len(qs), len(rows))
    return SearchReport(rows)


__all__ = ["SEARCH_SCHEMA", "SearchReport", "SearchRow", "search_report"]
