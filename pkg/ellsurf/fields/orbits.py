"""Frobenius orbits on the projective line over ``F_{p^m}``."""

from __future__ import annotations

import logging
from collections import Counter
from collections.abc import Iterator
from dataclasses import dataclass

import numpy as np

from .extension import ExtField
from .tables import FieldTables, IntArray, build_tables

logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True, eq=False)
class OrbitDecomposition:
    """Orbits of ``x -> x**p`` on ``P^1(F_{p^m})``.

    ``representatives`` holds the smallest encoded element of each finite
    orbit and ``sizes`` the orbit lengths, which equal the degree of the
    smallest field containing the orbit.  Infinity is always one extra fixed
    point.
    """

    field: ExtField
    representatives: IntArray
    sizes: IntArray

    @property
    def total(self) -> int:
        return int(self.sizes.sum()) + 1

    def census(self) -> dict[int, int]:
        """Number of orbits of each size, infinity included in size 1."""

        counts = Counter(int(s) for s in self.sizes)
        counts[1] += 1
        return dict(sorted(counts.items()))

    def exact(self, degree: int) -> IntArray:
        """Representatives of the orbits of the given size."""

        return self.representatives[self.sizes == degree]

    def __iter__(self) -> Iterator[tuple[int | None, int]]:
        yield (None, 1)
        for rep, size in zip(self.representatives.tolist(), self.sizes.tolist(), strict=True):
            yield (rep, size)


def orbit_images(tables: FieldTables) -> IntArray:
    """``images[j, x]`` is ``x**(p**j)`` for ``j = 0..m-1``."""

    field = tables.field
    elements = tables.elements()
    images = np.empty((field.m, field.q), dtype=np.int64)
    images[0] = elements
    for j in range(1, field.m):
        images[j] = tables.frobenius(images[j - 1])
    return images


def frobenius_orbits_P1(
    field: ExtField, tables: FieldTables | None = None
) -> OrbitDecomposition:
    """Partition ``P^1(F_{p^m})`` into ``p``-power Frobenius orbits."""

    tables = build_tables(field) if tables is None else tables
    images = orbit_images(tables)
    elements = images[0]
    sizes = np.full(field.q, field.m, dtype=np.int64)
    # The smallest divisor with a fixed point is the exact degree.
    for j in range(1, field.m):
        if field.m % j == 0:
            fixed = images[j] == elements
            sizes = np.where(fixed & (sizes > j), j, sizes)
    representatives = images.min(axis=0)
    keep = representatives == elements
    decomposition = OrbitDecomposition(field, elements[keep], sizes[keep])
    logger.debug("orbit census for %s: %s", field, decomposition.census())
    return decomposition


def exact_degree_points(field: ExtField, tables: FieldTables | None = None) -> IntArray:
    """One representative per closed point of degree exactly ``m`` on the affine line."""

    return frobenius_orbits_P1(field, tables).exact(field.m)


__all__ = ["OrbitDecomposition", "exact_degree_points", "frobenius_orbits_P1", "orbit_images"]
