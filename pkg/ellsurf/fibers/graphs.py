"""Kodaira fibers as configurations of rational curves, and Frobenius acting on them.

A fiber is stored as components (with multiplicities), the singular points
of the fiber, and the branches of components through those points.  The
special fiber of the smooth model is the union of the components; its
number of ``F_Q``-points follows from the Frobenius action alone:

    N = (Q + 1) * f + sum over fixed points P of (1 - fixed branches at P)

with ``f`` the number of fixed components.  For transversal crossings this
is ``(Q + 1) f - d + s``: ``d`` rational points on two fixed components,
``s`` rational points where two swapped components meet.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

import networkx as nx
from sympy import Matrix, zeros

from .symbols import KodairaSymbol


class GraphError(ValueError):
    """Raised for inconsistent fiber configurations or actions."""


Permutation = tuple[int, ...]


def _identity(size: int) -> Permutation:
    return tuple(range(size))


def _compose(first: Permutation, second: Permutation) -> Permutation:
    """``first`` after ``second``."""

    return tuple(first[i] for i in second)


def cycle_lengths(permutation: Permutation, support: Sequence[int] | None = None) -> list[int]:
    """Cycle lengths of ``permutation`` on ``support`` (which must be stable)."""

    points = list(range(len(permutation))) if support is None else list(support)
    allowed = set(points)
    seen: set[int] = set()
    lengths = []
    for start in points:
        if start in seen:
            continue
        length = 0
        current = start
        while current not in seen:
            if current not in allowed:
                raise GraphError("support is not stable under the permutation")
            seen.add(current)
            current = permutation[current]
            length += 1
        lengths.append(length)
    return sorted(lengths)


@dataclass(frozen=True, slots=True)
class FiberGraph:
    """Components ``0..m-1`` (component ``0`` meets the zero section) and singular points.

    ``points[j]`` lists the components through point ``j``, once per branch,
    so a node on a single component lists it twice.  ``contact[j]`` is the
    local intersection number of two distinct branches at ``j``.
    """

    symbol: KodairaSymbol
    multiplicities: tuple[int, ...]
    points: tuple[tuple[int, ...], ...]
    contact: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.multiplicities)

    @property
    def branches(self) -> tuple[tuple[int, int], ...]:
        """``(component, point)`` per branch, points in order."""

        return tuple(
            (component, index)
            for index, members in enumerate(self.points)
            for component in members
        )

    def branches_at(self, point: int) -> list[int]:
        return [i for i, (_, p) in enumerate(self.branches) if p == point]

    def graph(self) -> nx.MultiGraph:
        """Bipartite incidence graph of components and points, one edge per branch."""

        graph = nx.MultiGraph(symbol=str(self.symbol))
        for index, multiplicity in enumerate(self.multiplicities):
            graph.add_node(("C", index), kind="component", multiplicity=multiplicity)
        for index, contact in enumerate(self.contact):
            graph.add_node(("P", index), kind="point", contact=contact)
        for branch, (component, point) in enumerate(self.branches):
            graph.add_edge(("C", component), ("P", point), key=branch)
        return graph

    def dual_graph(self) -> nx.MultiGraph:
        """Classical dual graph: one edge per pair of components meeting at a point."""

        dual = nx.MultiGraph(symbol=str(self.symbol))
        dual.add_nodes_from(range(self.size))
        for index, members in enumerate(self.points):
            distinct = sorted(set(members))
            for i, first in enumerate(distinct):
                for second in distinct[i + 1 :]:
                    dual.add_edge(first, second, point=index, weight=self.contact[index])
        return dual

    def intersection_matrix(self) -> Matrix:
        """Intersection numbers of all components."""

        size = self.size
        matrix = zeros(size, size)
        for index in range(size):
            matrix[index, index] = 0 if size == 1 else -2
        for index, members in enumerate(self.points):
            distinct = sorted(set(members))
            for i, first in enumerate(distinct):
                for second in distinct[i + 1 :]:
                    matrix[first, second] += self.contact[index]
                    matrix[second, first] += self.contact[index]
        return matrix

    def root_matrix(self) -> Matrix:
        """Negative of the intersection form on the components missing the zero section."""

        matrix = self.intersection_matrix()
        if self.size == 1:
            return zeros(0, 0)
        return -matrix[1:, 1:]

    def fiber_class_check(self) -> bool:
        """The fiber ``sum m_i C_i`` meets every component trivially."""

        vector = Matrix(list(self.multiplicities))
        return bool((self.intersection_matrix() * vector).is_zero_matrix)


@dataclass(frozen=True, slots=True)
class FrobeniusAction:
    """Images of components, points and branches under one Frobenius."""

    components: Permutation
    points: Permutation
    branches: Permutation

    @classmethod
    def trivial(cls, graph: FiberGraph) -> FrobeniusAction:
        return cls(
            _identity(graph.size), _identity(len(graph.points)), _identity(len(graph.branches))
        )

    @property
    def is_trivial(self) -> bool:
        return all(i == image for i, image in enumerate(self.components)) and all(
            i == image for i, image in enumerate(self.branches)
        )

    def power(self, exponent: int) -> FrobeniusAction:
        if exponent < 1:
            raise GraphError("Frobenius powers start at one")
        components, points, branches = self.components, self.points, self.branches
        for _ in range(exponent - 1):
            components = _compose(self.components, components)
            points = _compose(self.points, points)
            branches = _compose(self.branches, branches)
        return FrobeniusAction(components, points, branches)

    def fixed_components(self) -> list[int]:
        return [i for i, image in enumerate(self.components) if i == image]

    def class_cycles(self) -> list[int]:
        """Cycle lengths on the components other than component ``0``."""

        return cycle_lengths(self.components, range(1, len(self.components)))


def count_points(graph: FiberGraph, action: FrobeniusAction, field_size: int) -> int:
    """``F_Q``-points of the special fiber, ``Q = field_size``, for the given Frobenius."""

    total = (field_size + 1) * len(action.fixed_components())
    for point, image in enumerate(action.points):
        if point != image:
            continue
        fixed = sum(1 for b in graph.branches_at(point) if action.branches[b] == b)
        total += 1 - fixed
    return total


# ---------------------------------------------------------------------------
# Configurations
# ---------------------------------------------------------------------------


def _chain_points(chain: Sequence[int]) -> list[tuple[int, ...]]:
    return [(chain[i], chain[i + 1]) for i in range(len(chain) - 1)]


def fiber_graph(symbol: KodairaSymbol) -> FiberGraph:
    """The configuration of a Kodaira fiber type."""

    name, n = symbol.name, symbol.n
    if symbol.is_good:
        return FiberGraph(symbol, (1,), (), ())
    if name == "I":
        points = tuple((j, (j + 1) % n) for j in range(n))
        return FiberGraph(symbol, (1,) * n, points, (1,) * n)
    if name == "I*":
        # leaves 0..3, chain 4..4+n; leaves 0, 1 at the start, 2, 3 at the end
        chain = list(range(4, 5 + n))
        points = [(0, chain[0]), (1, chain[0]), (2, chain[-1]), (3, chain[-1])]
        points += _chain_points(chain)
        multiplicities = (1, 1, 1, 1) + (2,) * (n + 1)
        return FiberGraph(symbol, multiplicities, tuple(points), (1,) * len(points))
    if name == "II":
        return FiberGraph(symbol, (1,), ((0,),), (1,))
    if name == "III":
        return FiberGraph(symbol, (1, 1), ((0, 1),), (2,))
    if name == "IV":
        return FiberGraph(symbol, (1, 1, 1), ((0, 1, 2),), (1,))
    if name == "IV*":
        # leaves 0..2, arms 3..5, centre 6
        points = [(i, 3 + i) for i in range(3)] + [(3 + i, 6) for i in range(3)]
        return FiberGraph(symbol, (1, 1, 1, 2, 2, 2, 3), tuple(points), (1,) * 6)
    if name == "III*":
        points = _chain_points([0, 1, 2, 3, 4, 5, 6]) + [(3, 7)]
        return FiberGraph(symbol, (1, 2, 3, 4, 3, 2, 1, 2), tuple(points), (1,) * 7)
    if name == "II*":
        points = _chain_points([0, 1, 2, 3, 4, 5, 6, 7]) + [(5, 8)]
        return FiberGraph(symbol, (1, 2, 3, 4, 5, 6, 4, 2, 3), tuple(points), (1,) * 8)
    raise GraphError(f"no configuration for {symbol}")


def _induced(
    graph: FiberGraph, components: Permutation, points: Permutation
) -> FrobeniusAction:
    """Branch permutation induced by component and point images."""

    images = []
    for component, point in graph.branches:
        target = points[point]
        candidates = [
            b
            for b, (c, p) in enumerate(graph.branches)
            if p == target and c == components[component]
        ]
        if not candidates:
            raise GraphError("component and point images are incompatible")
        images.append(candidates[0])
    action = FrobeniusAction(components, points, tuple(images))
    if sorted(action.branches) != list(range(len(graph.branches))):
        raise GraphError("induced branch map is not a permutation")
    return action


def _swap(size: int, first: int, second: int) -> list[int]:
    images = list(range(size))
    images[first], images[second] = second, first
    return images


def frobenius_action(graph: FiberGraph, splitness: str) -> FrobeniusAction:
    """Frobenius on a fiber from its splitness descriptor.

    ``"split"`` is the trivial action.  ``"non-split"`` is the reflection of
    an ``I_n`` cycle, the swap of the far leaves of ``I_n*`` (``n >= 1``) or
    of the two free arms of ``IV`` and ``IV*``.  For ``I0*`` the descriptor is
    the orbit pattern ``"1+1+1"``, ``"1+2"`` or ``"3"`` on the three free leaves.
    """

    symbol = graph.symbol
    name, n = symbol.name, symbol.n
    if splitness in ("split", "1+1+1"):
        return FrobeniusAction.trivial(graph)
    if name == "I" and splitness == "non-split" and n >= 1:
        components = tuple((-i) % n for i in range(n))
        points = tuple((-j - 1) % n for j in range(n))
        if n == 1:
            return FrobeniusAction((0,), (0,), (1, 0))
        return _induced(graph, components, points)
    if name == "I*":
        point_count = len(graph.points)
        if splitness == "non-split" and n >= 1:
            return _induced(
                graph, tuple(_swap(graph.size, 2, 3)), tuple(_swap(point_count, 2, 3))
            )
        if n == 0 and splitness == "1+2":
            return _induced(
                graph, tuple(_swap(graph.size, 2, 3)), tuple(_swap(point_count, 2, 3))
            )
        if n == 0 and splitness == "3":
            components = (0, 2, 3, 1, 4)
            points = (0, 2, 3, 1)
            return _induced(graph, components, points)
    if name == "IV" and splitness == "non-split":
        return _induced(graph, (0, 2, 1), (0,))
    if name == "IV*" and splitness == "non-split":
        components = (0, 2, 1, 3, 5, 4, 6)
        points = (0, 2, 1, 3, 5, 4)
        return _induced(graph, components, points)
    raise GraphError(f"splitness {splitness!r} does not apply to {symbol}")


__all__ = [
    "FiberGraph",
    "FrobeniusAction",
    "GraphError",
    "Permutation",
    "count_points",
    "cycle_lengths",
    "fiber_graph",
    "frobenius_action",
]
