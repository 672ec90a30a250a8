"""Completing a characteristic polynomial on ``H^2`` from a few traces.

Poincaré duality pairs every eigenvalue ``lambda`` of Frobenius with
``q^2 / lambda``, so the unknown factor ``U`` of degree ``u`` satisfies
``c_{u-k} = e q^{u-2k} c_k`` for a sign ``e``.  The first ``floor(u/2)``
coefficients fix the rest.  Both signs are tried; a branch survives when
it reproduces every supplied trace and all of its roots lie on the circle
of radius ``q``.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass

from .charpoly import CharPoly, SpectraError, newton_coefficients

logger = logging.getLogger(__name__)


class DualityError(SpectraError):
    """Raised when no sign branch reproduces the traces."""


class AmbiguousCompletion(SpectraError):
    """Raised when several sign branches survive; one more trace is needed."""

    def __init__(self, branches: Sequence[DualityBranch]) -> None:
        self.branches = list(branches)
        signs = ", ".join(f"{branch.sign:+d}" for branch in self.branches)
        super().__init__(
            f"{len(self.branches)} completions survive (signs {signs}); supply one more trace"
        )


@dataclass(frozen=True, slots=True)
class DualityBranch:
    sign: int
    unknown: CharPoly
    full: CharPoly


def quotient_traces(traces: Sequence[int], known: CharPoly) -> list[int]:
    """Traces on ``H^2`` minus the power sums of the known factor."""

    known_sums = known.power_sums(len(traces))
    return [int(t) - s for t, s in zip(traces, known_sums, strict=True)]


def _complete(head: list[int], degree: int, q: int, sign: int) -> list[int] | None:
    coefficients = head + [0] * (degree + 1 - len(head))
    for index in range(len(head), degree + 1):
        coefficients[index] = sign * q ** (2 * index - degree) * coefficients[degree - index]
    if degree % 2 == 0:
        middle = degree // 2
        if coefficients[middle] != sign * coefficients[middle]:
            return None
    return coefficients


def duality_branches(traces: Sequence[int], known: CharPoly, b2: int) -> list[DualityBranch]:
    """Every completion of ``known`` to degree ``b2`` compatible with ``traces``.

    ``traces`` are the traces of Frobenius powers on the whole of ``H^2``.
    """

    q = known.q
    degree = b2 - known.degree
    if degree < 0:
        raise SpectraError(f"known factor of degree {known.degree} exceeds b2 = {b2}")
    needed = degree // 2
    if len(traces) < needed:
        raise SpectraError(
            f"duality needs {needed} traces for an unknown factor of degree {degree}, "
            f"got {len(traces)}"
        )
    unknown_traces = quotient_traces(traces, known)
    head = newton_coefficients(unknown_traces, needed)
    branches = []
    for sign in (1, -1):
        coefficients = _complete(head, degree, q, sign)
        if coefficients is None:
            continue
        unknown = CharPoly(tuple(coefficients), q)
        if unknown.power_sums(len(unknown_traces)) != unknown_traces:
            logger.debug("sign %+d contradicts the supplied traces", sign)
            continue
        if not unknown.satisfies_weil():
            logger.debug("sign %+d violates the Weil bound", sign)
            continue
        branches.append(DualityBranch(sign, unknown, known * unknown))
    return branches


def duality_complete(traces: Sequence[int], known: CharPoly, b2: int) -> CharPoly:
    """The characteristic polynomial on ``H^2``; ambiguity is reported, never resolved."""

    branches = duality_branches(traces, known, b2)
    if not branches:
        raise DualityError("no consistent completion")
    if len(branches) > 1:
        raise AmbiguousCompletion(branches)
    branch = branches[0]
    logger.info("completed %s with sign %+d", branch.unknown, branch.sign)
    return branch.full


__all__ = [
    "AmbiguousCompletion",
    "DualityBranch",
    "DualityError",
    "duality_branches",
    "duality_complete",
    "quotient_traces",
]
