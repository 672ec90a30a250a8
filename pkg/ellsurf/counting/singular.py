"""Points on the special fibers of the smooth model over bad places."""

from __future__ import annotations

from ..fibers.graphs import count_points
from ..fibers.tate import KodairaFiber


class SingularCountError(ValueError):
    """Raised when a bad fiber carries no Frobenius action or the field does not contain it."""


def _extension_degree(residue_size: int, field_size: int) -> int:
    k, size = 1, residue_size
    while size < field_size:
        size *= residue_size
        k += 1
    if size != field_size:
        raise SingularCountError(
            f"F_{field_size} does not contain the residue field F_{residue_size}"
        )
    return k


def singular_fiber_count(fiber: KodairaFiber, field_size: int) -> int:
    """``F_Q``-points of the special fiber at a bad place, ``Q = field_size``.

    The stored action is the Frobenius of the residue field of the place;
    over ``F_Q = F_{q_v^k}`` its ``k``-th power acts.  Split ``I1`` gives
    ``Q``, non-split ``I1`` gives ``Q + 2``, split ``I4`` gives ``4Q`` and
    split ``I0*`` gives ``5Q + 1``.
    """

    if fiber.is_good:
        raise SingularCountError(f"{fiber.place} is a place of good reduction")
    if fiber.frobenius_action is None or fiber.residue_size is None:
        raise SingularCountError(f"unsupported fiber at {fiber.place}: {fiber.symbol}")
    k = _extension_degree(fiber.residue_size, field_size)
    action = fiber.frobenius_action.power(k)
    return count_points(fiber.graph, action, field_size)


__all__ = ["SingularCountError", "singular_fiber_count"]
