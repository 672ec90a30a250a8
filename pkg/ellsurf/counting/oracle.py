"""Brute-force point counts used to cross-check the engine on small fields.

Every ``t`` of ``P^1(F_Q)`` is visited.  Smooth fibers are counted by
evaluating the character on every ``x``.  Bad fibers of type ``I_n``
(``n <= 4``) and ``I0*`` are resolved by hand: the Weierstrass cubic is
counted directly, then the exceptional curves over the singular point are
added according to the tangent slopes at the node or the roots of the
residual cubic.
"""

from __future__ import annotations

import logging

import numpy as np

from ..algebra import UniPoly
from ..algebra.domains import characteristic, is_finite_domain, to_int_mod
from ..curves import WeierstrassModel
from ..fibers.minimal import MinimalModel, minimal_model
from ..fields import ExtField, FieldTables, build_tables

logger = logging.getLogger(__name__)

ORACLE_LIMIT = 10_000
"""Largest field size the oracle accepts."""


class OracleError(ValueError):
    """Raised for fields above the size limit and fibers the oracle cannot resolve."""


def _shift(field: ExtField, coeffs: list[int], t: int) -> list[int]:
    """Coefficients of ``f(t + u)`` in ``u``, constant term first."""

    result: list[int] = []
    for c in coeffs:
        shifted = [0] * (len(result) + 1)
        for i, value in enumerate(result):
            shifted[i] = field.add(shifted[i], field.mul(t, value))
            shifted[i + 1] = field.add(shifted[i + 1], value)
        shifted[0] = field.add(shifted[0], field.embed(c))
        result = shifted
    return result or [0]


def _valuation(coeffs: list[int]) -> int:
    for index, value in enumerate(coeffs):
        if value:
            return index
    return 10**9


def _coefficient(coeffs: list[int], index: int) -> int:
    return coeffs[index] if index < len(coeffs) else 0


def _cubic_values(tables: FieldTables, a: int, b: int) -> np.ndarray:
    x = tables.elements()
    cubes = tables.power(x, 3)
    return tables.add(tables.add(cubes, tables.mul(a, x)), b)


def _weierstrass_points(tables: FieldTables, a: int, b: int) -> int:
    """Projective points of ``y^2 = x^3 + a x + b``, singular or not."""

    chi = tables.character(_cubic_values(tables, a, b)).astype(np.int64)
    return tables.q + 1 + int(chi.sum())


def _nodal_count(tables: FieldTables, a: int, b: int, n: int) -> int:
    if n > 4:
        raise OracleError(f"unsupported fiber I{n}")
    q = tables.q
    base = _weierstrass_points(tables, a, b)
    if n == 1:
        return base
    x = tables.elements()
    values = _cubic_values(tables, a, b)
    slopes = tables.add(tables.mul(3, tables.power(x, 2)), a)
    nodes = x[(values == 0) & (slopes == 0)]
    if len(nodes) != 1:
        raise OracleError("no rational node on a multiplicative fiber")
    split = int(tables.character(tables.mul(3, int(nodes[0])))) == 1
    if split:
        return base + (n - 1) * q
    return base - 1 + (q + 1 if n % 2 == 0 else 1)


def _star_count(tables: FieldTables, a: int, b: int) -> int:
    roots = int((_cubic_values(tables, a, b) == 0).sum())
    return (2 + roots) * (tables.q + 1) - (1 + roots)


def _fiber_count(
    field: ExtField, tables: FieldTables, a_shift: list[int], b_shift: list[int]
) -> int:
    delta = _delta(field, a_shift, b_shift)
    va, vb, vdelta = _valuation(a_shift), _valuation(b_shift), _valuation(delta)
    a0, b0 = _coefficient(a_shift, 0), _coefficient(b_shift, 0)
    if vdelta == 0:
        return _weierstrass_points(tables, a0, b0)
    if va == 0:
        return _nodal_count(tables, a0, b0, vdelta)
    if va >= 2 and vb >= 3 and vdelta == 6:
        return _star_count(tables, _coefficient(a_shift, 2), _coefficient(b_shift, 3))
    raise OracleError(f"unsupported fiber with valuations ({va}, {vb}, {vdelta})")


def _delta(field: ExtField, a: list[int], b: list[int]) -> list[int]:
    def multiply(first: list[int], second: list[int]) -> list[int]:
        product = [0] * (len(first) + len(second) - 1)
        for i, x in enumerate(first):
            if not x:
                continue
            for j, y in enumerate(second):
                product[i + j] = field.add(product[i + j], field.mul(x, y))
        return product

    cube = multiply(multiply(a, a), a)
    square = multiply(b, b)
    size = max(len(cube), len(square))
    return [
        field.add(
            field.mul(field.embed(4), _coefficient(cube, i)),
            field.mul(field.embed(27), _coefficient(square, i)),
        )
        for i in range(size)
    ]


def _ints(poly: UniPoly) -> list[int]:
    return [to_int_mod(poly.domain, c) for c in poly.coeffs]


def naive_oracle_count(
    model: WeierstrassModel | MinimalModel, m: int, *, limit: int = ORACLE_LIMIT
) -> int:
    """``#S(F_{p^m})`` by visiting every fiber; for tests on small fields."""

    minimal = model if isinstance(model, MinimalModel) else minimal_model(model)
    if not is_finite_domain(minimal.domain):
        raise OracleError("the oracle counts surfaces over finite fields")
    p = characteristic(minimal.domain)
    field = ExtField.build(p, m)
    if field.q > limit:
        raise OracleError(f"size limit exceeded ({field.q} > {limit})")
    tables = build_tables(field)
    a_coeffs, b_coeffs = _ints(minimal.a), _ints(minimal.b)
    total = 0
    for t in range(field.q):
        total += _fiber_count(
            field, tables, _shift(field, a_coeffs, t), _shift(field, b_coeffs, t)
        )
    a_inf, b_inf = minimal.at_infinity()
    total += _fiber_count(
        field, tables, _shift(field, _ints(a_inf), 0), _shift(field, _ints(b_inf), 0)
    )
    logger.debug("oracle count over %s: %s", field, total)
    return total


__all__ = ["ORACLE_LIMIT", "OracleError", "naive_oracle_count"]
