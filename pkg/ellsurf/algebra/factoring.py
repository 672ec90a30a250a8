"""Certified factorization of univariate polynomials over ``F_p``, ``Q`` and number fields."""

from __future__ import annotations

import logging
from collections.abc import Sequence
from fractions import Fraction
from math import lcm

from sympy.polys.domains import ZZ
from sympy.polys.factortools import dup_factor_list
from sympy.polys.galoistools import gf_irreducible_p

from .domains import (
    Domain,
    is_algebraic_domain,
    is_finite_domain,
    is_rational_domain,
    to_fraction,
    to_int_mod,
)
from .numbers import NumberFieldError, certify_irreducible_over_q
from .polys import UniPoly, product

logger = logging.getLogger(__name__)

RATIONAL_DEGREE_CAP = 4
"""Largest irreducible degree over ``Q`` accepted without caller-supplied places."""

Factorization = list[tuple[UniPoly, int]]


class FactorizationError(ArithmeticError):
    """Raised when a factorization cannot be produced or certified."""


def _sort(factors: Factorization) -> Factorization:
    return sorted(factors, key=lambda item: (item[0].degree, item[0].key(), item[1]))


def certify_irreducible(poly: UniPoly) -> str:
    """Certificate string for the irreducibility of ``poly``; raises if it is reducible."""

    domain = poly.domain
    if poly.degree < 1:
        raise FactorizationError("constants are not irreducible")
    if poly.degree == 1:
        return "linear"
    if is_finite_domain(domain):
        prime = int(domain.mod)
        coeffs = [to_int_mod(domain, c) for c in poly.monic().coeffs]
        if gf_irreducible_p(coeffs, prime, ZZ):
            return f"irreducible over F_{prime}"
        raise FactorizationError(f"{poly} is reducible over F_{prime}")
    if is_rational_domain(domain):
        values = [to_fraction(domain, c) for c in poly.coeffs]
        scale = lcm(*(v.denominator for v in values))
        try:
            return certify_irreducible_over_q([int(v * scale) for v in values])
        except NumberFieldError as exc:
            raise FactorizationError(str(exc)) from exc
    _, factors = dup_factor_list(poly.rep, domain)
    if len(factors) == 1 and factors[0][1] == 1:
        return f"exact factorization over {domain}"
    raise FactorizationError(f"{poly} is reducible over {domain}")


def _raw_factors(poly: UniPoly) -> Factorization:
    domain = poly.domain
    _, factors = dup_factor_list(poly.rep, domain)
    result: dict[UniPoly, int] = {}
    for factor, multiplicity in factors:
        monic = UniPoly._raw(list(factor), domain).monic()
        result[monic] = result.get(monic, 0) + multiplicity
    return list(result.items())


def _strip_candidates(
    poly: UniPoly, candidates: Sequence[UniPoly]
) -> tuple[UniPoly, Factorization]:
    found: Factorization = []
    remaining = poly
    for candidate in candidates:
        place = candidate.convert(poly.domain).monic()
        count, remaining = remaining.strip_place(place)
        if count:
            certify_irreducible(place)
            found.append((place, count))
    return remaining, found


def factor(
    poly: UniPoly,
    candidates: Sequence[UniPoly] = (),
    max_degree: int = RATIONAL_DEGREE_CAP,
) -> Factorization:
    """Monic irreducible factors with multiplicities; ``poly.lc`` times their product is ``poly``.

    Over ``Q`` every irreducible factor of degree above ``max_degree`` must be
    among ``candidates``; otherwise ``FactorizationError("supply places")`` is
    raised.  Over a number field the polynomial is first factored over ``Q``
    when its coefficients are rational.
    """

    if poly.is_zero:
        raise FactorizationError("cannot factor the zero polynomial")
    if poly.is_constant:
        return []
    domain = poly.domain
    remaining, found = _strip_candidates(poly, candidates)
    if remaining.is_constant:
        return _sort(found)
    if is_rational_domain(domain):
        factors = _raw_factors(remaining)
        too_large = [f for f, _ in factors if f.degree > max_degree]
        if too_large:
            logger.debug("refusing rational factors of degree %s", [f.degree for f in too_large])
            raise FactorizationError("supply places")
    elif is_algebraic_domain(domain) and _is_rational_poly(remaining):
        factors = []
        base = _base_field(domain)
        rational = remaining.map_coefficients(
            lambda c: c.to_list()[0] if c.to_list() else base.zero, base
        )
        for piece, multiplicity in factor(rational, max_degree=max_degree):
            for sub, sub_multiplicity in _raw_factors(piece.convert(domain)):
                factors.append((sub, multiplicity * sub_multiplicity))
    else:
        factors = _raw_factors(remaining)
    result = _sort(found + factors)
    check = product((f**k for f, k in result), domain).scale(poly.lc)
    if check != poly:
        raise FactorizationError(f"factorization of {poly} failed verification")
    return result


def _base_field(domain: Domain) -> Domain:
    return domain.dom


def _is_rational_poly(poly: UniPoly) -> bool:
    return all(len(c.to_list()) <= 1 for c in poly.coeffs)


def squarefree_factors(poly: UniPoly) -> list[UniPoly]:
    """Distinct monic irreducible factors of ``poly``."""

    return [f for f, _ in factor(poly)]


def rational_roots(poly: UniPoly) -> list[Fraction]:
    """Rational roots of a polynomial over ``Q``."""

    factors = factor(poly, max_degree=poly.degree)
    return sorted(-to_fraction(poly.domain, f.tc) for f, _ in factors if f.degree == 1)


__all__ = [
    "FactorizationError",
    "Factorization",
    "RATIONAL_DEGREE_CAP",
    "certify_irreducible",
    "factor",
    "rational_roots",
    "squarefree_factors",
]
