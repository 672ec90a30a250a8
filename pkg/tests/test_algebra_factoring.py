from pathlib import Path
import sys

import pytest

ROOT = Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from sympy.polys.domains import FF, QQ

from ellsurf.algebra import NumberField, UniPoly, product
from ellsurf.algebra.factoring import (
    FactorizationError,
    certify_irreducible,
    factor,
    rational_roots,
)

GF17 = FF(17)


def test_rational_quadratic_place_is_irreducible() -> None:
    place = UniPoly.from_list([1, -6, 1], QQ)
    assert factor(place) == [(place, 1)]
    assert certify_irreducible(place)


def test_finite_field_factorizations() -> None:
    assert factor(UniPoly.from_list([1, 0, 5], GF17)) == [(UniPoly.from_list([1, 0, 5], GF17), 1)]
    split = factor(UniPoly.from_list([1, 0, -2], GF17))
    assert {f for f, _ in split} == {
        UniPoly.from_list([1, -6], GF17),
        UniPoly.from_list([1, 6], GF17),
    }


def test_factor_reproduces_input() -> None:
    t = UniPoly.gen(QQ)
    value = ((t - 1) ** 4 * t**2 * (t**2 - 6 * t + 1) ** 2).scale(256)
    factors = factor(value)
    assert product((f**k for f, k in factors), QQ).scale(value.lc) == value
    assert dict(factors)[t - 1] == 4


def test_large_rational_places_must_be_supplied() -> None:
    quintic = UniPoly.from_list([1, 0, 0, 0, -1, -1], QQ)
    with pytest.raises(FactorizationError, match="supply places"):
        factor(quintic * quintic)
    assert factor(quintic * quintic, candidates=[quintic]) == [(quintic, 2)]


def test_factor_over_number_field_refines_rational_factors() -> None:
    field = NumberField.from_modulus([1, 0, -5])
    t = UniPoly.gen(field.domain)
    factors = factor(t**2 * 5 - 1)
    assert len(factors) == 2
    assert all(f.degree == 1 for f, _ in factors)


def test_rational_roots() -> None:
    value = UniPoly.from_list([5, -1], QQ) * UniPoly.from_list([1, 0, 5], QQ)
    assert [str(r) for r in rational_roots(value)] == ["1/5"]
