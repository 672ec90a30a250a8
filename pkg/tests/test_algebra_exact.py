from fractions import Fraction
from pathlib import Path
import sys

import numpy as np
import pytest

ROOT = Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from sympy.polys.domains import QQ

from ellsurf.algebra import (
    GaloisError,
    GaloisMap,
    NumberField,
    RationalFunction,
    UniPoly,
    galois_conjugate,
    parse_function,
    parse_polynomial,
    parse_scalar,
)
from ellsurf.algebra.functions import PoleError
from ellsurf.algebra.numbers import NumberFieldError
from ellsurf.algebra.squares import (
    SquareClassError,
    SquareMode,
    coprime_base,
    is_square,
    parity_vector,
    sqrt_function,
    squarefree_part,
)

T = UniPoly.gen(QQ)
RATIONALS = NumberField.rationals()


def poly(*coeffs: int) -> UniPoly:
    return UniPoly.from_list(list(coeffs), QQ)


@pytest.fixture(scope="module")
def cyclotomic8() -> NumberField:
    return NumberField.from_modulus([1, 0, 0, 0, 1])


def test_squarefree_part_of_integers() -> None:
    assert squarefree_part(12) == 3
    assert squarefree_part(-8) == -2
    assert squarefree_part(Fraction(-8, 3)) == -6
    with pytest.raises(SquareClassError, match="square class of zero undefined"):
        squarefree_part(0)


def test_squarefree_part_of_polynomials() -> None:
    value = (T**2 - 1) ** 2 * (T - 2)
    cls = squarefree_part(value)
    assert cls.kernel == T - 2

    quartic = poly(1, -4, 6, -20, 25)
    assert squarefree_part(quartic).kernel == quartic
    assert quartic.gcd(quartic.derivative()).is_one

    with pytest.raises(SquareClassError, match="square class of zero undefined"):
        squarefree_part(UniPoly.zero(QQ))


def test_rational_constants_multiply_in_the_coefficient_field(cyclotomic8: NumberField) -> None:
    K = cyclotomic8.domain
    one = UniPoly.one(K)
    three = squarefree_part(one.scale(3), SquareMode.RATIONAL)
    six = squarefree_part(one.scale(6), SquareMode.RATIONAL)
    assert (three.content, six.content) == (3, 6)
    # 18 = (3 sqrt2)^2 in Q(zeta_8)
    assert (three * six).is_trivial
    over_q = squarefree_part(UniPoly.one(QQ).scale(3), SquareMode.RATIONAL)
    assert (over_q * squarefree_part(UniPoly.one(QQ).scale(6), SquareMode.RATIONAL)).content == 2


def test_is_square_modes() -> None:
    four = RationalFunction.from_polys((T - 1) ** 2 * 4)
    assert is_square(four, SquareMode.GEOMETRIC)
    assert is_square(four, SquareMode.RATIONAL)

    two = RationalFunction.from_polys((T - 1) ** 2 * 2)
    assert is_square(two, SquareMode.GEOMETRIC)
    assert not is_square(two, SquareMode.RATIONAL)

    octic = poly(1, 0, -4, 0, -74, 0, -100, 0, 625)
    witness = (T**2 * (T**2 + 5) ** 6 * octic).scale(-64)
    assert not is_square(witness, SquareMode.GEOMETRIC)

    assert is_square(RationalFunction.zero(QQ), SquareMode.RATIONAL)


def test_is_square_ignores_square_factors() -> None:
    rng = np.random.default_rng(7)
    base = RationalFunction.from_polys(T * (T - 3))
    for _ in range(5):
        g = poly(*(int(c) for c in rng.integers(-5, 6, size=3)))
        if g.is_zero:
            continue
        scaled = base * RationalFunction.from_polys(g) ** 2
        for mode in SquareMode:
            assert is_square(scaled, mode) == is_square(base, mode)


def test_sqrt_function_roundtrip() -> None:
    value = RationalFunction.from_polys((T**2 + 5) ** 2 * 9, (T - 1) ** 4)
    root = sqrt_function(value)
    assert root is not None
    assert root * root == value
    assert sqrt_function(RationalFunction.from_polys(T)) is None


def test_coprime_base_and_parity() -> None:
    base = coprime_base([T * (T - 1), (T - 1) * (T + 1)])
    assert set(base) == {T, T - 1, T + 1}
    assert parity_vector(T**2 * (T - 1) * (T + 1) ** 3, base) == tuple(
        {T - 1: 1, T: 0, T + 1: 1}[b] for b in base
    )


def test_number_field_certificates(cyclotomic8: NumberField) -> None:
    assert cyclotomic8.degree == 4
    assert cyclotomic8.certificate
    sqrt5 = NumberField.from_modulus([1, 0, -5])
    assert sqrt5.certificate == "irreducible mod 3"
    with pytest.raises(NumberFieldError):
        NumberField.from_modulus([1, 0, -4])
    with pytest.raises(NumberFieldError):
        NumberField.from_modulus([2, 0, -5])


def test_number_field_square_roots(cyclotomic8: NumberField) -> None:
    root2 = cyclotomic8.sqrt(2)
    assert root2 is not None
    assert root2 * root2 == cyclotomic8.element([2])
    minus_one = cyclotomic8.sqrt(-1)
    assert minus_one is not None
    assert minus_one**2 == cyclotomic8.element([-1])
    assert cyclotomic8.sqrt(3) is None
    assert RATIONALS.sqrt(Fraction(9, 4)) == RATIONALS.element([Fraction(3, 2)])


def test_galois_conjugation_on_surds(cyclotomic8: NumberField) -> None:
    z = cyclotomic8.generator()
    sqrt2 = z - z**3
    i = z**2

    sigma7 = GaloisMap.power(cyclotomic8, 7)
    assert sigma7.apply(i) == -i
    assert sigma7.apply(sqrt2) == sqrt2

    sigma5 = GaloisMap.power(cyclotomic8, 5)
    value = 3 + 2 * sqrt2
    assert galois_conjugate(value, sigma5) == 3 - 2 * sqrt2

    identity = GaloisMap.identity(cyclotomic8)
    assert identity.is_identity
    assert identity.apply(value) == value

    with pytest.raises(GaloisError):
        GaloisMap(cyclotomic8, i)


def test_galois_map_is_field_automorphism(cyclotomic8: NumberField) -> None:
    rng = np.random.default_rng(2024)
    for sigma in cyclotomic8.automorphisms():
        for _ in range(10):
            a = cyclotomic8.element([int(c) for c in rng.integers(-9, 10, size=4)])
            b = cyclotomic8.element([int(c) for c in rng.integers(-9, 10, size=4)])
            assert sigma.apply(a + b) == sigma.apply(a) + sigma.apply(b)
            assert sigma.apply(a * b) == sigma.apply(a) * sigma.apply(b)
        assert sigma.apply(cyclotomic8.element([Fraction(5, 7)])) == cyclotomic8.element(
            [Fraction(5, 7)]
        )
    assert len(cyclotomic8.automorphisms()) == 4


def test_galois_map_from_images(cyclotomic8: NumberField) -> None:
    z = cyclotomic8.generator()
    sqrt2 = z - z**3
    i = z**2
    sigma = GaloisMap.from_images(cyclotomic8, [(i, -i), (sqrt2, sqrt2)])
    assert sigma == GaloisMap.power(cyclotomic8, 7)


def test_rational_function_composition_and_valuation() -> None:
    u = parse_function("2*t/(5+t^2)", RATIONALS)
    assert u.num == 2 * T
    assert u.den == T**2 + 5
    assert u.valuation(None) == 1
    assert u.valuation(T) == 1

    square = RationalFunction.from_polys(T**2)
    composed = square.compose(u)
    assert composed == RationalFunction.from_polys(4 * T**2, (T**2 + 5) ** 2)

    with pytest.raises(PoleError):
        RationalFunction.from_polys(T, T - 1)(1)


def test_parsing_with_aliases(cyclotomic8: NumberField) -> None:
    assert parse_polynomial("t^2 - 6*t + 1", RATIONALS) == poly(1, -6, 1)
    aliases = {"sqrt2": "z - z^3", "i": "z^2"}
    assert parse_scalar("sqrt2^2", cyclotomic8, aliases) == cyclotomic8.element([2])
    assert parse_scalar("i^2", cyclotomic8, aliases) == cyclotomic8.element([-1])
    section = parse_function("2*(1+sqrt2)*(t-1)^2*t", cyclotomic8, aliases)
    assert section.is_polynomial
    assert section.num.degree == 3
