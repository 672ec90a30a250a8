from fractions import Fraction
from pathlib import Path
import sys

import numpy as np
import pytest

ROOT = Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from sympy.polys.domains import QQ

from ellsurf.algebra import NumberField, RationalFunction
from ellsurf.curves import (
    PointError,
    SingularModelError,
    WeierstrassModel,
)
from ellsurf.fields import ExtField, FFElement, sqrt

T = RationalFunction.gen(QQ)


def family() -> WeierstrassModel:
    return WeierstrassModel.factored((T**2 - 1) ** 2, 4 * T**2, name="E_t")


def pythagorean(a: int, b: int) -> WeierstrassModel:
    return WeierstrassModel.factored(a * a, b * b)


def test_invariants_of_the_three_four_five_curve() -> None:
    a, b = 3, 4
    invariants = pythagorean(a, b).invariants()
    expected = 16 * (a - b) ** 2 * (a + b) ** 2 * a**4 * b**4
    assert invariants.discriminant == expected == 16_257_024
    numerator = 256 * (a**4 - a**2 * b**2 + b**4) ** 3
    denominator = a**4 * b**4 * (a - b) ** 2 * (a + b) ** 2
    assert invariants.j == Fraction(numerator, denominator) == Fraction(7_189_057, 3_969)


def test_discriminant_of_the_parametric_family() -> None:
    delta = family().discriminant
    expected = 256 * T**4 * (T**2 - 1) ** 4 * (1 - 6 * T**2 + T**4) ** 2
    assert delta == expected


def test_repeated_roots_give_a_singular_model() -> None:
    with pytest.raises(SingularModelError):
        pythagorean(5, 5)
    tagged = WeierstrassModel.factored(25, 25, singular=True)
    assert tagged.discriminant == 0
    assert tagged.j_invariant is None


def test_two_torsion_points_add_up() -> None:
    curve = pythagorean(3, 4)
    origin, first, second = curve.two_torsion()
    assert origin + first == second
    assert 2 * first == curve.infinity
    assert curve.order(first) == 2


def test_doubling_recovers_the_hypotenuse_point() -> None:
    curve = pythagorean(3, 4)
    q1 = curve.point(2, 14)
    assert -2 * q1 == curve.point(25, 60)
    assert curve.contains(Fraction(25), Fraction(60))


def test_torsion_section_doubles_to_the_origin() -> None:
    field = NumberField.from_modulus([1, 0, 0, 0, 1])
    t = RationalFunction.gen(field.domain)
    two_i = field.element([0, 0, 2]).value
    curve = WeierstrassModel.factored((t**2 - 1) ** 2, 4 * t**2, name="E2", number_field=field)
    t2 = curve.point(2 * (t**3 - t), (t**2 - 1) * t * (t**2 - 2 * t - 1) * two_i)
    assert 2 * t2 == curve.point(0, 0)
    assert curve.order(t2) == 4


def test_identity_inverse_and_curve_mismatch() -> None:
    curve = family()
    section = curve.point(2 * (T - 1) ** 2, 2 * (T - 1) ** 2 * (T**2 + 2 * T - 1))
    assert section + curve.infinity == section
    assert section - section == curve.infinity
    assert (-section).y == -section.y
    with pytest.raises(PointError, match="different curves"):
        pythagorean(3, 4).point(0, 0) + pythagorean(5, 12).point(0, 0)
    with pytest.raises(PointError):
        curve.point(1, 1)


def _random_points(
    curve: WeierstrassModel, field: ExtField, rng: np.random.Generator, count: int
) -> list:
    points = []
    while len(points) < count:
        x = FFElement(field, int(rng.integers(field.q)))
        root = sqrt(x**3 + curve.a2 * x**2 + curve.a4 * x + curve.a6)
        if root is not None:
            points.append(curve.point(x, root))
    return points


def _check_group_law(curve: WeierstrassModel, field: ExtField, triples: int, seed: int) -> None:
    rng = np.random.default_rng(seed)
    points = _random_points(curve, field, rng, 3 * triples)
    for index in range(triples):
        p, q, r = points[3 * index : 3 * index + 3]
        assert (p + q) + r == p + (q + r)
        assert p + q == q + p
        assert p + (-p) == curve.infinity


@pytest.mark.parametrize(("p", "m", "a", "b"), [(1009, 1, 3, 5), (5, 2, 3, 2), (7, 3, 1, 6)])
def test_group_law_over_finite_fields(p: int, m: int, a: int, b: int) -> None:
    field = ExtField.build(p, m)
    curve = WeierstrassModel.short(FFElement(field, a), FFElement(field, b))
    _check_group_law(curve, field, 300, seed=p * 10 + m)


@pytest.mark.slow
def test_group_law_on_ten_thousand_triples() -> None:
    field = ExtField.build(10007)
    curve = WeierstrassModel.short(FFElement(field, 3), FFElement(field, 5))
    _check_group_law(curve, field, 10_000, seed=2024)


def test_general_model_completion_and_short_form() -> None:
    curve = WeierstrassModel(1, -1, 1, -2, 5)
    point = curve.point(1, 1)
    assert curve.discriminant == -9828
    completed = curve.completed()
    assert completed.a1 == 0 and completed.a3 == 0
    assert completed.j_invariant == curve.j_invariant
    short = curve.short_model()
    assert short.j_invariant == curve.j_invariant
    assert curve.to_short(2 * point) == 2 * curve.to_short(point)
