from fractions import Fraction
from pathlib import Path
import sys

import pytest

ROOT = Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from sympy.polys.domains import QQ

from ellsurf.algebra import NumberField, RationalFunction, UniPoly
from ellsurf.algebra.places import Place
from ellsurf.curves import WeierstrassModel
from ellsurf.curves.reduction import (
    ReductionError,
    ResidueMap,
    base_change,
    descend,
    reduce_mod_p,
)
from ellsurf.curves.specialize import (
    SpecializationError,
    scale_to_triple,
    section_on_triple,
    specialize,
    triple_model,
    unscale_from_triple,
)
from ellsurf.curves.twists import (
    TwistError,
    certify_double_cover,
    certify_twist,
    cover_class,
    is_isomorphic,
    odd_places,
    quadratic_twist,
    twist_by_points,
)

T = RationalFunction.gen(QQ)
E_T = WeierstrassModel.factored((T**2 - 1) ** 2, 4 * T**2, name="E_t")
E1 = WeierstrassModel.factored((T - 1) ** 2, 4 * T, name="E1")
E1P = quadratic_twist(E1, 1 - 5 * T, name="E1'")
E1PP = quadratic_twist(E1P, T, name="E1''")
E2 = WeierstrassModel.factored((T**2 - 1) ** 2, 4 * T**2, name="E2")
E2P = quadratic_twist(E2, 1 - 5 * T**2, name="E2'")
P2 = E_T.point(2 * (T - 1) ** 2, 2 * (T - 1) ** 2 * (T**2 + 2 * T - 1))
T1 = E_T.point(4 * T**2, 0)


def test_trivial_and_repeated_twists() -> None:
    assert quadratic_twist(E1, 1) == E1
    twice = quadratic_twist(E1P, 1 - 5 * T)
    assert is_isomorphic(twice, E1)
    assert E1P.j_invariant == E1.j_invariant
    assert E1P.roots == (0, (1 - 5 * T) * (T - 1) ** 2, 4 * T * (1 - 5 * T))
    with pytest.raises(TwistError, match="nonzero"):
        quadratic_twist(E1, 0)


def test_twist_certification() -> None:
    assert certify_twist(E1, E1P, 1 - 5 * T)
    assert not is_isomorphic(E1, E1P)
    with pytest.raises(TwistError, match="square"):
        certify_twist(E1, E1P, 4)


def test_twist_of_the_first_surface_at_one_fifth_and_infinity() -> None:
    u, model = twist_by_points(E1, Place.at(Fraction(1, 5), QQ), Place.infinity(), scale=-5)
    assert u == 1 - 5 * T
    assert model == E1P
    assert odd_places(u) == [Place.at(Fraction(1, 5), QQ), Place.infinity()]


def test_twist_at_zero_and_infinity() -> None:
    u, model = twist_by_points(E1P, Place.at(0, QQ), Place.infinity())
    assert u == T
    assert model == E1PP
    assert [str(p) for p in odd_places(u)] == ["t=0", "oo"]


def test_twist_at_conjugate_places_descends() -> None:
    field = NumberField.from_modulus([1, 0, -5])
    root = field.element([0, Fraction(1, 5)])
    first = Place.at(root.value, field.domain)
    second = Place.at((-root).value, field.domain)
    u, model = twist_by_points(E2, first, second, scale=-5)
    assert u == 1 - 5 * T**2
    assert model == E2P
    (place,) = odd_places(u)
    assert place.degree == 2


def test_twist_places_must_differ() -> None:
    with pytest.raises(TwistError, match="distinct"):
        twist_by_points(E1, Place.infinity(), Place.infinity())


def test_double_covers() -> None:
    assert cover_class(T**2) == 4 * T
    phi = 2 * T / (5 + T**2)
    assert cover_class(phi) == 4 - 20 * T**2

    e3 = WeierstrassModel.factored((phi**2 - 1) ** 2, 4 * phi**2, name="E3")
    certificate = certify_double_cover(E2, e3, E2P, phi)
    assert certificate.holds
    assert certify_double_cover(E1P, E2P, E1PP, T**2).holds
    assert not certify_double_cover(E1P, E2P, E1P, T**2).twist_matches


def test_specialization_of_the_family() -> None:
    special, (point,) = specialize(E_T, 2, [P2])
    assert special == triple_model(3, 4)
    assert point == special.point(2, 14)


def test_singular_specialization_names_the_factor() -> None:
    with pytest.raises(SpecializationError) as caught:
        specialize(E_T, 1)
    assert caught.value.factor == UniPoly.from_list([1, -1], QQ)


def test_specialization_commutes_with_addition() -> None:
    _, (p, q, total) = specialize(E_T, 3, [P2, T1, P2 + T1])
    assert p + q == total
    _, (p, q, total) = specialize(E_T, Fraction(2, 7), [P2, P2, 2 * P2])
    assert p + q == total


def test_scaling_onto_pythagorean_curves() -> None:
    q1 = section_on_triple(E_T, P2, (-8, 6, 10))
    assert q1 == triple_model(-8, 6).point(72, -144)
    source, (image,) = specialize(E_T, Fraction(1, 3), [P2])
    assert unscale_from_triple(q1, (-8, 6, 10), source) == image
    assert scale_to_triple(image, (-8, 6, 10)) == q1
    assert triple_model(3, 4).contains(Fraction(25), Fraction(60))
    with pytest.raises(SpecializationError, match="a = c"):
        scale_to_triple(image, (5, 0, 5))


@pytest.mark.parametrize(("model", "prime"), [(E1P, 17), (E1PP, 11), (E1PP, 17)])
def test_reduction_modulo_good_primes(model: WeierstrassModel, prime: int) -> None:
    reduced = reduce_mod_p(model, ResidueMap(prime))
    assert reduced.discriminant
    assert int(reduced.a4.domain.mod) == prime


def test_reduction_rejects_small_characteristic_and_bad_denominators() -> None:
    with pytest.raises(ReductionError, match="characteristic 2"):
        reduce_mod_p(E1P, ResidueMap(2))
    with pytest.raises(ReductionError, match="denominator"):
        ResidueMap(5).residue(QQ, QQ(1, 5))


def test_residue_embeddings_of_number_fields() -> None:
    gaussian = NumberField.from_modulus([1, 0, 1])
    residue = ResidueMap(17, root=4, field=gaussian)
    assert residue.residue(gaussian.domain, gaussian.generator().value) == 4
    with pytest.raises(ReductionError, match="not a root"):
        ResidueMap(17, root=3, field=gaussian)


def test_base_change_and_descent() -> None:
    field = NumberField.from_modulus([1, 0, 0, 0, 1])
    lifted = base_change(E1, field)
    assert lifted.number_field == field
    assert descend(lifted) == E1
