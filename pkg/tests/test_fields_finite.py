from pathlib import Path
import sys

import numpy as np
import pytest

ROOT = Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from ellsurf.fields import (
    CharacteristicError,
    ExtField,
    FFElement,
    build_tables,
    frobenius_orbits_P1,
    quadratic_character,
    smallest_irreducible,
    sqrt,
)

F17 = ExtField.build(17)


def test_quadratic_character_mod_17() -> None:
    assert quadratic_character(FFElement(F17, 2)) == 1
    assert quadratic_character(FFElement(F17, 3)) == -1
    assert quadratic_character(FFElement(F17, 0)) == 0
    squares = {x * x % 17 for x in range(1, 17)}
    for a in range(1, 17):
        assert quadratic_character(FFElement(F17, a)) == (1 if a in squares else -1)


def test_characteristic_two_is_rejected() -> None:
    with pytest.raises(CharacteristicError, match="odd characteristic required"):
        quadratic_character(FFElement(ExtField.build(2), 1))


def test_square_roots_mod_17() -> None:
    root = sqrt(FFElement(F17, 2))
    assert root == FFElement(F17, 6)
    assert sqrt(FFElement(F17, 0)) == FFElement(F17, 0)
    assert sqrt(FFElement(F17, 3)) is None


@pytest.mark.parametrize(("p", "m"), [(5, 2), (3, 3), (7, 2), (13, 1)])
def test_square_roots_in_extensions(p: int, m: int) -> None:
    field = ExtField.build(p, m)
    tables = build_tables(field)
    for a in range(field.q):
        root = field.sqrt(a)
        if root is None:
            assert field.character(a) == -1
            continue
        assert field.mul(root, root) == a
        assert root <= field.neg(root)
        assert tables.sqrt(a) == root


def test_smallest_irreducible_modulus() -> None:
    assert smallest_irreducible(17, 2) == (1, 0, 3)
    assert ExtField.build(17, 2).modulus == (1, 0, 3)


@pytest.mark.parametrize(("p", "m"), [(5, 2), (7, 3), (17, 2), (3, 4)])
def test_character_is_multiplicative_and_balanced(p: int, m: int) -> None:
    field = ExtField.build(p, m)
    tables = build_tables(field)
    elements = tables.elements()
    chi = tables.character(elements).astype(np.int64)
    assert int(chi.sum()) == 0

    rng = np.random.default_rng(p * 100 + m)
    a = rng.integers(1, field.q, size=200)
    b = rng.integers(1, field.q, size=200)
    products = tables.mul(a, b)
    assert np.array_equal(tables.character(products), tables.character(a) * tables.character(b))
    for x in a[:20].tolist():
        assert int(tables.character(x)) == field.character(x)


@pytest.mark.parametrize(("p", "m"), [(5, 2), (3, 3), (7, 2)])
def test_tables_agree_with_polynomial_arithmetic(p: int, m: int) -> None:
    field = ExtField.build(p, m)
    tables = build_tables(field)
    elements = tables.elements()
    for a in range(field.q):
        added = tables.add(a, elements)
        multiplied = tables.mul(a, elements)
        assert added.tolist() == [field.add(a, b) for b in range(field.q)]
        assert multiplied.tolist() == [field.mul(a, b) for b in range(field.q)]


def test_orbit_census_over_f25_and_f5() -> None:
    f25 = frobenius_orbits_P1(ExtField.build(5, 2))
    assert f25.census() == {1: 6, 2: 10}
    assert f25.total == 26
    assert frobenius_orbits_P1(ExtField.build(5)).census() == {1: 6}


def test_orbit_census_over_f17_to_the_fourth() -> None:
    field = ExtField.build(17, 4)
    decomposition = frobenius_orbits_P1(field)
    assert decomposition.census() == {1: 18, 2: 136, 4: 20808}
    assert decomposition.total == 17**4 + 1


def test_orbit_sizes_match_minimal_fields() -> None:
    field = ExtField.build(3, 4)
    decomposition = frobenius_orbits_P1(field)
    for rep, size in list(decomposition)[1:40]:
        assert rep is not None
        assert field.in_subfield(rep, size)
        smaller = [d for d in range(1, size) if size % d == 0]
        assert not any(field.in_subfield(rep, d) for d in smaller)
