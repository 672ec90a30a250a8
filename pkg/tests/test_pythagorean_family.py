from fractions import Fraction
from pathlib import Path
import sys

import numpy as np
import polars as pl
import pytest

ROOT = Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from sympy.polys.domains import QQ

from ellsurf.algebra import RationalFunction
from ellsurf.curves import WeierstrassModel
from ellsurf.curves.specialize import triple_model
from ellsurf.pythagorean import (
    PythagoreanError,
    Triple,
    canonicalize,
    equivalent,
    explicit_points,
    legendre_lambda,
    param_roundtrip,
    parameter_orbit,
    s_membership,
    search_report,
    torsion_test,
    triple_from_parameter,
)
from ellsurf.pythagorean.family import doubled_point, lifted_points, reduction_order
from ellsurf.pythagorean.search import SEARCH_SCHEMA
from ellsurf.pythagorean.triples import parameter_of, side_ratios

T = RationalFunction.gen(QQ)
PHI = 2 * T / (5 + T**2)
E_T = WeierstrassModel.factored((T**2 - 1) ** 2, 4 * T**2, name="E_t")
E3 = WeierstrassModel.factored((PHI**2 - 1) ** 2, 4 * PHI**2, name="E3")
P2 = E_T.point(2 * (T - 1) ** 2, 2 * (T - 1) ** 2 * (T**2 + 2 * T - 1))
P3 = E3.point(1 - PHI**2, (T**2 - 5) * PHI * (PHI**2 - 1) / (5 + T**2))


# ---------------------------------------------------------------------------
# Triples and classes
# ---------------------------------------------------------------------------


def test_triples_must_be_pythagorean() -> None:
    with pytest.raises(PythagoreanError, match="not Pythagorean"):
        Triple(1, 2, 3)
    assert not Triple(5, 0, 5).in_family
    with pytest.raises(PythagoreanError, match="outside the family"):
        canonicalize(Triple(0, 5, -5))


def test_equivalence_under_scaling_signs_and_swap() -> None:
    assert equivalent(Triple(3, 4, 5), Triple(-6, 8, -10))
    assert equivalent(Triple(3, 4, 5), Triple(4, 3, 5))
    assert not equivalent(Triple(3, 4, 5), Triple(5, 12, 13))
    canonical = canonicalize(Triple(-8, 6, 10))
    assert canonical.representative == Triple(3, 4, 5)
    assert canonical.parameter == 2


def test_canonical_form_is_idempotent_on_random_actions() -> None:
    rng = np.random.default_rng(7)
    for base in (Triple(3, 4, 5), Triple(5, 12, 13), Triple(-425, 168, 457)):
        canonical = canonicalize(base)
        assert canonicalize(canonical.representative) == canonical
        for _ in range(20):
            scale = int(rng.integers(1, 9))
            sa, sb, sc = (int(s) for s in rng.choice([-1, 1], size=3))
            a, b, c = sa * scale * base.a, sb * scale * base.b, sc * scale * base.c
            moved = Triple(b, a, c) if rng.integers(0, 2) else Triple(a, b, c)
            assert canonicalize(moved) == canonical


def test_parameter_orbit() -> None:
    expected = {2, -2, Fraction(1, 2), Fraction(-1, 2), -3, 3, Fraction(-1, 3), Fraction(1, 3)}
    assert parameter_orbit(2) == expected
    assert canonicalize(Triple(3, 4, 5)).orbit == expected


def test_orbit_curves_share_the_class_and_j_invariant() -> None:
    base = triple_from_parameter(Fraction(2, 5))
    j = triple_model(base.a, base.b).j_invariant
    for t in parameter_orbit(Fraction(2, 5)):
        triple = triple_from_parameter(t)
        assert equivalent(triple, base)
        assert triple_model(triple.a, triple.b).j_invariant == j


# ---------------------------------------------------------------------------
# Parameters
# ---------------------------------------------------------------------------


def test_param_roundtrip_examples() -> None:
    assert param_roundtrip(Triple(3, 4, 5)) == 2
    assert param_roundtrip(2) == Triple(3, 4, 5)
    assert param_roundtrip(Triple(-8, 6, 10)) == Fraction(1, 3)
    assert legendre_lambda(2) == Fraction(16, 9)
    assert side_ratios(2) == (Fraction(3, 5), Fraction(4, 5))


def test_param_roundtrip_on_random_parameters() -> None:
    rng = np.random.default_rng(11)
    for _ in range(50):
        p, q = int(rng.integers(-40, 41)), int(rng.integers(1, 41))
        t = Fraction(p, q)
        if t in (0, 1, -1):
            continue
        triple = param_roundtrip(t)
        assert isinstance(triple, Triple)
        assert param_roundtrip(triple) == t


def test_excluded_parameters_and_triples() -> None:
    with pytest.raises(PythagoreanError, match="excluded"):
        triple_from_parameter(1)
    with pytest.raises(PythagoreanError, match="a = c"):
        parameter_of(Triple(5, 0, 5))


# ---------------------------------------------------------------------------
# The subfamily S
# ---------------------------------------------------------------------------


def test_s_membership_examples() -> None:
    first = s_membership(1, 1)
    assert first.u == Fraction(1, 3)
    assert first.k == 2
    assert first.triple == Triple(-8, 6, 10)

    second = s_membership(1, 2)
    assert second.u == Fraction(4, 21)
    assert second.k == 1
    assert second.triple == Triple(-425, 168, 457)

    with pytest.raises(PythagoreanError, match="degenerate"):
        s_membership(0, 1)


def test_explicit_points_at_the_degenerate_witness() -> None:
    points = explicit_points(s_membership(1, 1))
    assert points.model == triple_model(-8, 6)
    assert points.q1 == points.model.point(72, -144)
    assert points.q2 == points.model.point(72, 144)
    assert points.q2 == -points.q1
    assert points.degenerate
    assert not points.q1_test.torsion
    assert points.rank_lower_bound == 1
    assert doubled_point(points) == points.model.point(100, -480)


def test_explicit_points_in_general_position() -> None:
    points = explicit_points(s_membership(1, 2))
    assert points.q2 != points.q1 and points.q2 != -points.q1
    assert not points.degenerate
    assert points.rank_lower_bound == 2
    a, b, c = points.member.triple.as_tuple()
    assert doubled_point(points) == points.model.point(c * c, a * b * c)


def test_points_are_the_specialized_sections() -> None:
    for p, q in ((1, 1), (1, 2), (3, 2)):
        member = s_membership(p, q)
        points = explicit_points(member)
        assert lifted_points(member, E_T, E3, P2, P3) == (points.q1, points.q2)


def test_torsion_test() -> None:
    model = triple_model(3, 4)
    assert torsion_test(model.point(0, 0)).torsion
    assert torsion_test(model.infinity).method == "zero"
    assert reduction_order(model, 11) % 4 == 0
    doubled = torsion_test(model.point(25, 60))
    assert not doubled.torsion


def test_every_pair_of_the_box_satisfies_the_identities() -> None:
    for p in range(1, 7):
        for q in range(1, 7):
            points = explicit_points(s_membership(p, q))
            a, b, c = points.member.triple.as_tuple()
            assert a * a + b * b == c * c and a * b != 0
            assert doubled_point(points) == points.model.point(c * c, a * b * c)


# ---------------------------------------------------------------------------
# Search reports
# ---------------------------------------------------------------------------


def test_search_report_groups_by_class() -> None:
    report = search_report(range(1, 6))
    assert len(report) >= 10
    row = report.row_for(1, 1)
    assert row is not None
    assert (5, 1) in row.witnesses
    assert row.points.degenerate
    assert row in report.degenerate()
    frame = report.frame()
    assert frame.height == len(report)
    assert dict(frame.schema) == SEARCH_SCHEMA
    assert frame.filter(pl.col("degenerate")).height >= 1


def test_empty_box_gives_an_empty_report() -> None:
    report = search_report([])
    assert len(report) == 0
    assert report.frame().height == 0
