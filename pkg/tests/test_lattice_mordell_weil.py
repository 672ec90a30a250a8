from fractions import Fraction
from pathlib import Path
import sys

import pytest

ROOT = Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from sympy.polys.domains import QQ

from ellsurf.algebra import GaloisMap, RationalFunction
from ellsurf.algebra.parsing import parse_function
from ellsurf.algebra.squares import SquareClass, SquareMode, function_class
from ellsurf.curves import PointError, WeierstrassModel
from ellsurf.curves.reduction import base_change
from ellsurf.curves.twists import (
    TwistError,
    certify_double_cover,
    certify_twist,
    quadratic_twist,
    twist_point,
)
from ellsurf.fibers.symbols import FiniteAbelianGroup, KodairaSymbol
from ellsurf.fibers.tate import fiber_table
from ellsurf.lattice import (
    CYCLOTOMIC_ALIASES,
    HeightGram,
    HeightPairing,
    LatticeError,
    MWReport,
    RankRecord,
    Section,
    complex_conjugation,
    coset_check,
    doubling_witness,
    eighth_cyclotomic_field,
    galois_rank_over_q,
    gram_index_bound,
    halve,
    height_pairing,
    parse_section,
    saturation_check,
    shioda_tate_rank,
    torsion_subgroup,
    twist_rank_additivity,
    two_descent_image,
)
from ellsurf.lattice.heights import contribution_table
from ellsurf.lattice.ranks import trivial_rank

T = RationalFunction.gen(QQ)
PHI = 2 * T / (5 + T**2)

E1 = WeierstrassModel.factored((T - 1) ** 2, 4 * T, name="E1")
E1P = quadratic_twist(E1, 1 - 5 * T, name="E1'")
E1PP = quadratic_twist(E1P, T, name="E1''")
E2 = WeierstrassModel.factored((T**2 - 1) ** 2, 4 * T**2, name="E2")
E2P = quadratic_twist(E2, 1 - 5 * T**2, name="E2'")
E3 = WeierstrassModel.factored((PHI**2 - 1) ** 2, 4 * PHI**2, name="E3")

K = eighth_cyclotomic_field()
SIGMA = complex_conjugation(K)
E2K = base_change(E2, K)
E3K = base_change(E3, K)
U_ALIASES = {**CYCLOTOMIC_ALIASES, "u": "2*t/(5+t^2)"}

FIRST = ("2*(1+sqrt2)*(v-1)^2*v", "2*i*(1+sqrt2)*(-1+(sqrt2-v)^2)*(v-1)^2*v")
SECOND = ("2*(v-1)^2", "2*(v-1)^2*(v^2+2*v-1)")
ORDER_TWO = ("4*v^2", "0")
ORDER_FOUR = ("2*(v^3-v)", "2*i*(v^2-1)*v*(v^2-2*v-1)")
Q_PLUS = "t^4+4*t^3+6*t^2+20*t+25"
Q_MINUS = "t^4-4*t^3+6*t^2-20*t+25"


def _on(model: WeierstrassModel, coordinates: tuple[str, str], variable: str, name: str) -> Section:
    x, y = (text.replace("v", variable) for text in coordinates)
    return parse_section(model, x, y, name=name, field=K, aliases=U_ALIASES)


P1 = _on(E2K, FIRST, "t", "P1")
P2 = _on(E2K, SECOND, "t", "P2")
T1 = _on(E2K, ORDER_TWO, "t", "T1")
T2 = _on(E2K, ORDER_FOUR, "t", "T2")
EXTRA = parse_section(E2K, "-4*t^2", "4*sqrtm2*t^2*(t^2+1)", name="P", field=K)

P2_RATIONAL = E2.point(2 * (T - 1) ** 2, 2 * (T - 1) ** 2 * (T**2 + 2 * T - 1))
P3_RATIONAL = E3.point(1 - PHI**2, (T**2 - 5) * PHI * (PHI**2 - 1) / (5 + T**2))
T1_E3 = E3.point(4 * PHI**2, 0)


def _class(text: str) -> SquareClass:
    return function_class(parse_function(text, K), SquareMode.GEOMETRIC)


def _e3_sections() -> dict[str, Section]:
    sections = {
        "P1": _on(E3K, FIRST, "u", "P1"),
        "P2": _on(E3K, SECOND, "u", "P2"),
        "T1": _on(E3K, ORDER_TWO, "u", "T1"),
        "T2": _on(E3K, ORDER_FOUR, "u", "T2"),
    }
    sections["P3"] = parse_section(
        E3K, "1-u^2", "(t^2-5)*u*(u^2-1)/(5+t^2)", name="P3", field=K, aliases=U_ALIASES
    )
    return sections


# ---------------------------------------------------------------------------
# Sections
# ---------------------------------------------------------------------------


def test_sections_lie_on_the_model() -> None:
    assert E2K.contains(P1.point.x, P1.point.y)
    assert 2 * T2.point == E2K.point(0, 0)
    assert (P1 + P2).name == "P1+P2"
    assert (2 * P2).name == "2P2"


def test_off_curve_section_is_rejected() -> None:
    with pytest.raises(PointError, match="section bad is not on"):
        parse_section(E2K, "t", "t", name="bad", field=K)


def test_complex_conjugation_negates_the_first_generator() -> None:
    assert P1.conjugate(SIGMA).point == -P1.point
    assert P2.conjugate(SIGMA).point == P2.point


# ---------------------------------------------------------------------------
# Heights
# ---------------------------------------------------------------------------


def test_contribution_tables() -> None:
    assert contribution_table(KodairaSymbol("I", 4)) == {0, Fraction(3, 4), 1}
    assert contribution_table(KodairaSymbol("I*", 2)) == {0, 1, Fraction(3, 2)}
    assert contribution_table(KodairaSymbol("III", 0)) == {0, Fraction(1, 2)}


def test_height_pairing_on_the_k3_surface() -> None:
    pairing = HeightPairing(E2K)
    assert pairing.chi == 2
    assert pairing.height(P1) == Fraction(1, 2)
    assert pairing.height(P2) == 1
    assert pairing.pairing(P1, P2) == 0
    assert pairing.height(EXTRA) == 2
    assert pairing.height(T1) == 0
    assert pairing.pairing(T1, P2) == 0
    assert height_pairing(P2, P1, pairing) == 0


def test_height_is_quadratic() -> None:
    pairing = HeightPairing(E2)
    assert pairing.height(P2_RATIONAL) == 1
    assert pairing.height(2 * P2_RATIONAL) == 4


@pytest.mark.slow
def test_height_on_the_genus_one_cover_is_quadratic() -> None:
    pairing = HeightPairing(E3)
    assert pairing.height(P3_RATIONAL) == 3
    assert pairing.height(2 * P3_RATIONAL) == 12


def test_section_of_the_rank_one_twist_has_positive_height() -> None:
    point = twist_point(E1PP, T * (1 - 5 * T), 1 - T, 1 - T)
    assert HeightPairing(E1PP).height(point) > 0


def test_gram_index_bound_for_the_k3_surface() -> None:
    gram = HeightPairing(E2K).gram([P1, P2], scale=4)
    assert gram.names == ("P1", "P2")
    bound = gram_index_bound(gram, rank=2)
    assert bound.determinant == 8
    assert bound.indices == (1, 2)


@pytest.mark.slow
def test_gram_index_bound_for_the_cover() -> None:
    sections = _e3_sections()
    gram = HeightPairing(E3K).gram([sections[n] for n in ("P1", "P2", "P3")], scale=4)
    assert [gram.entries[k][k] for k in range(3)] == [4, 8, 12]
    assert gram.entries[0][1] == gram.entries[1][2] == gram.entries[0][2] == 0
    bound = gram_index_bound(gram)
    assert bound.determinant == 384
    assert bound.indices == (1, 2, 4, 8)
    assert bound.largest == 8


def test_gram_matrix_validation() -> None:
    single = HeightGram(((Fraction(1),),))
    assert gram_index_bound(single).indices == (1,)
    with pytest.raises(LatticeError, match="dependent generators"):
        gram_index_bound(HeightGram(((Fraction(1), Fraction(1)), (Fraction(1), Fraction(1)))))
    with pytest.raises(LatticeError, match="rescale"):
        gram_index_bound(HeightGram(((Fraction(1, 2),),)))
    with pytest.raises(LatticeError, match="symmetric"):
        HeightGram(((Fraction(1), Fraction(0)), (Fraction(1), Fraction(1))))
    with pytest.raises(LatticeError, match="scale"):
        HeightGram(((Fraction(1),),), scale=2)
    assert single.rescaled(4).entries == ((Fraction(4),),)


# ---------------------------------------------------------------------------
# 2-descent
# ---------------------------------------------------------------------------


def test_descent_images_on_the_k3_surface() -> None:
    assert two_descent_image(P2, pair=(0, 2)).second == _class("t^2+2*t-1")
    assert two_descent_image(P2, pair=(0, 2)).first.is_trivial
    torsion_image = two_descent_image(T1, pair=(0, 2))
    assert torsion_image.second == _class("(t^2-2*t-1)*(t^2+2*t-1)")
    assert two_descent_image(E2K.infinity, pair=(0, 2)).is_trivial


def test_descent_is_a_homomorphism_killing_doubles() -> None:
    assert two_descent_image(P1 + P2) == two_descent_image(P1) * two_descent_image(P2)
    assert two_descent_image(P2 + 2 * P1) == two_descent_image(P2)
    assert two_descent_image(2 * T2).is_trivial


def test_saturation_on_the_k3_surface() -> None:
    verdict = saturation_check(
        [P1, P2],
        [T1, T2],
        FiniteAbelianGroup((4, 2)),
        admissible=(1, 2),
        pair=(0, 2),
    )
    assert verdict.saturated
    assert verdict.image_size == 16
    assert verdict.patterns[2] == ()


def test_coset_check_for_the_rational_generator() -> None:
    check = coset_check(P2, [T1, T2], pair=(0, 2))
    assert len(check.images) == 4
    assert check.passed


def test_empty_generator_set_is_saturated() -> None:
    verdict = saturation_check([])
    assert verdict.saturated
    assert verdict.image_size == 1


@pytest.mark.slow
def test_descent_on_the_cover() -> None:
    sections = _e3_sections()
    assert two_descent_image(sections["P2"], pair=(0, 2)).second == _class(Q_MINUS)
    p3 = two_descent_image(sections["P3"], pair=(0, 2))
    assert p3.first == _class("(t^2-2*t+5)*(t^2+2*t+5)")
    assert p3.second.is_trivial
    t1 = two_descent_image(sections["T1"], pair=(0, 2))
    assert t1.second == _class(f"({Q_PLUS})*({Q_MINUS})")

    published = saturation_check(
        [sections[n] for n in ("P1", "P2", "P3")],
        [sections["T2"]],
        FiniteAbelianGroup((4,)),
        admissible=(1, 2, 4, 8),
        pair=(0, 2),
    )
    assert published.image_size == 16
    full = saturation_check(
        [sections[n] for n in ("P1", "P2", "P3")],
        [sections["T1"], sections["T2"]],
        FiniteAbelianGroup((4, 2)),
        admissible=(1, 2, 4, 8),
        pair=(0, 2),
    )
    assert full.image_size == 32
    assert full.saturated
    assert str(full) == "saturated (|eta(H)| = 32)"


# ---------------------------------------------------------------------------
# Torsion
# ---------------------------------------------------------------------------


def test_rational_torsion_of_the_k3_surface() -> None:
    torsion = torsion_subgroup(E2, FiniteAbelianGroup((4, 2)))
    assert torsion.group.orders == (2, 2)
    assert torsion.contains(E2.point(0, 0))
    assert torsion.contains(E2.point(4 * T**2, 0))
    assert halve(E2.point(0, 0)) == []


def test_geometric_torsion_of_the_k3_surface() -> None:
    torsion = torsion_subgroup(E2K, FiniteAbelianGroup((4, 4)))
    assert torsion.group.orders == (4, 2)
    assert torsion.contains(T2) and torsion.contains(T1)
    assert torsion.order == 8


@pytest.mark.slow
def test_torsion_of_the_cover() -> None:
    sections = _e3_sections()
    torsion = torsion_subgroup(E3K, FiniteAbelianGroup((4, 4)))
    assert torsion.group.orders == (4, 2)
    assert torsion.contains(sections["T1"]) and torsion.contains(sections["T2"])


def test_two_torsion_point_of_the_cover_is_not_a_double() -> None:
    witness = doubling_witness(T1_E3)
    octic = 625 - 100 * T**2 - 74 * T**4 - 4 * T**6 + T**8
    expected = -64 * T**2 * (5 + T**2) ** 6 * octic
    assert witness.discriminant * (5 + T**2) ** 12 == expected
    assert not witness.divisible
    with pytest.raises(LatticeError, match="order two"):
        doubling_witness(P3_RATIONAL)


# ---------------------------------------------------------------------------
# Ranks
# ---------------------------------------------------------------------------


def test_shioda_tate_examples() -> None:
    assert trivial_rank(fiber_table(E1)) == 9
    rational = shioda_tate_rank(10, fiber_table(E1))
    assert rational.rank == 1 and rational.exact
    assert shioda_tate_rank(18, 18).rank == 0

    bound = shioda_tate_rank(20, 18, exact=False)
    assert bound.rank == 2 and not bound.exact
    assert str(bound) == "rank <= 2 (20 - 18)"
    closed = shioda_tate_rank(20, 18, exact=False, independent=2)
    assert closed.exact


def test_shioda_tate_rejects_inconsistent_inputs() -> None:
    with pytest.raises(LatticeError, match="inconsistent inputs"):
        shioda_tate_rank(8, 9)
    with pytest.raises(LatticeError, match="inconsistent inputs"):
        shioda_tate_rank(20, 18, exact=False, independent=3)


def test_rank_additivity_along_the_double_covers() -> None:
    e1p = RankRecord("E1'", 0, ("rho(E1') = 18",))
    e1pp = RankRecord("E1''", 1, ("rho(E1'') <= 19",))
    e2p = twist_rank_additivity(e1p, e1pp, certify_double_cover(E1P, E2P, E1PP, T**2), "E2'")
    assert e2p.rank == 1
    e2 = RankRecord("E2", 2)
    e3 = twist_rank_additivity(e2, e2p, certify_double_cover(E2, E3, E2P, PHI), "E3")
    assert e3.rank == 3
    assert len(e3.provenance) == 4
    assert str(e3) == "rank E3 = 3"


def test_rank_additivity_needs_a_certified_cover() -> None:
    zero = RankRecord("A", 0)
    certificate = certify_double_cover(E2, E3, E2P, PHI)
    assert twist_rank_additivity(zero, zero, certificate, "C").rank == 0
    with pytest.raises(LatticeError, match="not certified"):
        bad = certify_double_cover(E1P, E2P, E1P, T**2)
        twist_rank_additivity(zero, zero, bad, "E2'")
    with pytest.raises(TwistError, match="square"):
        certify_twist(E1, quadratic_twist(E1, T**2), T**2)


def test_galois_descent_of_the_k3_surface() -> None:
    descent = galois_rank_over_q(HeightPairing(E2K), [P1, P2], [SIGMA])
    assert descent.matrices == (((-1, 0), (0, 1)),)
    assert descent.rank == 1
    assert descent.rational_generators == (1,)


def test_trivial_galois_action_keeps_the_rank() -> None:
    descent = galois_rank_over_q(HeightPairing(E2K), [P2], [GaloisMap.power(K, 1)])
    assert descent.matrices == (((1,),),)
    assert descent.rank == 1


@pytest.mark.slow
def test_galois_descent_of_the_cover() -> None:
    sections = _e3_sections()
    generators = [sections[n] for n in ("P1", "P2", "P3")]
    descent = galois_rank_over_q(HeightPairing(E3K), generators, [SIGMA])
    assert descent.matrices == (((-1, 0, 0), (0, 1, 0), (0, 0, 1)),)
    assert descent.rank == 2
    assert descent.rational_generators == (1, 2)


def test_mordell_weil_report_lines() -> None:
    torsion = torsion_subgroup(E2, FiniteAbelianGroup((4, 2)))
    report = MWReport(
        "E2",
        2,
        1,
        torsion,
        (Section(P2_RATIONAL, "P2"),),
        inputs=("rho <= 20",),
    )
    lines = report.lines()
    assert lines[0] == "E2: geometric rank 2"
    assert "rank over Q(t): 1" in lines
    assert lines[-1] == "input: rho <= 20"
