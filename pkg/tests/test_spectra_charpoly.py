from pathlib import Path
import sys

import numpy as np
import pytest

ROOT = Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from sympy.polys.domains import QQ

from ellsurf.algebra import RationalFunction
from ellsurf.counting import TraceVector
from ellsurf.curves import WeierstrassModel
from ellsurf.curves.twists import quadratic_twist
from ellsurf.fibers import verify_good_reduction
from ellsurf.spectra import (
    AmbiguousCompletion,
    CharPoly,
    DiscriminantClass,
    DualityError,
    SpectraError,
    artin_tate_class,
    cyclotomic_count,
    discriminant_gate,
    duality_branches,
    duality_complete,
    picard_bound,
    quotient_traces,
    traces_to_charpoly,
    trivial_lattice_charpoly,
)
from ellsurf.spectra.charpoly import product

T = RationalFunction.gen(QQ)
E1 = WeierstrassModel.factored((T - 1) ** 2, 4 * T, name="E1")
E1P = quadratic_twist(E1, 1 - 5 * T, name="E1'")

E1P_COUNTS = (604, 88312, 24227740, 6977057176)
QUARTIC = CharPoly((1, -8, 238, -2312, 83521), 17)


def linear_power(root: int, q: int, exponent: int) -> CharPoly:
    return CharPoly.linear(root, q) ** exponent


# ---------------------------------------------------------------------------
# Newton identities
# ---------------------------------------------------------------------------


def test_two_eigenvalues() -> None:
    assert traces_to_charpoly([5, 13], 2, 3).coefficients == (1, -5, 6)


def test_zero_traces_give_a_monomial() -> None:
    assert traces_to_charpoly([0, 0, 0], 3, 5).coefficients == (1, 0, 0, 0)


def test_non_integral_coefficients_are_rejected() -> None:
    with pytest.raises(SpectraError, match="trace data inconsistent"):
        traces_to_charpoly([1, 0], 2, 5)
    with pytest.raises(SpectraError, match="exactly 3 traces"):
        traces_to_charpoly([1, 0], 3, 5)


def test_random_spectra_round_trip() -> None:
    rng = np.random.default_rng(2024)
    for _ in range(25):
        degree = int(rng.integers(1, 25))
        roots = [int(r) for r in rng.integers(-30, 31, size=degree)]
        expected = product((CharPoly.linear(root, 1) for root in roots), 1)
        traces = [sum(root**m for root in roots) for m in range(1, degree + 1)]
        assert expected.power_sums(degree) == traces
        assert traces_to_charpoly(traces, degree, 1) == expected


def test_first_twist_quotient_quartic() -> None:
    vector = TraceVector(17, 1, E1P_COUNTS)
    assert vector.traces() == [314, 4790, 90170, 1299734]
    trivial = linear_power(17, 17, 18)
    quotient = quotient_traces(vector.traces(), trivial)
    assert quotient == [8, -412, 1736, -203644]
    quartic = traces_to_charpoly(quotient, 4, 17)
    assert quartic == QUARTIC
    assert str(quartic) == "x^4 - 8*x^3 + 238*x^2 - 2312*x + 83521"
    assert quartic.satisfies_weil()
    assert quartic.functional_sign() == 1


def test_weil_check_rejects_real_roots() -> None:
    assert not CharPoly((1, -20, 49), 7).satisfies_weil()
    assert CharPoly((1, 0, -49), 7).satisfies_weil()
    assert linear_power(-17, 17, 8).satisfies_weil()


# ---------------------------------------------------------------------------
# Trivial lattice
# ---------------------------------------------------------------------------


def test_trivial_lattice_of_the_first_twist() -> None:
    fibers = verify_good_reduction(E1P, 17).fibers
    assert trivial_lattice_charpoly(fibers, 17) == linear_power(17, 17, 18)
    assert trivial_lattice_charpoly(fibers, 17, base_power=2) == linear_power(289, 289, 18)


def test_extra_classes_and_cycles() -> None:
    swap = CharPoly.cycle(2, 17)
    assert swap.coefficients == (1, 0, -289)
    assert swap == CharPoly.linear(17, 17) * CharPoly.linear(-17, 17)
    assert CharPoly.cycle(1, 17, -1) == CharPoly.linear(-17, 17)
    fibers = verify_good_reduction(E1P, 17).fibers
    extended = trivial_lattice_charpoly(fibers, 17, extra=[(2, 1), (1, -1)])
    assert extended.degree == 21
    assert cyclotomic_count(extended) == 21


# ---------------------------------------------------------------------------
# Duality
# ---------------------------------------------------------------------------


def test_duality_reconstructs_the_first_twist() -> None:
    traces = TraceVector(17, 1, E1P_COUNTS).traces()
    trivial = linear_power(17, 17, 18)
    full = duality_complete(traces, trivial, 22)
    assert full == trivial * QUARTIC
    assert full.constant == 17**22
    assert full.functional_sign() == 1
    # two traces already fix a palindromic quartic
    assert duality_complete(traces[:2], trivial, 22) == full


def test_degree_eight_factor_from_four_traces() -> None:
    known = linear_power(-17, 17, 8) * linear_power(17, 17, 30)
    unknown = product(
        [CharPoly((1, -22, 289), 17), CharPoly((1, -2, 289), 17), QUARTIC], 17
    )
    full = known * unknown
    traces = full.power_sums(4)
    assert duality_complete(traces, known, 46) == full
    assert cyclotomic_count(full) == 38


def test_quadratic_unknown_is_forced() -> None:
    assert duality_complete([10], CharPoly.one(7), 2).coefficients == (1, -10, 49)


def test_duality_ambiguity_and_failure() -> None:
    with pytest.raises(AmbiguousCompletion, match="supply one more trace") as info:
        duality_complete([0], CharPoly.one(7), 2)
    signs = sorted(branch.sign for branch in info.value.branches)
    assert signs == [-1, 1]
    assert len(duality_branches([0, -98], CharPoly.one(7), 2)) == 1
    with pytest.raises(DualityError, match="no consistent completion"):
        duality_complete([20], CharPoly.one(7), 2)
    with pytest.raises(SpectraError, match="needs 2 traces"):
        duality_complete([1], CharPoly.one(7), 4)


# ---------------------------------------------------------------------------
# Cyclotomic eigenvalues
# ---------------------------------------------------------------------------


def test_cyclotomic_counts() -> None:
    first_twist = linear_power(17, 17, 18) * QUARTIC
    assert cyclotomic_count(first_twist) == 18
    assert cyclotomic_count(CharPoly.linear(17, 17) * CharPoly.linear(-17, 17)) == 2
    double_twist = linear_power(121, 121, 20) * CharPoly((1, -158, 14641), 121)
    assert cyclotomic_count(double_twist) == 20
    # x^2 + x q + q^2 has the primitive cube roots of unity times q
    assert cyclotomic_count(CharPoly((1, 5, 25), 5)) == 2


def test_cyclotomic_count_grows_with_linear_factors() -> None:
    base = linear_power(17, 17, 18) * QUARTIC
    for k in range(4):
        assert cyclotomic_count(base * linear_power(17, 17, k)) == 18 + k


def test_picard_bound_report() -> None:
    report = picard_bound(linear_power(17, 17, 18) * QUARTIC, 18)
    assert report.bound == 18
    assert report.mordell_weil_bound == 0
    assert "Mordell-Weil rank 0" in report.conclusion
    loose = picard_bound(linear_power(121, 121, 20) * CharPoly((1, -158, 14641), 121), 18)
    assert loose.conclusion == "Picard rank <= 20; Mordell-Weil rank <= 2"
    with pytest.raises(SpectraError, match="only 18"):
        picard_bound(linear_power(17, 17, 18) * QUARTIC, 19)


# ---------------------------------------------------------------------------
# Artin-Tate classes
# ---------------------------------------------------------------------------


def test_double_twist_classes() -> None:
    eleven = linear_power(121, 121, 20) * CharPoly((1, -158, 14641), 121)
    assert artin_tate_class(eleven, 20).value == -21
    seventeen = linear_power(289, 289, 20) * CharPoly((1, 94, 83521), 289)
    assert artin_tate_class(seventeen, 20).value == -42


def test_rigid_lattice_class() -> None:
    assert artin_tate_class(linear_power(9, 9, 22), 22).value == -1


def test_artin_tate_preconditions() -> None:
    with pytest.raises(SpectraError, match="not a square"):
        artin_tate_class(linear_power(17, 17, 22))
    twisted = CharPoly.linear(9, 9) * linear_power(-9, 9, 21)
    with pytest.raises(SpectraError, match="zeta of order"):
        artin_tate_class(twisted)
    with pytest.raises(SpectraError, match="multiplicity 22"):
        artin_tate_class(linear_power(9, 9, 22), 20)


def test_discriminant_gate() -> None:
    verdict = discriminant_gate([DiscriminantClass(-21, 11), DiscriminantClass(-42, 17)], 20)
    assert verdict.conclusive
    assert verdict.bound == 19
    assert verdict.message.startswith("rank <= 19")
    same = discriminant_gate([DiscriminantClass(-21), DiscriminantClass(-21)], 20)
    assert not same.conclusive
    assert str(same) == "inconclusive"
    with pytest.raises(SpectraError, match="need two primes"):
        discriminant_gate([DiscriminantClass(-21)], 20)
    with pytest.raises(SpectraError, match="not a squarefree"):
        DiscriminantClass(12)


def test_discriminant_gate_needs_distinct_primes_with_equal_counts() -> None:
    eleven = linear_power(121, 121, 20) * CharPoly((1, -158, 14641), 121)
    assert artin_tate_class(eleven, prime=11).rho == 20
    first, other = DiscriminantClass(-21, 11, 20), DiscriminantClass(-42, 17, 20)
    with pytest.raises(SpectraError, match="not distinct"):
        discriminant_gate([first, DiscriminantClass(-42, 11, 20)], 20)
    with pytest.raises(SpectraError, match=r"counts \[18, 20\] differ"):
        discriminant_gate([first, DiscriminantClass(-42, 17, 18)], 20)
    assert discriminant_gate([first, other], 20).bound == 19
