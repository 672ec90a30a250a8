from collections import Counter
from functools import lru_cache
from pathlib import Path
import sys

import numpy as np
import pytest

ROOT = Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from pydantic import ValidationError
from sympy.polys.domains import FF, QQ

from ellsurf.algebra import RationalFunction
from ellsurf.curves import WeierstrassModel
from ellsurf.curves.reduction import ResidueMap, reduce_mod_p
from ellsurf.curves.twists import quadratic_twist
from ellsurf.counting import (
    CountingError,
    CountingSettings,
    FiberCountError,
    FiberCurve,
    OracleError,
    SingularCountError,
    Strategy,
    SurfaceCounter,
    TraceVector,
    extend_count,
    good_fiber_count,
    naive_oracle_count,
    singular_fiber_count,
    surface_count,
)
from ellsurf.counting.traces import bsgs_trace, character_sum_trace, power_sums
from ellsurf.fibers import KodairaSymbol, Place, fiber_graph
from ellsurf.fibers.graphs import frobenius_action
from ellsurf.fibers.invariants import verify_good_reduction
from ellsurf.fibers.tate import KodairaFiber
from ellsurf.fields import ExtField
from ellsurf.workbench import Surface, build_surface, load_spec

T = RationalFunction.gen(QQ)
E1 = WeierstrassModel.factored((T - 1) ** 2, 4 * T, name="E1")
E1P = quadratic_twist(E1, 1 - 5 * T, name="E1'")
E2 = WeierstrassModel.factored((T**2 - 1) ** 2, 4 * T**2, name="E2")

F5 = ExtField.build(5)
F17 = ExtField.build(17)


def reduced(model: WeierstrassModel, p: int) -> WeierstrassModel:
    return reduce_mod_p(model, ResidueMap(p))


def brute_force(field: ExtField, curve: FiberCurve) -> int:
    squares = Counter(field.mul(y, y) for y in range(field.q))
    total = 1
    for x in range(field.q):
        value = field.mul(field.add(x, curve.a2), field.mul(x, x))
        value = field.add(value, field.add(field.mul(curve.a4, x), curve.a6))
        total += squares[value]
    return total


def fiber(symbol: str, splitness: str, residue_size: int) -> KodairaFiber:
    kodaira = KodairaSymbol.parse(symbol)
    action = frobenius_action(fiber_graph(kodaira), splitness)
    return KodairaFiber(Place.infinity(), kodaira, splitness, (0, 0, 1), residue_size, action)


# ---------------------------------------------------------------------------
# Smooth fibers
# ---------------------------------------------------------------------------


def test_fiber_at_two_over_five() -> None:
    curve = FiberCurve(F5, 1, 3, 0)  # x (x - 1)(x - 3)
    assert good_fiber_count(curve, 1) == 4
    assert good_fiber_count(curve, 2) == 32
    over_25 = FiberCurve(ExtField.build(5, 2), 1, 3, 0)
    assert good_fiber_count(over_25, 2) == 32 == brute_force(over_25.field, over_25)


def test_supersingular_extension() -> None:
    assert extend_count(0, 5, 2) == 36
    assert power_sums(0, 5, 4) == [2, 0, -10, 0, 50]


def test_recurrence_matches_brute_force_over_289() -> None:
    curve = FiberCurve.short(F17, 2, 3)
    field = ExtField.build(17, 2)
    lifted = FiberCurve.short(field, 2, 3)
    assert good_fiber_count(curve, 2) == brute_force(field, lifted)
    assert good_fiber_count(curve, 1) == brute_force(F17, curve)


def test_bsgs_agrees_with_character_sums() -> None:
    rng = np.random.default_rng(7)
    field = ExtField.build(17, 2)
    settings = CountingSettings(strategy=Strategy.BSGS)
    checked = 0
    while checked < 12:
        a, b = (int(v) for v in rng.integers(0, field.q, size=2))
        curve = FiberCurve.short(field, a, b)
        if curve.is_singular:
            continue
        assert bsgs_trace(curve, settings, salt=checked) == character_sum_trace(curve)
        checked += 1


def test_singular_fiber_is_rejected() -> None:
    curve = FiberCurve(F5, 0, 0, 0)
    assert curve.is_singular
    with pytest.raises(FiberCountError, match="use singular_fiber_count"):
        good_fiber_count(curve, 1)
    with pytest.raises(FiberCountError, match="multiple"):
        good_fiber_count(FiberCurve(ExtField.build(5, 2), 1, 3, 0), 3)


# ---------------------------------------------------------------------------
# Singular fibers
# ---------------------------------------------------------------------------


def test_singular_fiber_counts() -> None:
    assert singular_fiber_count(fiber("I4", "split", 5), 5) == 20
    assert singular_fiber_count(fiber("I0*", "1+1+1", 7), 7) == 36
    assert singular_fiber_count(fiber("I1", "non-split", 7), 7) == 9
    assert singular_fiber_count(fiber("I1", "non-split", 7), 49) == 49
    assert singular_fiber_count(fiber("I4", "non-split", 5), 25) == 100
    with pytest.raises(SingularCountError, match="does not contain"):
        singular_fiber_count(fiber("I4", "split", 25), 5)


def test_nonsplit_node_matches_brute_force() -> None:
    field = ExtField.build(7)
    # y^2 = x^2 (x + 3) with 3 a non-residue modulo 7
    nodal = FiberCurve(field, 3, 0, 0)
    assert brute_force(field, nodal) == singular_fiber_count(fiber("I1", "non-split", 7), 7)


# ---------------------------------------------------------------------------
# Surfaces
# ---------------------------------------------------------------------------


def test_engine_agrees_with_the_oracle() -> None:
    e1 = reduced(E1, 5)
    vector = surface_count(e1, 2)
    assert vector.counts == (naive_oracle_count(e1, 1), naive_oracle_count(e1, 2))
    e2 = reduced(E2, 7)
    assert surface_count(e2, 1).count(1) == naive_oracle_count(e2, 1)


def test_orbit_reduction_threads_and_strategies_do_not_change_totals() -> None:
    e1 = reduced(E1, 5)
    expected = surface_count(e1, 2).counts
    variants = [
        CountingSettings(orbit_reduction=False),
        CountingSettings(threads=3, chunk_size=2),
        CountingSettings(strategy=Strategy.BSGS),
        CountingSettings(strategy=Strategy.CHAR_SUM, table_threshold=1),
    ]
    for settings in variants:
        assert surface_count(e1, 2, settings).counts == expected
    e2 = reduced(E2, 7)
    direct = SurfaceCounter(e2, CountingSettings(orbit_reduction=False))
    assert SurfaceCounter(e2).count(2) == direct.count(2)


@lru_cache(maxsize=None)
def _shipped_surface(name: str) -> Surface:
    return build_surface(load_spec(name))


def _good_reduction(name: str, p: int) -> WeierstrassModel | None:
    surface = _shipped_surface(name)
    residue = ResidueMap(p)
    try:
        report = verify_good_reduction(surface.base, residue, surface.places)
    except ValueError:
        # residues that do not reduce or leave a degenerate model
        return None
    return reduce_mod_p(surface.base, residue) if report else None


@pytest.mark.parametrize("p", [5, 7, 11, 13])
@pytest.mark.parametrize("name", ["E1", "E1'", "E1''", "E2", "E2'", "E3"])
def test_orbit_counts_match_direct_counts_on_every_surface(name: str, p: int) -> None:
    model = _good_reduction(name, p)
    if model is None:
        pytest.skip(f"{name} has bad reduction at {p}")
    orbits = SurfaceCounter(model)
    direct = SurfaceCounter(model, CountingSettings(orbit_reduction=False))
    for m in (1, 2):
        count = orbits.count(m)
        assert count == direct.count(m), (name, p, m)
        try:
            oracle = naive_oracle_count(model, m)
        except OracleError:
            continue
        assert count == oracle, (name, p, m)


def test_constant_surface_is_a_product() -> None:
    t5 = RationalFunction.gen(FF(5))
    one = t5 * 0 + 1
    model = WeierstrassModel.short(one, one)
    counter = SurfaceCounter(model)
    assert counter.fibers == []
    fiber_count = brute_force(F5, FiberCurve.short(F5, 1, 1))
    assert fiber_count == 9
    assert counter.count(1) == 6 * fiber_count == naive_oracle_count(model, 1)


def test_first_twist_counts_modulo_seventeen() -> None:
    vector = surface_count(reduced(E1P, 17), 3, lift=E1P)
    assert vector.counts == (604, 88312, 24227740)
    assert vector.q == 17
    assert vector.traces()[0] == 604 - 1 - 17**2


@pytest.mark.slow
def test_first_twist_counts_to_depth_four() -> None:
    vector = surface_count(reduced(E1P, 17), 4)
    assert vector.counts == (604, 88312, 24227740, 6977057176)


def test_double_twist_over_121() -> None:
    e1pp = quadratic_twist(E1P, T, name="E1''")
    vector = surface_count(reduced(e1pp, 11), 1, base_power=2)
    assert vector.q == 121
    assert vector.count(1) == 1 + 121**2 + 20 * 121 + 158


@pytest.mark.slow
def test_double_twist_over_121_depth_two() -> None:
    e1pp = quadratic_twist(E1P, T, name="E1''")
    vector = surface_count(reduced(e1pp, 11), 2, base_power=2)
    trace = 20 * 121**2 + 158**2 - 2 * 121**2
    assert vector.count(2) == 1 + 121**4 + trace


def test_bad_reduction_must_be_acknowledged() -> None:
    with pytest.raises(CountingError, match="not good"):
        surface_count(reduced(E1P, 5), 1, lift=E1P)


def test_oracle_limits() -> None:
    with pytest.raises(OracleError, match="size limit exceeded"):
        naive_oracle_count(reduced(E1, 5), 6)
    with pytest.raises(OracleError, match="unsupported"):
        naive_oracle_count(reduced(E1P, 17), 1)


def test_settings_and_vectors_validate() -> None:
    with pytest.raises(ValidationError):
        CountingSettings(threads=0)
    with pytest.raises(ValidationError):
        CountingSettings(colour="red")
    settings = CountingSettings(bsgs_threshold=100)
    assert settings.strategy_for(50) is Strategy.CHAR_SUM
    assert settings.strategy_for(101) is Strategy.BSGS
    with pytest.raises(FiberCountError, match="below the number of fibers"):
        TraceVector(5, 1, (5,))
