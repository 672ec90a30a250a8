"""Mordell-Weil lattices: sections, heights, 2-descent, torsion and rank assembly."""

from __future__ import annotations

from importlib import import_module
from typing import TYPE_CHECKING, Any

from .sections import (
    CYCLOTOMIC_ALIASES,
    LatticeError,
    Section,
    complex_conjugation,
    eighth_cyclotomic_field,
    parse_section,
    zero_section,
)

if TYPE_CHECKING:  # pragma: no cover - imported for type checkers only
    from .descent import (
        CosetCheck,
        DescentImage,
        SaturationVerdict,
        coset_check,
        saturation_check,
        two_descent_image,
    )
    from .heights import (
        HeightError,
        HeightGram,
        HeightPairing,
        IndexBound,
        gram_index_bound,
        height_pairing,
    )
    from .ranks import (
        GaloisDescent,
        MWReport,
        RankRecord,
        ShiodaTate,
        galois_rank_over_q,
        shioda_tate_rank,
        twist_rank_additivity,
    )
    from .torsion import HalvingWitness, TorsionGroup, doubling_witness, halve, torsion_subgroup

__all__ = [
    "CYCLOTOMIC_ALIASES",
    "CosetCheck",
    "DescentImage",
    "GaloisDescent",
    "HalvingWitness",
    "HeightError",
    "HeightGram",
    "HeightPairing",
    "IndexBound",
    "LatticeError",
    "MWReport",
    "RankRecord",
    "SaturationVerdict",
    "Section",
    "ShiodaTate",
    "TorsionGroup",
    "complex_conjugation",
    "coset_check",
    "doubling_witness",
    "eighth_cyclotomic_field",
    "galois_rank_over_q",
    "gram_index_bound",
    "halve",
    "height_pairing",
    "parse_section",
    "saturation_check",
    "shioda_tate_rank",
    "torsion_subgroup",
    "twist_rank_additivity",
    "two_descent_image",
    "zero_section",
]

_LAZY_EXPORTS = {
    "CosetCheck": ".descent",
    "DescentImage": ".descent",
    "SaturationVerdict": ".descent",
    "coset_check": ".descent",
    "saturation_check": ".descent",
    "two_descent_image": ".descent",
    "HeightError": ".heights",
    "HeightGram": ".heights",
    "HeightPairing": ".heights",
    "IndexBound": ".heights",
    "gram_index_bound": ".heights",
    "height_pairing": ".heights",
    "GaloisDescent": ".ranks",
    "MWReport": ".ranks",
    "RankRecord": ".ranks",
    "ShiodaTate": ".ranks",
    "galois_rank_over_q": ".ranks",
    "shioda_tate_rank": ".ranks",
    "twist_rank_additivity": ".ranks",
    "HalvingWitness": ".torsion",
    "TorsionGroup": ".torsion",
    "doubling_witness": ".torsion",
    "halve": ".torsion",
    "torsion_subgroup": ".torsion",
}


def __getattr__(name: str) -> Any:
    module_name = _LAZY_EXPORTS.get(name)
    if module_name is not None:
        module = import_module(module_name, __name__)
        value = getattr(module, name)
        globals()[name] = value
        return value
    raise AttributeError(f"module {__name__!r} has no attribute {name!r}")


def __dir__() -> list[str]:  # pragma: no cover - trivial
    return sorted(list(globals().keys()) + list(_LAZY_EXPORTS))
