"""Closed points of the projective line over a coefficient field."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .domains import Domain, format_element
from .factoring import FactorizationError, certify_irreducible
from .functions import RationalFunction
from .polys import UniPoly


class PlaceError(ValueError):
    """Raised for constant or reducible place polynomials."""


@dataclass(frozen=True, slots=True)
class Place:
    """Either infinity (``poly is None``) or a monic irreducible polynomial."""

    poly: UniPoly | None = None
    certificate: str = field(default="", compare=False)

    @classmethod
    def infinity(cls) -> Place:
        return cls(None, "infinity")

    @classmethod
    def finite(cls, poly: UniPoly, *, certify: bool = True) -> Place:
        if poly.degree < 1:
            raise PlaceError(f"{poly} does not define a place")
        monic = poly.monic()
        if not certify:
            return cls(monic, "assumed")
        try:
            certificate = certify_irreducible(monic)
        except FactorizationError as exc:
            raise PlaceError(str(exc)) from exc
        return cls(monic, certificate)

    @classmethod
    def at(cls, value: object, domain: Domain) -> Place:
        """The degree-one place ``t = value``."""

        return cls(UniPoly.linear_root(value, domain), "linear")

    @property
    def is_infinity(self) -> bool:
        return self.poly is None

    @property
    def degree(self) -> int:
        return 1 if self.poly is None else self.poly.degree

    @property
    def root(self) -> Any:
        """The rational root of a degree-one place."""

        if self.poly is None or self.poly.degree != 1:
            raise PlaceError(f"{self} is not a rational finite place")
        return -self.poly.tc

    def valuation(self, value: RationalFunction | UniPoly) -> int:
        if isinstance(value, UniPoly):
            value = RationalFunction(value, UniPoly.one(value.domain))
        return value.valuation(self.poly)

    def conjugate(self, sigma: Any) -> Place:
        if self.poly is None:
            return self
        return Place(self.poly.map_coefficients(sigma.apply_domain), self.certificate)

    def sort_key(self) -> tuple[Any, ...]:
        if self.poly is None:
            return (1, 0, ())
        return (0, self.poly.degree, self.poly.key())

    def __str__(self) -> str:
        if self.poly is None:
            return "oo"
        if self.poly.degree == 1:
            return f"t={format_element(self.poly.domain, self.root)}"
        return str(self.poly)


__all__ = ["Place", "PlaceError"]
