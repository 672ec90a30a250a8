"""Kodaira symbols and the finite abelian groups attached to them."""

from __future__ import annotations

import re
from collections import Counter
from collections.abc import Iterable
from dataclasses import dataclass
from math import prod

_SYMBOL = re.compile(r"^I(\d+)(\*?)$")
_ADDITIVE = {
    "II": (1, 2),
    "III": (2, 3),
    "IV": (3, 4),
    "IV*": (7, 8),
    "III*": (8, 9),
    "II*": (9, 10),
}
_GROUPS: dict[str, tuple[int, ...]] = {
    "II": (),
    "III": (2,),
    "IV": (3,),
    "IV*": (3,),
    "III*": (2,),
    "II*": (),
}


class SymbolError(ValueError):
    """Raised for unknown Kodaira symbols."""


@dataclass(frozen=True, slots=True, order=True)
class FiniteAbelianGroup:
    """Product of cyclic groups ``Z/n``; the empty product is trivial."""

    orders: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if any(n < 1 for n in self.orders):
            raise ValueError("cyclic orders must be positive")
        kept = tuple(sorted((n for n in self.orders if n > 1), reverse=True))
        object.__setattr__(self, "orders", kept)

    @classmethod
    def product(cls, groups: Iterable[FiniteAbelianGroup]) -> FiniteAbelianGroup:
        orders: list[int] = []
        for group in groups:
            orders.extend(group.orders)
        return cls(tuple(orders))

    @property
    def order(self) -> int:
        return prod(self.orders)

    @property
    def is_trivial(self) -> bool:
        return not self.orders

    def exponent_counts(self) -> dict[int, int]:
        return dict(Counter(self.orders))

    def __mul__(self, other: FiniteAbelianGroup) -> FiniteAbelianGroup:
        return FiniteAbelianGroup(self.orders + other.orders)

    def __pow__(self, exponent: int) -> FiniteAbelianGroup:
        return FiniteAbelianGroup(self.orders * exponent)

    def __str__(self) -> str:
        if not self.orders:
            return "0"
        parts = []
        for n, count in sorted(Counter(self.orders).items(), reverse=True):
            cyclic = f"Z/{n}Z"
            parts.append(cyclic if count == 1 else f"({cyclic})^{count}")
        return " x ".join(parts)


@dataclass(frozen=True, slots=True)
class KodairaSymbol:
    """``I_n`` (``n = 0`` is a good fiber), ``I_n*`` or one of the six exceptional types."""

    name: str
    n: int = 0

    def __post_init__(self) -> None:
        if self.name in ("I", "I*"):
            if self.n < 0:
                raise SymbolError("the index of I_n must be non-negative")
        elif self.name not in _ADDITIVE:
            raise SymbolError(f"unknown Kodaira symbol {self.name!r}")

    @classmethod
    def parse(cls, text: str) -> KodairaSymbol:
        cleaned = text.replace("_", "").replace("^", "").replace("{", "").replace("}", "")
        cleaned = cleaned.strip()
        if cleaned in _ADDITIVE:
            return cls(cleaned)
        match = _SYMBOL.match(cleaned)
        if match is None:
            raise SymbolError(f"unknown Kodaira symbol {text!r}")
        return cls("I*" if match.group(2) else "I", int(match.group(1)))

    @classmethod
    def good(cls) -> KodairaSymbol:
        return cls("I", 0)

    @property
    def is_good(self) -> bool:
        return self.name == "I" and self.n == 0

    @property
    def is_multiplicative(self) -> bool:
        return self.name == "I" and self.n > 0

    @property
    def is_additive(self) -> bool:
        return self.name != "I"

    @property
    def components(self) -> int:
        """``m_v``, the number of irreducible components."""

        if self.name == "I":
            return max(self.n, 1)
        if self.name == "I*":
            return self.n + 5
        return _ADDITIVE[self.name][0]

    @property
    def euler(self) -> int:
        """Local Euler number ``e_v``; zero for a good fiber."""

        if self.name == "I":
            return self.n
        if self.name == "I*":
            return self.n + 6
        return _ADDITIVE[self.name][1]

    @property
    def group(self) -> FiniteAbelianGroup:
        """Group of simple components, ``G(F_v)``."""

        if self.name == "I":
            return FiniteAbelianGroup((self.n,) if self.n > 1 else ())
        if self.name == "I*":
            return FiniteAbelianGroup((2, 2) if self.n % 2 == 0 else (4,))
        return FiniteAbelianGroup(_GROUPS[self.name])

    def __str__(self) -> str:
        if self.name == "I":
            return f"I{self.n}"
        if self.name == "I*":
            return f"I{self.n}*"
        return self.name


__all__ = ["FiniteAbelianGroup", "KodairaSymbol", "SymbolError"]
