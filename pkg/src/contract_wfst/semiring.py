"""Semiring weights.

A weight class bundles the carrier set and the semiring operations
(plus, times, zero, one).  Only the tropical semiring is provided; the
algorithms in this package talk to weights through the :class:`Weight`
interface so another semiring can be added without touching them.
"""

from __future__ import annotations

import abc
import math
from dataclasses import dataclass
from typing import Union

from .errors import NegativeWeight, WeightParseError

__all__ = [
    "Weight",
    "TropicalWeight",
    "plus",
    "times",
    "weight_compare",
    "format_weight",
    "parse_weight",
]


class Weight(abc.ABC):
    """Element of a semiring (S, plus, times, zero, one)."""

    __slots__ = ()

    @classmethod
    @abc.abstractmethod
    def zero(cls) -> "Weight":
        """Identity of plus, annihilator of times."""

    @classmethod
    @abc.abstractmethod
    def one(cls) -> "Weight":
        """Identity of times."""

    @abc.abstractmethod
    def plus(self, other: "Weight") -> "Weight":
        ...

    @abc.abstractmethod
    def times(self, other: "Weight") -> "Weight":
        ...

    @abc.abstractmethod
    def divide(self, other: "Weight") -> "Weight":
        """Left division: the ``z`` with ``other.times(z) == self``.

        Only defined when ``other`` is not zero.
        """

    def is_zero(self) -> bool:
        return self == self.zero()

    def is_one(self) -> bool:
        return self == self.one()

    # plus and times as operators, so algorithms read like the algebra.
    def __add__(self, other):
        if not isinstance(other, Weight):
            return NotImplemented
        return self.plus(other)

    def __mul__(self, other):
        if not isinstance(other, Weight):
            return NotImplemented
        return self.times(other)


WeightLike = Union["TropicalWeight", int, float, str]


@dataclass(frozen=True, order=True)
class TropicalWeight(Weight):
    """Tropical semiring ``(R+ u {inf}, min, +, inf, 0)``.

    ``value`` is a non-negative float or ``math.inf``.  Negative values and
    NaN are rejected, so every arc cost in a machine is a valid cost.

    >>> TropicalWeight(2) * TropicalWeight(3)
    TropicalWeight(5)
    >>> TropicalWeight(5) + TropicalWeight(7)
    TropicalWeight(5)
    """

    value: float = 0.0

    def __post_init__(self):
        v = float(self.value)
        if math.isnan(v):
            raise NegativeWeight("tropical weight cannot be NaN")
        if v < 0:
            raise NegativeWeight(f"tropical weight must be >= 0, got {self.value!r}")
        # -0.0 would print as "-0"
        object.__setattr__(self, "value", v + 0.0)

    @classmethod
    def zero(cls) -> "TropicalWeight":
        return _ZERO

    @classmethod
    def one(cls) -> "TropicalWeight":
        return _ONE

    @classmethod
    def coerce(cls, w: WeightLike) -> "TropicalWeight":
        if isinstance(w, TropicalWeight):
            return w
        if isinstance(w, str):
            return parse_weight(w)
        return cls(w)

    def plus(self, other: "TropicalWeight") -> "TropicalWeight":
        return self if self.value <= other.value else other

    def times(self, other: "TropicalWeight") -> "TropicalWeight":
        if self.value == math.inf or other.value == math.inf:
            return _ZERO
        if other.value == 0.0:
            return self
        if self.value == 0.0:
            return other
        return TropicalWeight(self.value + other.value)

    def divide(self, other: "TropicalWeight") -> "TropicalWeight":
        if other.value == math.inf:
            raise ZeroDivisionError("division by the tropical zero")
        if self.value == math.inf:
            return _ZERO
        # Residuals come from subtracting a minimum, so this stays >= 0;
        # clamp float noise anyway.
        return TropicalWeight(max(self.value - other.value, 0.0))

    def is_zero(self) -> bool:
        return self.value == math.inf

    def is_one(self) -> bool:
        return self.value == 0.0

    def __str__(self) -> str:
        return format_weight(self)

    def __repr__(self) -> str:
        return f"TropicalWeight({format_weight(self)})"


_ZERO = TropicalWeight(math.inf)
_ONE = TropicalWeight(0.0)


def plus(a: TropicalWeight, b: TropicalWeight) -> TropicalWeight:
    return a.plus(b)


def times(a: TropicalWeight, b: TropicalWeight) -> TropicalWeight:
    return a.times(b)


def weight_compare(a: TropicalWeight, b: TropicalWeight) -> int:
    """Three-way comparison: -1, 0 or 1.  Infinity sorts last."""
    if a.value < b.value:
        return -1
    if a.value > b.value:
        return 1
    return 0


def format_weight(w: TropicalWeight) -> str:
    """Shortest decimal text that parses back to the same value.

    >>> format_weight(TropicalWeight(15000))
    '15000'
    >>> format_weight(TropicalWeight.zero())
    'Infinity'
    """
    v = w.value
    if v == math.inf:
        return "Infinity"
    if v.is_integer() and abs(v) < 1e16:
        return str(int(v))
    return repr(v)


def parse_weight(text: str) -> TropicalWeight:
    s = text.strip()
    if s in ("Infinity", "inf", "+inf", "+Infinity"):
        return _ZERO
    try:
        v = float(s)
    except ValueError:
        raise WeightParseError(f"not a weight: {text!r}") from None
    if math.isnan(v) or (math.isinf(v) and v < 0):
        raise WeightParseError(f"not a weight: {text!r}")
    return TropicalWeight(v)
