"""Exact rationals and closed subintervals of [0, 1].

Rationals are :class:`fractions.Fraction`, which is always kept in lowest
terms with a positive denominator. The textual form used in every config
file and report is ``"p/q"`` (denominator always written, ``-`` prefix for
negatives).
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .errors import OutOfDomain, ZeroDenominator

Rational = Fraction
RationalLike = Union[Fraction, int, str]

ZERO = Fraction(0)
ONE = Fraction(1)
HALF = Fraction(1, 2)


def make_rational(p: int, q: int = 1) -> Fraction:
    if q == 0:
        raise ZeroDenominator(f"zero denominator in {p}/{q}")
    return Fraction(p, q)


def as_rational(value: RationalLike) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string. Floats are refused."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"cannot use {value!r} as an exact rational")


def parse_rational(text: str) -> Fraction:
    s = text.strip()
    if not s:
        raise ValueError("empty rational")
    num, sep, den = s.partition("/")
    try:
        p = int(num)
        q = int(den) if sep else 1
    except ValueError:
        raise ValueError(f"not a rational of the form p/q: {text!r}") from None
    if q == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return make_rational(p, q)


def format_rational(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class UnitInterval:
    """Closed interval ``[lo, hi]`` inside [0, 1].

    Degenerate intervals (``lo == hi``) are representable; code that needs a
    genuine interval checks :attr:`is_degenerate`.
    """

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        lo, hi = as_rational(self.lo), as_rational(self.hi)
        if not (0 <= lo <= hi <= 1):
            raise OutOfDomain(f"[{lo}, {hi}] is not a subinterval of [0, 1]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @classmethod
    def unit(cls) -> "UnitInterval":
        return cls(ZERO, ONE)

    @classmethod
    def around(cls, x: Fraction, radius: Fraction) -> "UnitInterval":
        """``[x - radius, x + radius]`` clipped to [0, 1]."""
        return cls(max(ZERO, x - radius), min(ONE, x + radius))

    @property
    def length(self) -> Fraction:
        return self.hi - self.lo

    @property
    def is_degenerate(self) -> bool:
        return self.lo == self.hi

    @property
    def is_unit(self) -> bool:
        return self.lo == 0 and self.hi == 1

    def __contains__(self, x) -> bool:
        return self.lo <= x <= self.hi

    def contains_interior(self, x) -> bool:
        return self.lo < x < self.hi

    def issubset(self, other: "UnitInterval") -> bool:
        return other.lo <= self.lo and self.hi <= other.hi

    def __str__(self) -> str:
        return f"[{format_rational(self.lo)}, {format_rational(self.hi)}]"

    def to_json(self):
        return [format_rational(self.lo), format_rational(self.hi)]

    @classmethod
    def from_json(cls, data) -> "UnitInterval":
        lo, hi = data
        return cls(parse_rational(lo), parse_rational(hi))


def interval_length(J: UnitInterval) -> Fraction:
    return J.hi - J.lo


def interval_intersect(J: UnitInterval, K: UnitInterval) -> Optional[UnitInterval]:
    """Exact intersection; ``None`` plays the role of the empty interval."""
    lo = max(J.lo, K.lo)
    hi = min(J.hi, K.hi)
    if lo > hi:
        return None
    return UnitInterval(lo, hi)
