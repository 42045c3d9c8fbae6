"""Exact arithmetic in ``Q(sqrt c)`` for a fixed square-free ``c``: values ``a + b*sqrt(c)``."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor, isqrt


def _square_free_split(k: int) -> tuple[int, int]:
    """``k = s*s*c`` with ``c`` square-free; returns ``(s, c)``."""
    s, c = 1, 1
    p = 2
    while p * p <= k:
        while k % (p * p) == 0:
            k //= p * p
            s *= p
        if k % p == 0:
            k //= p
            c *= p
        p += 1
    return s, c * k


@dataclass(frozen=True)
class QuadSurd:
    a: Fraction
    b: Fraction = Fraction(0)
    c: int = 1

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))
        if self.c == 1 or self.b == 0:
            object.__setattr__(self, "a", self.a + self.b if self.c == 1 else self.a)
            object.__setattr__(self, "b", Fraction(0))
            object.__setattr__(self, "c", 1)

    @classmethod
    def sqrt(cls, q) -> "QuadSurd":
        """``sqrt(q)`` for a non-negative rational ``q``."""
        q = Fraction(q)
        if q < 0:
            raise ValueError("square root of a negative number")
        if q == 0:
            return cls(Fraction(0))
        s, c = _square_free_split(q.numerator * q.denominator)
        return cls(Fraction(0), Fraction(s, q.denominator), c)

    def _coerce(self, other) -> "QuadSurd":
        if not isinstance(other, QuadSurd):
            return QuadSurd(Fraction(other))
        if other.c != 1 and self.c != 1 and other.c != self.c:
            raise ValueError(f"cannot mix sqrt({self.c}) and sqrt({other.c})")
        return other

    def _field(self, other: "QuadSurd") -> int:
        return self.c if self.c != 1 else other.c

    def __add__(self, other):
        o = self._coerce(other)
        return QuadSurd(self.a + o.a, self.b + o.b, self._field(o))

    __radd__ = __add__

    def __neg__(self):
        return QuadSurd(-self.a, -self.b, self.c)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        c = self._field(o)
        return QuadSurd(self.a * o.a + self.b * o.b * c, self.a * o.b + self.b * o.a, c)

    __rmul__ = __mul__

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def sign(self) -> int:
        a, b = self.a, self.b
        sa = (a > 0) - (a < 0)
        sb = (b > 0) - (b < 0)
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb
        # opposite signs: compare a^2 with b^2 c
        d = a * a - b * b * self.c
        return sa if d > 0 else (sb if d < 0 else 0)

    def __eq__(self, other):
        try:
            return (self - other).sign() == 0
        except ValueError:
            return NotImplemented

    def __hash__(self):
        return hash(self.a) if self.b == 0 else hash((self.a, self.b, self.c))

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def __floor__(self) -> int:
        if self.b == 0:
            return floor(self.a)
        # float estimate, corrected by exact comparisons
        guess = floor(float(self))
        while self < guess:
            guess -= 1
        while self >= guess + 1:
            guess += 1
        return guess

    def __ceil__(self) -> int:
        f = floor(self)
        return f if self == f else f + 1

    def __float__(self):
        return float(self.a) + float(self.b) * self.c ** 0.5

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        coef = abs(self.b)
        rad = f"sqrt({self.c})" if coef == 1 else f"{coef}*sqrt({self.c})"
        if self.a == 0:
            return rad if self.b > 0 else f"-{rad}"
        return f"{self.a} {'+' if self.b > 0 else '-'} {rad}"


def is_perfect_square(q) -> bool:
    q = Fraction(q)
    if q < 0:
        return False
    return isqrt(q.numerator) ** 2 == q.numerator and isqrt(q.denominator) ** 2 == q.denominator
