"""Exact Gaussian rationals, the ground field Q(i) for every computation here."""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

__all__ = ["GaussRational", "I", "ZERO", "ONE", "to_gr", "parse_rational"]


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot convert {x!r} to an exact rational")


class GaussRational:
    """a + b*i with a, b exact rationals.

    Instances are immutable and hashable; ``GaussRational(3) == 3`` holds, and
    hashing agrees with ``Fraction`` for real values so the two can share dict keys.
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", _frac(re))
        object.__setattr__(self, "im", _frac(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussRational is immutable")

    @staticmethod
    def _raw(re: Fraction, im: Fraction) -> "GaussRational":
        z = object.__new__(GaussRational)
        object.__setattr__(z, "re", re)
        object.__setattr__(z, "im", im)
        return z

    # -- arithmetic -----------------------------------------------------------
    def __add__(self, other):
        if isinstance(other, GaussRational):
            return GaussRational._raw(self.re + other.re, self.im + other.im)
        if isinstance(other, (int, Rational)):
            return GaussRational._raw(self.re + other, self.im)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return GaussRational._raw(-self.re, -self.im)

    def __pos__(self):
        return self

    def __sub__(self, other):
        if isinstance(other, GaussRational):
            return GaussRational._raw(self.re - other.re, self.im - other.im)
        if isinstance(other, (int, Rational)):
            return GaussRational._raw(self.re - other, self.im)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, (int, Rational)):
            return GaussRational._raw(other - self.re, -self.im)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, GaussRational):
            a, b, c, d = self.re, self.im, other.re, other.im
            if not b:
                if not d:
                    return GaussRational._raw(a * c, b)
                return GaussRational._raw(a * c, a * d)
            if not d:
                return GaussRational._raw(a * c, b * c)
            return GaussRational._raw(a * c - b * d, a * d + b * c)
        if isinstance(other, (int, Rational)):
            return GaussRational._raw(self.re * other, self.im * other)
        return NotImplemented

    __rmul__ = __mul__

    def inverse(self) -> "GaussRational":
        n = self.re * self.re + self.im * self.im
        if not n:
            raise ZeroDivisionError("GaussRational division by zero")
        return GaussRational._raw(self.re / n, -self.im / n)

    def __truediv__(self, other):
        if isinstance(other, GaussRational):
            if not other.im:
                if not other.re:
                    raise ZeroDivisionError("GaussRational division by zero")
                return GaussRational._raw(self.re / other.re, self.im / other.re)
            return self * other.inverse()
        if isinstance(other, (int, Rational)):
            if not other:
                raise ZeroDivisionError("GaussRational division by zero")
            return GaussRational._raw(self.re / other, self.im / other)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Rational)):
            return self.inverse() * other
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result, base = ONE, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conj(self) -> "GaussRational":
        return GaussRational._raw(self.re, -self.im)

    def norm(self) -> Fraction:
        """z * conj(z), a nonnegative rational."""
        return self.re * self.re + self.im * self.im

    # -- comparisons ----------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, GaussRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Rational)):
            return not self.im and self.re == other
        return NotImplemented

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def is_real(self) -> bool:
        return not self.im

    # -- text -----------------------------------------------------------------
    def __repr__(self):
        return f"GaussRational({str(self.re)!r}, {str(self.im)!r})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        im = "i" if abs(self.im) == 1 else f"{abs(self.im)}*i"
        if not self.re:
            return im if self.im > 0 else f"-{im}"
        sign = "+" if self.im > 0 else "-"
        return f"({self.re}{sign}{im})"

    def to_json(self) -> dict:
        return {"re": _fmt(self.re), "im": _fmt(self.im)}

    @classmethod
    def from_json(cls, obj: dict) -> "GaussRational":
        return cls(Fraction(obj["re"]), Fraction(obj["im"]))


def _fmt(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


ZERO = GaussRational(0)
ONE = GaussRational(1)
I = GaussRational(0, 1)


def to_gr(x) -> GaussRational:
    if isinstance(x, GaussRational):
        return x
    return GaussRational(x)


def parse_rational(token: str) -> Fraction:
    """Parse '3', '-1/2' into a Fraction; raises ValueError naming the token."""
    try:
        return Fraction(token.strip())
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"not a rational number: {token!r}") from None
