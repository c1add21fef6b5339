"""Terminating Gauss hypergeometric series and Euler's operator, exactly.

Everything is a finite sum of rationals: terminating 2F1 expansions, the
Euler operator D[a,b,c;x] on polynomials (and on monomials x^e with rational
exponent e), the operator T[n;t] governing the second-order kernel, and the
Chu-Vandermonde form of Gauss's evaluation at x = 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .scalars import ZERO, GaussRational, to_gr
from .su2model import PolyVector

__all__ = [
    "F21Params", "NonTerminating", "NON_TERMINATING", "f21_coefficients", "f21_truncate", "euler_apply", "euler_apply_terms",
    "t_operator_check", "gauss_at_one", "gauss_gamma_ratio", "u_poly", "v_poly", "u_params",
    "v_params", "pochhammer", "terminating_degree",
]


def _is_nonpos_int(q: Fraction) -> bool:
    return q.denominator == 1 and q <= 0


@dataclass(frozen=True)
class F21Params:
    a: Fraction
    b: Fraction
    c: Fraction

    def __post_init__(self):
        for name in "abc":
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        if _is_nonpos_int(self.c):
            raise ValueError(f"c = {self.c} is a nonpositive integer; 2F1 is undefined")


class NonTerminating:
    """Marker returned by :func:`f21_truncate` when the series is not a polynomial."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "NON_TERMINATING"

    def __bool__(self):
        return False


NON_TERMINATING = NonTerminating()


def pochhammer(x: Fraction, k: int) -> Fraction:
    out = Fraction(1)
    for j in range(k):
        out *= x + j
    return out


def terminating_degree(p: F21Params) -> int | None:
    """Degree in x of the terminating series, or None."""
    degs = [int(-v) for v in (p.a, p.b) if _is_nonpos_int(v)]
    return min(degs) if degs else None


def f21_coefficients(p: F21Params) -> list[Fraction] | None:
    deg = terminating_degree(p)
    if deg is None:
        return None
    coeffs = [Fraction(1)]
    for k in range(deg):
        coeffs.append(coeffs[-1] * (p.a + k) * (p.b + k) / ((p.c + k) * (k + 1)))
    return coeffs


def f21_truncate(p: F21Params, substitute_power: int, max_deg: int):
    """2F1[a,b,c; t^substitute_power] as a PolyVector of degree bound max_deg.

    Returns ``NON_TERMINATING`` when neither -a nor -b is a nonnegative
    integer. Raises ValueError if the polynomial does not fit in max_deg.
    """
    if substitute_power < 1:
        raise ValueError("substitute_power must be positive")
    if max_deg < 0:
        raise ValueError("max_deg must be nonnegative")
    coeffs = f21_coefficients(p)
    if coeffs is None:
        return NON_TERMINATING
    out = [ZERO] * (max_deg + 1)
    for k, c in enumerate(coeffs):
        if not c:
            continue
        e = k * substitute_power
        if e > max_deg:
            raise ValueError(f"2F1 polynomial of degree {e} exceeds max_deg {max_deg}")
        out[e] = GaussRational(c)
    return PolyVector(tuple(out), max_deg)


def euler_apply_terms(p: F21Params, f: Mapping[Fraction, object]) -> dict[Fraction, GaussRational]:
    """D[a,b,c;x] applied to sum f[e] x^e, exponents e rational.

    D x^e = e(e - 1 + c) x^(e-1) - (e(e-1) + (a+b+1)e + ab) x^e.
    """
    a, b, c = p.a, p.b, p.c
    out: dict[Fraction, GaussRational] = {}
    for e, coef in f.items():
        e = Fraction(e)
        coef = to_gr(coef)
        if not coef:
            continue
        lower = e * (e - 1 + c)
        same = -(e * (e - 1) + (a + b + 1) * e + a * b)
        for exp, k in ((e - 1, lower), (e, same)):
            if k:
                out[exp] = out.get(exp, ZERO) + coef * k
    return {e: v for e, v in out.items() if v}


def euler_apply(p: F21Params, f: PolyVector) -> PolyVector:
    terms = euler_apply_terms(p, {Fraction(k): c for k, c in enumerate(f.coeffs) if c})
    out = [ZERO] * (f.degree_bound + 1)
    for e, v in terms.items():
        if e < 0 or e.denominator != 1:  # pragma: no cover - cannot happen for polynomials
            raise AssertionError("negative exponent from a polynomial input")
        out[int(e)] = v
    return PolyVector(tuple(out), f.degree_bound)


def t_operator_check(n: int, f: PolyVector) -> PolyVector:
    """T[n;t] f = (1 - t^4) f'' + 2(n-1) t^3 f' - n(n-1) t^2 f, truncated to f's degree bound.

    Inputs from Pol_n[t] stay in Pol_n[t]; higher terms are only dropped when
    the caller passes a polynomial outside Pol_n[t].
    """
    cs = f.coeffs
    size = len(cs) + 4
    out = [ZERO] * size
    for k, c in enumerate(cs):
        if not c:
            continue
        if k >= 2:
            out[k - 2] = out[k - 2] + c * (k * (k - 1))
        top = -k * (k - 1) + 2 * (n - 1) * k - n * (n - 1)
        if top:
            out[k + 2] = out[k + 2] + c * top
    if any(out[f.degree_bound + 1:]):
        raise ValueError("T[n;t] f leaves the degree bound; f is not in Pol_n[t]")
    return PolyVector(tuple(out[: f.degree_bound + 1]), f.degree_bound)


def u_params(n: int) -> F21Params:
    return F21Params(Fraction(-n, 4), Fraction(-(n - 1), 4), Fraction(3, 4))


def v_params(n: int) -> F21Params:
    return F21Params(Fraction(-(n - 1), 4), Fraction(-(n - 2), 4), Fraction(5, 4))


def u_poly(n: int):
    """u_n(t) = 2F1[-n/4, -(n-1)/4, 3/4; t^4] in Pol_n[t], or NON_TERMINATING."""
    return f21_truncate(u_params(n), 4, n)


def v_poly(n: int):
    """v_n(t) = t 2F1[-(n-1)/4, -(n-2)/4, 5/4; t^4] in Pol_n[t], or NON_TERMINATING."""
    if n < 1:
        # t times anything is not in Pol_0[t]; the parameters do not terminate either.
        return NON_TERMINATING
    inner = f21_truncate(v_params(n), 4, n - 1)
    if inner is NON_TERMINATING:
        return inner
    return _shift(inner, n)


def _shift(p: PolyVector, n: int) -> PolyVector:
    coeffs = (ZERO,) + p.coeffs
    if len(coeffs) > n + 1:
        if any(coeffs[n + 1:]):
            raise ValueError("t * polynomial exceeds degree bound")
        coeffs = coeffs[: n + 1]
    return PolyVector(coeffs + (ZERO,) * (n + 1 - len(coeffs)), n)


def gauss_at_one(p: F21Params) -> GaussRational:
    """2F1[a,b,c;1] as the exact finite sum; requires -a a nonnegative integer."""
    if not _is_nonpos_int(p.a):
        raise ValueError("gauss_at_one needs a terminating parameter a = -k")
    return GaussRational(sum(f21_coefficients(p), Fraction(0)))


def gauss_gamma_ratio(p: F21Params) -> Fraction:
    """Gamma(c)Gamma(c-a-b) / (Gamma(c-a)Gamma(c-b)) for a = -k, telescoped.

    Gamma(c)/Gamma(c+k) = 1/(c)_k and Gamma(c-b+k)/Gamma(c-b) = (c-b)_k.
    """
    if not _is_nonpos_int(p.a):
        raise ValueError("telescoping needs a = -k")
    k = int(-p.a)
    return pochhammer(p.c - p.b, k) / pochhammer(p.c, k)
