"""Independent reference implementations used by the tests.

Operators are built from their closed forms by acting on monomials
directly, never through the sl(2) generator matrices of the package.
"""

from fractions import Fraction

from sl3ops.linalg import ExactMatrix
from sl3ops.scalars import I, GaussRational


def _d(p):
    return {k - 1: c * k for k, c in p.items() if k}


def _mul_t(p, j, s=1):
    return {k + j: c * s for k, c in p.items()}


def _add(*ps):
    out = {}
    for p in ps:
        for k, c in p.items():
            out[k] = out.get(k, GaussRational(0)) + c
    return {k: c for k, c in out.items() if c}


def operator_matrix(op, n):
    """Matrix of the polynomial operator ``op`` (dict -> dict) on Pol_n[t]."""
    cols = []
    for k in range(n + 1):
        img = op({k: GaussRational(1)})
        assert all(0 <= e <= n for e in img), "operator leaves Pol_n[t]"
        cols.append(img)
    return ExactMatrix.from_columns(cols, n + 1)


def x_flat_closed(n):
    # -(i/2)((1 - t^2) d/dt + n t)
    def op(p):
        dp = _d(p)
        inner = _add(dp, _mul_t(dp, 2, -1), _mul_t(p, 1, n))
        return {k: c * (-I / 2) for k, c in inner.items()}
    return operator_matrix(op, n)


def y_flat_closed(n):
    # -(1/2)((1 + t^2) d/dt - n t)
    def op(p):
        dp = _d(p)
        inner = _add(dp, _mul_t(dp, 2), _mul_t(p, 1, -n))
        return {k: c * GaussRational(Fraction(-1, 2)) for k, c in inner.items()}
    return operator_matrix(op, n)


def t_closed(n):
    # (1 - t^4) d^2/dt^2 + 2(n-1) t^3 d/dt - n(n-1) t^2
    def op(p):
        d1 = _d(p)
        d2 = _d(d1)
        return _add(d2, _mul_t(d2, 4, -1), _mul_t(d1, 3, 2 * (n - 1)), _mul_t(p, 2, -n * (n - 1)))
    return operator_matrix(op, n)


def xcy_flat_closed(n):
    return t_closed(n).scale(I / 2)


def q8_closed(label, n):
    """pi_n(+-m~_j) from the closed substitution formulas.

    m~3 acts by p(t) -> (-i t)^n p(1/t), i.e. pi_n(m~1) pi_n(m~2).
    """
    sign = -1 if label[0] == "-" else 1
    j = int(label[-1])
    cols = []
    for k in range(n + 1):
        if j == 0:
            col = {k: GaussRational(1)}
        elif j == 1:
            col = {k: I ** n * (-1) ** k}
        elif j == 2:
            col = {n - k: GaussRational((-1) ** k)}
        else:
            col = {n - k: (-I) ** n}
        cols.append({e: c * sign ** n for e, c in col.items()})
    return ExactMatrix.from_columns(cols, n + 1)
