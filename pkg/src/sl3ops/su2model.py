"""The polynomial model (pi_n, Pol_n[t]) of SU(2) irreducibles.

Polynomials of degree <= n are coefficient vectors on the monomial basis
1, t, ..., t^n. Operators are :class:`ExactMatrix` instances acting on column
vectors, so ``M[j, k]`` is the coefficient of t^j in M(t^k).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Sequence

from .algebra import U_SL2, UeaElement
from .linalg import ExactMatrix, nullspace
from .qmchar import Q8, Q8Element
from .scalars import ONE, ZERO, GaussRational, to_gr

__all__ = [
    "PolyVector", "dpi_generator", "dpi_matrix", "sol_space", "common_sol",
    "group_action_matrix", "restricted_action", "poly_from_coeffs", "q8_action_on",
]


@dataclass(frozen=True)
class PolyVector:
    coeffs: tuple
    degree_bound: int

    def __post_init__(self):
        if len(self.coeffs) != self.degree_bound + 1:
            raise ValueError("PolyVector length must be degree_bound + 1")

    @classmethod
    def of(cls, coeffs: Sequence, degree_bound: int | None = None) -> "PolyVector":
        coeffs = [to_gr(c) for c in coeffs]
        n = len(coeffs) - 1 if degree_bound is None else degree_bound
        if len(coeffs) > n + 1:
            if any(coeffs[n + 1:]):
                raise ValueError("polynomial exceeds degree bound")
            coeffs = coeffs[: n + 1]
        coeffs = coeffs + [ZERO] * (n + 1 - len(coeffs))
        return cls(tuple(coeffs), n)

    @property
    def degree(self) -> int:
        nz = [k for k, c in enumerate(self.coeffs) if c]
        return nz[-1] if nz else -1

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __str__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append(f"-{mono}")
            else:
                terms.append(f"{c}*{mono}")
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"


def poly_from_coeffs(coeffs: Sequence, n: int) -> PolyVector:
    return PolyVector.of(coeffs, n)


def dpi_generator(name: str, n: int) -> ExactMatrix:
    """dpi_n(E+) = -d/dt, dpi_n(E-) = -n t + t^2 d/dt, dpi_n(E0) = n - 2 t d/dt."""
    size = n + 1
    rows: list[dict] = [dict() for _ in range(size)]
    for k in range(size):
        if name == "E+":
            if k:
                rows[k - 1][k] = GaussRational(-k)
        elif name == "E-":
            if k + 1 <= n:
                rows[k + 1][k] = GaussRational(k - n)
        elif name == "E0":
            if n - 2 * k:
                rows[k][k] = GaussRational(n - 2 * k)
        else:
            raise ValueError(f"unknown sl2 generator {name!r}")
    return ExactMatrix(size, size, rows)


def dpi_matrix(u: UeaElement, n: int) -> ExactMatrix:
    """Matrix of dpi_n(u) for u in U(sl2); words act as composed operators."""
    if u.algebra is not U_SL2:
        raise ValueError("dpi_matrix expects an element of U(sl2)")
    gens = [dpi_generator(name, n) for name in U_SL2.basis.names]
    out = ExactMatrix.zeros(n + 1)
    for w, c in u.terms.items():
        term = ExactMatrix.identity(n + 1)
        for k in w:
            term = term @ gens[k]
        out = out + term.scale(c)
    return out


def _kernel(rows: list[dict], n: int) -> list[PolyVector]:
    return [PolyVector(tuple(v), n) for v in nullspace(rows, n + 1)]


def sol_space(u_flat: UeaElement, n: int) -> list[PolyVector]:
    """Kernel of dpi_n(u_flat) in reduced echelon form."""
    return _kernel(list(dpi_matrix(u_flat, n).rows), n)


def common_sol(u_flats: Sequence[UeaElement], n: int) -> list[PolyVector]:
    if not u_flats:
        raise ValueError("common_sol needs at least one operator")
    rows: list[dict] = []
    for u in u_flats:
        rows.extend(dpi_matrix(u, n).rows)
    return _kernel(rows, n)


def _inverse2(m):
    (a, b), (c, d) = m
    det = a * d - b * c
    return ((d / det, -b / det), (-c / det, a / det))


def _powers(x: GaussRational, k: int) -> list[GaussRational]:
    out = [ONE]
    for _ in range(k):
        out.append(out[-1] * x)
    return out


def _binomial_poly(p0: GaussRational, p1: GaussRational, k: int, pw0, pw1) -> dict[int, GaussRational]:
    """Nonzero coefficients of (p0 + p1 t)^k from precomputed power tables."""
    if not p0:
        return {k: pw1[k]}
    if not p1:
        return {0: pw0[k]}
    return {j: GaussRational(comb(k, j)) * pw1[j] * pw0[k - j] for j in range(k + 1)}


def group_action_matrix(g: Q8Element | Sequence, n: int) -> ExactMatrix:
    """Matrix of pi_n(g): p(t) -> (ct+d)^n p((at+b)/(ct+d)), (a b; c d) = g^{-1}.

    t^k maps to (at+b)^k (ct+d)^(n-k).
    """
    m = g.matrix2 if isinstance(g, Q8Element) else tuple(tuple(r) for r in g)
    return _group_action_matrix(m, n)


@lru_cache(maxsize=1024)
def _group_action_matrix(m, n: int) -> ExactMatrix:
    (a, b), (c, d) = _inverse2(m)
    pa, pb, pc, pd = (_powers(x, n) for x in (a, b, c, d))
    cols = []
    for k in range(n + 1):
        left = _binomial_poly(b, a, k, pb, pa)
        right = _binomial_poly(d, c, n - k, pd, pc)
        col: dict[int, GaussRational] = {}
        for i, x in left.items():
            for j, y in right.items():
                col[i + j] = col.get(i + j, ZERO) + x * y
        cols.append(col)
    return ExactMatrix.from_columns(cols, n + 1)


def restricted_action(action: ExactMatrix, basis: Sequence[PolyVector]) -> ExactMatrix:
    """Matrix of ``action`` on span(basis) in basis coordinates.

    ``basis`` must be in reduced echelon form; coordinates are read off at the
    pivot positions. Raises ValueError if the span is not invariant.
    """
    if not basis:
        return ExactMatrix(0, 0)
    pivots = [next(j for j, c in enumerate(v.coeffs) if c) for v in basis]
    cols = []
    for v in basis:
        img = action.apply(v.coeffs)
        coords = [img[p] for p in pivots]
        recon = [ZERO] * len(img)
        for cf, bv in zip(coords, basis):
            if cf:
                for j, x in enumerate(bv.coeffs):
                    if x:
                        recon[j] = recon[j] + cf * x
        if recon != img:
            raise ValueError("subspace is not invariant under the action")
        cols.append({i: c for i, c in enumerate(coords) if c})
    return ExactMatrix.from_columns(cols, len(basis))


def q8_action_on(basis: Sequence[PolyVector], n: int) -> dict[Q8Element, ExactMatrix]:
    return {g: restricted_action(group_action_matrix(g, n), basis) for g in Q8}
