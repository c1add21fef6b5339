"""Verma modules M(lam) of sl(3), singular vectors and BGG linkage.

M(lam) has highest weight lam - rho and is identified with U(n-bar) through
u -> u (x) 1. The U(g)-action normal-orders in n-bar < Cartan < n, evaluates
Cartan factors next to the vacuum and drops any term ending in n.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from .algebra import (
    ALPHA, BETA, CARTAN_IDX, N_BAR_IDX, N_IDX, POSITIVE_ROOTS, RHO, STANDARD, U_VERMA,
    UeaElement, Weight, monomial_weight,
)
from .linalg import nullspace
from .scalars import ONE, ZERO, GaussRational

__all__ = [
    "VermaVector", "LinkageChain", "verma_act", "singular_vectors", "linked",
    "classify_targets", "normalize_line", "CHAIN_CAP", "reachable_weights",
]

CHAIN_CAP = 6

_X, _Y, _Z = N_BAR_IDX
# Coroots H_alpha, H_beta as Cartan basis elements, paired with the simple roots.
_CARTAN_ROOT = {CARTAN_IDX[0]: ALPHA, CARTAN_IDX[1]: BETA}


@dataclass(frozen=True)
class VermaVector:
    """``element (x) 1_{lam - rho}`` in M(lam)."""

    element: UeaElement
    lam: Weight

    def __post_init__(self):
        if not self.element.generators_used() <= set(N_BAR_IDX):
            raise ValueError("Verma vectors are represented by elements of U(n-bar)")

    @property
    def highest_weight(self) -> Weight:
        return self.lam - RHO

    def __str__(self):
        return f"({self.element}) (x) 1_{self.highest_weight}"


@dataclass(frozen=True)
class LinkageChain:
    start: Weight
    steps: tuple[Weight, ...]
    intermediates: tuple[Weight, ...]

    @property
    def end(self) -> Weight:
        return self.intermediates[-1] if self.intermediates else self.start

    def __len__(self):
        return len(self.steps)


def _cartan_value(idx: int, hw: Weight) -> Fraction:
    return hw.pairing(_CARTAN_ROOT[idx])


def verma_act(u: UeaElement, v: VermaVector) -> VermaVector:
    if u.algebra is not U_VERMA:
        u = u.in_algebra(U_VERMA)
    hw = v.highest_weight
    product = u * v.element
    out: dict = {}
    cartan = set(CARTAN_IDX)
    nset = set(N_IDX)
    for w, c in product.terms.items():
        if w and w[-1] in nset:
            continue
        k = len(w)
        while k and w[k - 1] in cartan:
            k -= 1
        scalar = c
        for idx in w[k:]:
            scalar = scalar * _cartan_value(idx, hw)
            if not scalar:
                break
        if scalar:
            key = w[:k]
            s = out.get(key, ZERO) + scalar
            if s:
                out[key] = s
            else:
                out.pop(key)
    return VermaVector(UeaElement(U_VERMA, out, True), v.lam)


def _depth(mu: Weight) -> tuple[int, int] | None:
    """(a, b) with mu = -(a alpha + b beta), a, b nonnegative integers; else None."""
    a, b = -mu.a, -mu.b
    if a.denominator != 1 or b.denominator != 1 or a < 0 or b < 0:
        return None
    return int(a), int(b)


def _monomials(a: int, b: int) -> list[tuple[int, ...]]:
    """PBW monomials X^i Y^j Z^k of weight -(a alpha + b beta)."""
    out = []
    for k in range(min(a, b) + 1):
        out.append((_X,) * (a - k) + (_Y,) * (b - k) + (_Z,) * k)
    return out


def normalize_line(element: UeaElement) -> UeaElement:
    """Canonical representative of the line C*element.

    Scale so the lexicographically largest exponent vector has coefficient 1;
    when every coefficient is then rational, rescale to coprime integers with
    that leading coefficient positive.
    """
    if not element:
        return element
    lead = max(element.terms, key=element.exponents)
    e = element / element.terms[lead]
    coeffs = list(e.terms.values())
    if all(c.is_real() for c in coeffs):
        den = lcm(*(c.re.denominator for c in coeffs))
        ints = [int(c.re * den) for c in coeffs]
        g = gcd(*ints)
        e = e * Fraction(den, g)
    return e


def singular_vectors(lam: Weight, nu: Weight) -> list[VermaVector]:
    """Basis of singular vectors of weight nu - rho in M(lam)."""
    depth = _depth(nu - lam)
    if depth is None:
        return []
    monos = _monomials(*depth)
    e12 = U_VERMA.gen("E12")
    e23 = U_VERMA.gen("E23")
    # One equation per (raising operator, resulting monomial); unknowns index monos.
    rows: dict[tuple, dict[int, GaussRational]] = {}
    for j, m in enumerate(monos):
        v = VermaVector(UeaElement(U_VERMA, {m: ONE}, True), lam)
        for tag, op in (("a", e12), ("b", e23)):
            for w, c in verma_act(op, v).element.terms.items():
                rows.setdefault((tag, w), {})[j] = c
    kernel = nullspace(list(rows.values()), len(monos))
    out = []
    for vec in kernel:
        el = UeaElement(U_VERMA, {monos[j]: c for j, c in enumerate(vec) if c}, True)
        out.append(VermaVector(normalize_line(el), lam))
    return out


def _is_nonneg_int(q: Fraction) -> bool:
    return q.denominator == 1 and q >= 0


def linked(lam: Weight, nu: Weight, cap: int = CHAIN_CAP) -> LinkageChain | None:
    """Shortest chain of positive-root reflections linking lam to nu, if any."""
    if lam == nu:
        return LinkageChain(lam, (), ())
    seen = {lam}
    queue = deque([(lam, (), ())])
    while queue:
        cur, steps, mids = queue.popleft()
        if len(steps) >= cap:
            continue
        for root in POSITIVE_ROOTS:
            k = cur.pairing(root)
            if not _is_nonneg_int(k) or k == 0:
                # k == 0 is a valid link step but fixes cur; it never reaches a new weight.
                continue
            nxt = cur - root * k
            if nxt in seen:
                continue
            chain = (steps + (root,), mids + (nxt,))
            if nxt == nu:
                return LinkageChain(lam, *chain)
            seen.add(nxt)
            queue.append((nxt,) + chain)
    return None


def reachable_weights(lam: Weight, cap: int = CHAIN_CAP) -> list[Weight]:
    """All nu != lam that lam links to within ``cap`` steps."""
    seen = {lam}
    frontier = [lam]
    for _ in range(cap):
        nxt_frontier = []
        for cur in frontier:
            for root in POSITIVE_ROOTS:
                k = cur.pairing(root)
                if _is_nonneg_int(k) and k:
                    nxt = cur - root * k
                    if nxt not in seen:
                        seen.add(nxt)
                        nxt_frontier.append(nxt)
        frontier = nxt_frontier
    seen.discard(lam)
    return sorted(seen)


def sweep_bound(lam: Weight) -> int:
    return 2 * max(1, abs(lam.pairing(ALPHA)), abs(lam.pairing(BETA))).__ceil__() + 2


def classify_targets(lam: Weight) -> list[Weight]:
    """All nu != lam such that M(lam) has a singular vector of weight nu - rho."""
    bound = sweep_bound(lam)
    found = set()
    for a in range(bound + 1):
        for b in range(bound + 1):
            if a == b == 0:
                continue
            nu = lam - ALPHA * a - BETA * b
            if singular_vectors(lam, nu):
                found.add(nu)
    for nu in reachable_weights(lam):
        if singular_vectors(lam, nu):
            found.add(nu)
        else:  # pragma: no cover - would contradict the BGG-Verma theorem
            raise AssertionError(f"linkage {lam} -> {nu} without a singular vector")
    return sorted(found)


def vector_weight(v: VermaVector) -> Weight:
    """Weight of u (x) 1 relative to the highest weight, i.e. weight of u."""
    ws = {monomial_weight(w, STANDARD) for w in v.element.terms}
    if len(ws) != 1:
        raise ValueError("vector is not a weight vector")
    return ws.pop()
