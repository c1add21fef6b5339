"""Flattening u -> u^flat from U(n-bar) into U(k), and Omega_C: U(k) -> U(sl2).

The induced module U(g) (x)_{U(b)} C_{-(lam+rho)} is, as a U(k)-module, free of
rank one on the vacuum (g = k + a + n). Rewriting u in the PBW order
k < Cartan < n, evaluating Cartan factors against the character and dropping
terms that end in n leaves the unique u^flat in U(k) with
u^flat (x) 1 = u (x) 1. For the split form g_0 = sl(3,R) the conjugation tau
fixes u^flat, so no further step is applied.
"""

from __future__ import annotations

from .algebra import (
    ALPHA, BETA, CARTAN_IDX, IWASAWA, N_IDX, RHO, STANDARD, U_IWASAWA, U_SL2,
    UeaElement, Weight,
)
from .scalars import ZERO

__all__ = ["flatten", "to_sl2", "evaluate_induced", "K_IDX", "basis_change_images",
           "iwasawa_determinant_nonzero"]

K_IDX = (0, 1, 2)  # Z+, Z-, Z0 in IWASAWA
_CARTAN_ROOT = {CARTAN_IDX[0]: ALPHA, CARTAN_IDX[1]: BETA}


def iwasawa_determinant_nonzero() -> bool:
    """The mixed basis k + a + n is a basis of sl(3); checked on import."""
    try:
        for m in STANDARD.matrices:
            IWASAWA.coords(m)
    except ValueError:
        return False
    return True


if not iwasawa_determinant_nonzero():  # pragma: no cover
    raise RuntimeError("Iwasawa basis of sl(3) is degenerate")


def basis_change_images(src=STANDARD, dst=U_IWASAWA) -> list[UeaElement]:
    """Image of each ``src`` generator as a degree-one element of ``dst``."""
    return [dst.from_matrix(m) for m in src.matrices]


_STD_TO_IW = basis_change_images()


def evaluate_induced(u: UeaElement, character: Weight) -> UeaElement:
    """Project u (x) 1 in U(g) (x)_{U(b)} C_character onto U(k) (x) 1."""
    if u.algebra is not U_IWASAWA:
        u = u.substitute(U_IWASAWA, _STD_TO_IW) if u.algebra.basis is STANDARD else u.in_algebra(U_IWASAWA)
    nset = set(N_IDX)
    cartan = set(CARTAN_IDX)
    out: dict = {}
    for w, c in u.terms.items():
        if w and w[-1] in nset:
            continue
        k = len(w)
        while k and w[k - 1] in cartan:
            k -= 1
        s = c
        for idx in w[k:]:
            s = s * character.pairing(_CARTAN_ROOT[idx])
        if s:
            key = w[:k]
            v = out.get(key, ZERO) + s
            if v:
                out[key] = v
            else:
                out.pop(key)
    return UeaElement(U_IWASAWA, out, True)


def flatten(u: UeaElement, lambda_ps: Weight) -> UeaElement:
    """u^flat for u in U(n-bar), at the principal-series parameter ``lambda_ps``.

    The induced character is -(lambda_ps + rho). The result lives in
    ``U_IWASAWA`` and uses only the k-generators Z+, Z-, Z0.
    """
    if not u.generators_used() <= {0, 1, 2}:
        raise ValueError("flatten expects an element of U(n-bar)")
    return evaluate_induced(u, -(lambda_ps + RHO))


def to_sl2(k: UeaElement) -> UeaElement:
    """Relabel Z_j -> E_j (j = +, -, 0)."""
    if not k.generators_used() <= set(K_IDX):
        raise ValueError("to_sl2 expects an element of U(k)")
    # Same structure constants, so the PBW monomials carry over unchanged.
    return UeaElement(U_SL2, dict(k.terms), True)
