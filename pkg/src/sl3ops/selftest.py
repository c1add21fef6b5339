"""Built-in self test: golden values of the two worked cases plus quick property checks.

``run_selftest`` takes the character table as a parameter so a corrupted table
can be injected as a negative control.
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from itertools import product
from typing import Callable

from .algebra import (
    ALPHA, BETA, RHO, RHO_TILDE, STANDARD, U_IWASAWA, U_SL2, U_STD, Weight, commutator,
    monomial_weight,
)
from .hypergeo import NON_TERMINATING, t_operator_check, u_poly, v_poly
from .kflat import flatten, to_sl2
from .linalg import ExactMatrix
from .pipeline import build_operators, infer_pattern, ktype_table
from .qmchar import DEFAULT_TABLE, Q8, CharacterTable, ad_character, decompose_mrep, hom_multiplicity, q8_mul
from .scalars import I, GaussRational
from .su2model import (
    PolyVector, common_sol, dpi_generator, dpi_matrix, group_action_matrix, q8_action_on, sol_space,
)
from .verma import VermaVector, classify_targets, linked, singular_vectors, verma_act

__all__ = ["run_selftest", "CHECKS"]


class _Ctx:
    def __init__(self, table: CharacterTable):
        self.table = table
        self._ops = {}

    def ops(self, lam: Weight):
        if lam not in self._ops:
            self._ops[lam] = build_operators(lam, self.table)
        return self._ops[lam]

    def op(self, lam: Weight, label: str):
        return next(r for r in self.ops(lam) if r.label == label)

    def irrep(self, label: str):
        return self.table.by_label(label)


def _w(*names):
    return U_STD.word(*names)


def _poly(*coeffs, n=None):
    return PolyVector.of(coeffs, n)


def _expect(got, want, what: str):
    if got != want:
        raise AssertionError(f"{what}: expected {want}, got {got}")


def _sl2(u):
    return to_sl2(u)


X_FLAT = flatten(_w("X"), -RHO)
Y_FLAT = flatten(_w("Y"), -RHO)
XCY_FLAT = flatten(_w("X", "Y") + _w("Y", "X"), -RHO_TILDE)


# ---------------------------------------------------------------------------
# Golden values
# ---------------------------------------------------------------------------

def g_weight_x(ctx):
    _expect(monomial_weight((STANDARD.index("X"),)), -ALPHA, "weight of X")


def g_e12_kills_x(ctx):
    v = verma_act(_w("E12"), VermaVector(_w("X"), RHO))
    _expect(v.element, U_STD.zero(), "E12 . X in M(rho)")


def g_sv_rho_beta(ctx):
    _expect([v.element for v in singular_vectors(RHO, BETA)], [_w("X")], "singular vectors M(rho), beta")


def g_sv_rhotilde(ctx):
    got = [v.element for v in singular_vectors(RHO_TILDE, -RHO_TILDE)]
    _expect(got, [2 * _w("X", "Y") + _w("Z")], "singular vectors M(rho~), -rho~")


def g_sv_rho_minus_rho(ctx):
    got = [v.element for v in singular_vectors(RHO, -RHO)]
    _expect(got, [_w("X", "Y", "Y", "X")], "singular vectors M(rho), -rho")


def g_linked_rho(ctx):
    if linked(RHO, -RHO) is None:
        raise AssertionError("rho and -rho are not linked")


def g_targets_rho(ctx):
    _expect(set(classify_targets(RHO)), {ALPHA, -ALPHA, BETA, -BETA, -RHO}, "targets of rho")


def g_targets_rhotilde(ctx):
    _expect(classify_targets(RHO_TILDE), [-RHO_TILDE], "targets of rho~")


def g_characters(ctx):
    for u, want in ((_w("X"), "(+,-)"), (2 * _w("X", "Y") + _w("Z"), "(-,-)"),
                    (_w("X", "Y", "Y", "X"), "(+,+)")):
        _expect(ad_character(u, ctx.table).label, want, f"character of {u}")


def g_mrep(ctx):
    basis = sol_space(_sl2(XCY_FLAT), 5)
    _expect(decompose_mrep(q8_action_on(basis, 5), ctx.table), Counter({"H": 1}), "Sol_XcY(5)")
    basis = sol_space(_sl2(X_FLAT), 2)
    _expect(decompose_mrep(q8_action_on(basis, 2), ctx.table), Counter({"(+,-)": 1}), "Sol_X(2)")


def g_hom(ctx):
    _expect(hom_multiplicity(Counter({"(+,-)": 1}), ctx.irrep("(+,-)")), 1, "Hom((+,-), (+,-))")
    _expect(hom_multiplicity(Counter({"H": 1}), ctx.irrep("(+,+)")), 0, "Hom(H, (+,+))")


def g_flatten(ctx):
    zp, zm = U_IWASAWA.gen("Z+"), U_IWASAWA.gen("Z-")
    half = Fraction(1, 2)
    for lam in (-RHO, -RHO_TILDE, Weight(Fraction(1, 3), Fraction(-2, 7))):
        _expect(flatten(_w("X"), lam), (zp + zm) * (I * half), f"X flat at {lam}")
        _expect(flatten(_w("Y"), lam), (zp - zm) * half, f"Y flat at {lam}")
    _expect(XCY_FLAT, (zp * zp - zm * zm) * (I * half), "(XY+YX) flat at -rho~")


def g_to_sl2(ctx):
    _expect(to_sl2(U_IWASAWA.gen("Z+")), U_SL2.gen("E+"), "Z+ -> E+")


def g_dpi_eplus(ctx):
    m = dpi_generator("E+", 1)
    _expect(m.apply([0, 1]), [GaussRational(-1), GaussRational(0)], "dpi_1(E+) t")
    _expect(m.apply([1, 0]), [GaussRational(0), GaussRational(0)], "dpi_1(E+) 1")


def _closed_x(n):
    # -(i/2)((1 - t^2) d/dt + n t) on t^k
    rows = [dict() for _ in range(n + 1)]
    c = -I / 2
    for k in range(n + 1):
        if k:
            rows[k - 1][k] = c * k
        if k + 1 <= n:
            rows[k + 1][k] = c * (n - k)
    return ExactMatrix(n + 1, n + 1, [{j: v for j, v in r.items() if v} for r in rows])


def g_dpi_x2(ctx):
    _expect(dpi_matrix(_sl2(X_FLAT), 2), _closed_x(2), "dpi_2(X flat)")


def g_sol_x(ctx):
    _expect(sol_space(_sl2(X_FLAT), 2), [_poly(1, 0, -1)], "Sol_X(2)")
    _expect(sol_space(_sl2(X_FLAT), 3), [], "Sol_X(3)")


def g_group_action(ctx):
    m1 = group_action_matrix(next(g for g in Q8 if g.label == "+m1"), 2)
    m2 = group_action_matrix(next(g for g in Q8 if g.label == "+m2"), 2)
    want1 = ExactMatrix.from_dense([[-1, 0, 0], [0, 1, 0], [0, 0, -1]])
    want2 = ExactMatrix.from_dense([[0, 0, 1], [0, -1, 0], [1, 0, 0]])
    _expect(m1, want1, "pi_2(m~1)")
    _expect(m2, want2, "pi_2(m~2)")


def g_common(ctx):
    ops = [_sl2(X_FLAT), _sl2(Y_FLAT)]
    _expect(common_sol(ops, 0), [_poly(1)], "Sol_{X,Y}(0)")
    _expect(common_sol(ops, 2), [], "Sol_{X,Y}(2)")


def g_hypergeo(ctx):
    if u_poly(3) is not NON_TERMINATING:
        raise AssertionError("u_3 should not terminate")
    v5 = v_poly(5)
    _expect(t_operator_check(5, v5), _poly(0, 0, 0, 0, 0, 0), "T[5] v_5")


def g_build_rho(ctx):
    got = {r.label: r.chi.label for r in ctx.ops(-RHO)}
    want = {"X": "(+,-)", "Y": "(-,+)", "Y2X": "(+,-)", "X2Y": "(-,+)", "XY2X": "(+,+)"}
    _expect(got, want, "operators at -rho")


def g_build_rhotilde(ctx):
    got = [(r.u_bar, r.chi.label) for r in ctx.ops(-RHO_TILDE)]
    _expect(got, [(2 * _w("X", "Y") + _w("Z"), "(-,-)")], "operators at -rho~")


def g_ktypes(ctx):
    x = ctx.op(-RHO, "X").u_flat
    y = ctx.op(-RHO, "Y").u_flat
    xcy = ctx.op(-RHO_TILDE, "XcY").u_flat
    t = ktype_table([x], -RHO, ctx.irrep("(+,+)"), 12, table=ctx.table)
    _expect(t.nonzero(), [0, 4, 8, 12], "X, (+,+)")
    _expect({r.multiplicity for r in t.rows if r.multiplicity}, {1}, "X, (+,+) multiplicities")
    t = ktype_table([xcy], -RHO_TILDE, ctx.irrep("H"), 13, table=ctx.table)
    _expect(t.nonzero(), [1, 5, 9, 13], "XcY, H")
    t = ktype_table([x, y], -RHO, ctx.irrep("(+,+)"), 12, table=ctx.table)
    _expect(t.nonzero(), [0], "X,Y, (+,+)")


def g_patterns(ctx):
    x = ctx.op(-RHO, "X").u_flat
    xcy = ctx.op(-RHO_TILDE, "XcY").u_flat
    p = infer_pattern(ktype_table([x], -RHO, ctx.irrep("(+,+)"), 20, table=ctx.table))
    _expect([(g.residue, g.multiplicity) for g in p.progressions], [(0, 1)], "pattern X, (+,+)")
    _expect(p.exceptions, (), "pattern X, (+,+) exceptions")
    p = infer_pattern(ktype_table([xcy], -RHO_TILDE, ctx.irrep("(-,+)"), 20, table=ctx.table))
    _expect((p.progressions, p.exceptions), ((), ()), "pattern XcY, (-,+)")


# ---------------------------------------------------------------------------
# Properties
# ---------------------------------------------------------------------------

def p_jacobi(ctx):
    ms = STANDARD.matrices
    for a, b, c in product(range(8), repeat=3):
        s = [commutator(ms[a], commutator(ms[b], ms[c])), commutator(ms[b], commutator(ms[c], ms[a])),
             commutator(ms[c], commutator(ms[a], ms[b]))]
        tot = tuple(tuple(s[0][i][j] + s[1][i][j] + s[2][i][j] for j in range(3)) for i in range(3))
        if any(x for row in tot for x in row):
            raise AssertionError(f"Jacobi fails on {STANDARD.names[a]}, {STANDARD.names[b]}, {STANDARD.names[c]}")


def p_pbw_confluence(ctx):
    for word in (("E13", "X", "Y"), ("E12", "E23", "Z", "X"), ("Y", "E12", "X", "Hb")):
        u = U_STD.word(*word)
        # Bracketing the product differently must give the same normal form.
        left = U_STD.word(*word[:2]) * U_STD.word(*word[2:])
        right = U_STD.word(word[0]) * U_STD.word(*word[1:])
        _expect(left, u, f"PBW {word} (left split)")
        _expect(right, u, f"PBW {word} (right split)")


def p_orthogonality(ctx):
    irr = ctx.table.irreps
    for a in irr:
        for b in irr:
            s = sum((a.character(g) * b.character(g).conj() for g in Q8), GaussRational(0)) / 8
            _expect(s, GaussRational(1 if a is b else 0), f"<{a.label},{b.label}>")


def p_multiplicative(ctx):
    for n in range(7):
        for g in Q8:
            for h in Q8:
                _expect(group_action_matrix(g, n) @ group_action_matrix(h, n),
                        group_action_matrix(q8_mul(g, h), n), f"pi_{n}({g}) pi_{n}({h})")


def p_sl2(ctx):
    for n in range(11):
        ep, em, e0 = (dpi_generator(s, n) for s in ("E+", "E-", "E0"))
        _expect(ep @ em - em @ ep, e0, f"[E+,E-] at n={n}")
        _expect(e0 @ ep - ep @ e0, ep.scale(2), f"[E0,E+] at n={n}")
        _expect(e0 @ em - em @ e0, em.scale(-2), f"[E0,E-] at n={n}")


def p_kernels(ctx):
    for u in (X_FLAT, Y_FLAT, XCY_FLAT):
        for n in range(13):
            m = dpi_matrix(_sl2(u), n)
            basis = sol_space(_sl2(u), n)
            for v in basis:
                if any(m.apply(v.coeffs)):
                    raise AssertionError(f"kernel vector {v} of {u} at n={n} is not annihilated")
            q8_action_on(basis, n)  # raises unless span(basis) is Q8-stable


CHECKS: list[tuple[str, Callable]] = [
    ("weight of X", g_weight_x),
    ("E12 kills X in M(rho)", g_e12_kills_x),
    ("singular vector X", g_sv_rho_beta),
    ("singular vector XY+YX", g_sv_rhotilde),
    ("singular vector XY^2X", g_sv_rho_minus_rho),
    ("linkage rho -> -rho", g_linked_rho),
    ("targets at rho", g_targets_rho),
    ("targets at rho~", g_targets_rhotilde),
    ("Ad(M) characters", g_characters),
    ("M~-decompositions", g_mrep),
    ("Hom multiplicities", g_hom),
    ("flattenings", g_flatten),
    ("k to sl2", g_to_sl2),
    ("dpi(E+)", g_dpi_eplus),
    ("dpi_2(X flat)", g_dpi_x2),
    ("Sol_X", g_sol_x),
    ("pi_n(m~j)", g_group_action),
    ("common Sol_{X,Y}", g_common),
    ("hypergeometric goldens", g_hypergeo),
    ("operators at -rho", g_build_rho),
    ("operators at -rho~", g_build_rhotilde),
    ("K-type tables", g_ktypes),
    ("pattern inference", g_patterns),
    ("property: Jacobi", p_jacobi),
    ("property: PBW confluence", p_pbw_confluence),
    ("property: character orthogonality", p_orthogonality),
    ("property: pi_n multiplicative", p_multiplicative),
    ("property: sl2 relations", p_sl2),
    ("property: kernels and Q8-stability", p_kernels),
]


def run_selftest(table: CharacterTable = DEFAULT_TABLE) -> tuple[int, str]:
    """Run every check; returns (exit code, report text)."""
    ctx = _Ctx(table)
    lines = []
    first_failure = None
    for name, fn in CHECKS:
        try:
            fn(ctx)
        except Exception as exc:  # a crash is a failure of that check
            lines.append(f"FAIL {name}: {exc}")
            first_failure = first_failure or name
        else:
            lines.append(f"ok   {name}")
    passed = sum(1 for ln in lines if ln.startswith("ok"))
    if first_failure:
        lines.append(f"selftest: {passed}/{len(CHECKS)} passed; first failure: {first_failure}")
    else:
        lines.append(f"selftest: {passed}/{len(CHECKS)} passed")
    return (1 if first_failure else 0), "\n".join(lines) + "\n"
