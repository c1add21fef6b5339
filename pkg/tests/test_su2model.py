import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import q8_closed, x_flat_closed, xcy_flat_closed, y_flat_closed
from sl3ops.algebra import U_SL2
from sl3ops.hypergeo import u_poly
from sl3ops.linalg import ExactMatrix
from sl3ops.qmchar import Q8, Q8_BY_LABEL, q8_mul
from sl3ops.scalars import I, GaussRational
from sl3ops.su2model import (
    PolyVector, common_sol, dpi_generator, dpi_matrix, group_action_matrix, q8_action_on,
    restricted_action, sol_space,
)

EP, EM, E0 = (U_SL2.gen(n) for n in ("E+", "E-", "E0"))


def poly(*c, n=None):
    return PolyVector.of(c, n)


def test_dpi_examples():
    m = dpi_generator("E+", 1)
    assert m.apply([0, 1]) == [-1, 0]
    assert m.apply([1, 0]) == [0, 0]
    assert dpi_matrix(E0, 2) == ExactMatrix.from_dense([[2, 0, 0], [0, 0, 0], [0, 0, -2]])


def test_unknown_generator():
    with pytest.raises(ValueError):
        dpi_generator("E7", 3)


@pytest.mark.parametrize("n", range(21))
def test_sl2_relations(n):
    ep, em, e0 = (dpi_matrix(g, n) for g in (EP, EM, E0))
    assert ep @ em - em @ ep == e0
    assert e0 @ ep - ep @ e0 == ep.scale(2)
    assert e0 @ em - em @ e0 == em.scale(-2)


def test_words_compose_as_operators():
    for n in (3, 6):
        assert dpi_matrix(EP * EM, n) == dpi_matrix(EP, n) @ dpi_matrix(EM, n)
        assert dpi_matrix(EM * EP, n) == dpi_matrix(EM, n) @ dpi_matrix(EP, n)


@pytest.mark.parametrize("n", range(21))
def test_closed_forms(n, x_flat, y_flat, xcy_flat):
    assert dpi_matrix(x_flat, n) == x_flat_closed(n)
    assert dpi_matrix(y_flat, n) == y_flat_closed(n)
    assert dpi_matrix(xcy_flat, n) == xcy_flat_closed(n)


def test_kernel_examples(x_flat, y_flat, xcy_flat):
    assert sol_space(x_flat, 2) == [poly(1, 0, -1)]
    assert sol_space(x_flat, 3) == []
    assert sol_space(xcy_flat, 4) == [poly(1, 0, 0, 0, 1)] == [u_poly(4)]
    assert common_sol([x_flat, y_flat], 0) == [poly(1)]
    assert common_sol([x_flat, y_flat], 2) == []
    for n in range(8):
        assert common_sol([x_flat], n) == sol_space(x_flat, n)


def test_kernel_is_reduced_echelon(xcy_flat):
    for n in range(30):
        basis = sol_space(xcy_flat, n)
        pivots = [next(j for j, c in enumerate(v.coeffs) if c) for v in basis]
        assert pivots == sorted(pivots)
        for v, p in zip(basis, pivots):
            assert v.coeffs[p] == 1
            assert all(not w.coeffs[p] for w in basis if w is not v)


@pytest.mark.parametrize("n", range(21))
def test_group_action_closed_forms_and_multiplicativity(n):
    for g in Q8:
        assert group_action_matrix(g, n) == q8_closed(g.label, n)
    for g in Q8:
        for h in Q8:
            assert group_action_matrix(g, n) @ group_action_matrix(h, n) == group_action_matrix(q8_mul(g, h), n)


@pytest.mark.parametrize("n", range(21))
def test_group_action_traces_from_eigenvalues(n):
    # tr pi_n(g) = sum_k z^(n-2k) for the eigenvalue z of g; z = +-1 on +-m~0, z = i otherwise.
    for g in Q8:
        z = GaussRational(g.sign) if g.index == 0 else I
        want = sum((z ** (n - 2 * k) for k in range(n + 1)), GaussRational(0))
        assert group_action_matrix(g, n).trace() == want


def test_m3_is_product_of_m1_m2():
    for n in range(8):
        m1, m2, m3 = (group_action_matrix(Q8_BY_LABEL[f"+m{j}"], n) for j in (1, 2, 3))
        assert m1 @ m2 == m3


def test_group_action_examples():
    m1 = group_action_matrix(Q8_BY_LABEL["+m1"], 2)
    assert [m1[k, k] for k in range(3)] == [-1, 1, -1]
    assert group_action_matrix(Q8_BY_LABEL["-m0"], 3) == ExactMatrix.identity(4, scale=-1)


def test_kernel_soundness_and_equivariance(x_flat, y_flat, xcy_flat):
    for u in (x_flat, y_flat, xcy_flat):
        for n in range(25):
            m = dpi_matrix(u, n)
            basis = sol_space(u, n)
            for v in basis:
                assert not any(m.apply(v.coeffs))
            q8_action_on(basis, n)  # raises unless the span is Q8-stable


def test_restricted_action_rejects_non_invariant():
    g = group_action_matrix(Q8_BY_LABEL["+m2"], 2)
    with pytest.raises(ValueError):
        restricted_action(g, [poly(1, 0, 0)])


@given(st.integers(0, 12), st.lists(st.integers(-4, 4), min_size=1, max_size=13))
def test_group_action_is_substitution(n, coeffs):
    # pi_n(m~2) p(t) = t^n p(-1/t): check on an arbitrary polynomial of degree <= n.
    p = poly(*coeffs[: n + 1], n=n)
    img = group_action_matrix(Q8_BY_LABEL["+m2"], n).apply(p.coeffs)
    want = [GaussRational(0)] * (n + 1)
    for k, c in enumerate(p.coeffs):
        want[n - k] = c * (-1) ** k
    assert img == want


def test_polyvector_validation():
    with pytest.raises(ValueError):
        PolyVector.of([1, 2, 3], 1)
    assert str(poly(1, 0, -1)) == "1 - t^2"
    assert poly(0, 0).degree == -1
