from fractions import Fraction
from itertools import product

import pytest

from sl3ops.algebra import ALPHA, BETA, RHO, RHO_TILDE, U_VERMA, Weight
from sl3ops.scalars import ZERO
from sl3ops.verma import (
    VermaVector, classify_targets, linked, normalize_line, reachable_weights, singular_vectors, verma_act,
)

X, Y, Z = (U_VERMA.gen(n) for n in "XYZ")
E12, E23, E13 = (U_VERMA.gen(n) for n in ("E12", "E23", "E13"))
ONE_V = U_VERMA.one()


def act(u, elem, lam):
    return verma_act(u, VermaVector(elem, lam)).element


def sv(lam, nu):
    return [v.element for v in singular_vectors(lam, nu)]


def test_e12_e23_kill_x_in_m_rho():
    assert act(E12, X, RHO) == U_VERMA.zero()
    assert act(E23, X, RHO) == U_VERMA.zero()


@pytest.mark.parametrize("lam", [RHO, Weight(3, 1), Weight(Fraction(1, 3), Fraction(-2, 5))])
def test_e12_on_x_is_pairing_minus_one(lam):
    # [E12, X] = Ha and Ha acts on the vacuum by <lam - rho, alpha^vee>.
    assert act(E12, X, lam) == ONE_V * (lam.pairing(ALPHA) - 1)


def test_vacuum_is_highest_weight():
    for lam in (RHO, RHO_TILDE):
        for e in (E12, E23, E13):
            assert act(e, ONE_V, lam) == U_VERMA.zero()


def test_golden_singular_vectors():
    assert sv(RHO, BETA) == [X]
    assert sv(RHO, ALPHA) == [Y]
    assert sv(RHO_TILDE, -RHO_TILDE) == [2 * X * Y + Z]
    assert sv(RHO_TILDE, -RHO_TILDE) == [normalize_line(X * Y + Y * X)]
    assert sv(RHO, -RHO) == [normalize_line(X * Y * Y * X)]


def test_xy2x_equals_yx2y():
    assert X * Y * Y * X == Y * X * X * Y


def test_composition_closure():
    # M(rho) -> X at beta, then Y^2 from M(beta) to M(-beta): the composite is Y^2 X.
    assert sv(BETA, -BETA) == [Y * Y]
    assert sv(RHO, -BETA) == [normalize_line(Y * Y * X)]
    assert sv(ALPHA, -ALPHA) == [X * X]
    assert sv(RHO, -ALPHA) == [normalize_line(X * X * Y)]
    assert sv(-BETA, -RHO) == [X]
    assert sv(RHO, -RHO) == [normalize_line(X * (Y * Y * X))]


def test_classify_targets_goldens():
    assert set(classify_targets(RHO)) == {ALPHA, -ALPHA, BETA, -BETA, -RHO}
    assert classify_targets(RHO_TILDE) == [-RHO_TILDE]
    assert classify_targets(Weight(Fraction(1, 3), Fraction(1, 5))) == []


def test_linkage_examples():
    chain = linked(RHO, -RHO)
    assert chain is not None and chain.end == -RHO
    assert len(linked(RHO_TILDE, RHO_TILDE)) == 0
    # <rho~, (alpha+beta)^vee> = 1, so one reflection links rho~ to -rho~.
    chain = linked(RHO_TILDE, -RHO_TILDE)
    assert chain is not None and chain.steps == (ALPHA + BETA,)


def test_chain_steps_are_integral_reflections():
    for lam in (RHO, Weight(2, 1), Weight(3, 3)):
        for nu in reachable_weights(lam):
            chain = linked(lam, nu)
            cur = lam
            for root, nxt in zip(chain.steps, chain.intermediates):
                k = cur.pairing(root)
                assert k.denominator == 1 and k > 0
                assert cur.reflect(root) == nxt == cur - root * k
                cur = nxt
            assert cur == nu


GRID = [Weight(a, b) for a, b in product(range(-3, 4), repeat=2)]


def test_hom_dimension_at_most_one_and_linkage_sound():
    for lam in GRID:
        for nu in GRID:
            vs = singular_vectors(lam, nu)
            assert len(vs) <= 1, (lam, nu)
            if nu != lam and linked(lam, nu) is not None:
                assert vs, (lam, nu)


@pytest.mark.parametrize("lam", [RHO, RHO_TILDE, Weight(2, 1), Weight(Fraction(3, 2), Fraction(3, 2))])
def test_singular_vectors_are_annihilated(lam):
    for nu in classify_targets(lam):
        for v in singular_vectors(lam, nu):
            for e in (E12, E23, E13):
                assert not verma_act(e, v).element


def test_normalize_line_is_scale_invariant():
    u = 2 * X * Y + Z
    for s in (Fraction(-3, 7), ZERO + 5, Fraction(1, 2)):
        assert normalize_line(u * s) == u


def test_verma_vector_rejects_non_nbar():
    with pytest.raises(ValueError):
        VermaVector(E12, RHO)
