from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sl3ops.algebra import IWASAWA, RHO, RHO_TILDE, SL2, U_IWASAWA, U_SL2, U_STD, Weight
from sl3ops.kflat import K_IDX, flatten, to_sl2
from sl3ops.scalars import I, GaussRational
from sl3ops.verma import VermaVector, verma_act

ZP, ZM = U_IWASAWA.gen("Z+"), U_IWASAWA.gen("Z-")
X, Y, Z = (U_STD.gen(n) for n in "XYZ")
HALF = Fraction(1, 2)
# Iwasawa generators written in the standard basis, for re-expansion.
IW_IN_STD = [U_STD.from_matrix(m) for m in IWASAWA.matrices]

small = st.fractions(-3, 3, max_denominator=5)
weights = st.builds(Weight, small, small)
nbar_words = st.lists(st.integers(0, 2), min_size=0, max_size=4).map(tuple)
coeffs = st.builds(GaussRational, small, small)
nbar_elements = st.dictionaries(nbar_words, coeffs, min_size=1, max_size=4).map(U_STD.from_terms)


def reexpand_difference(u, lambda_ps):
    """(u^flat - u) (x) 1, rewritten in the n-bar-first induced-module normal form."""
    flat_std = flatten(u, lambda_ps).substitute(U_STD, IW_IN_STD)
    # The induced character -(lambda_ps + rho) is the highest weight of M(-lambda_ps).
    vac = VermaVector(U_STD.one(), -lambda_ps)
    return verma_act(flat_std - u, vac).element


@pytest.mark.parametrize("lam", [-RHO, -RHO_TILDE, Weight(Fraction(2, 3), Fraction(-1, 7)), Weight(5, -2)])
def test_degree_one_goldens(lam):
    assert flatten(X, lam) == (ZP + ZM) * (I * HALF)
    assert flatten(Y, lam) == (ZP - ZM) * HALF


def test_xcy_golden_and_product_identity():
    flat = flatten(2 * X * Y + Z, -RHO_TILDE)
    assert flat == (ZP * ZP - ZM * ZM) * (I * HALF)
    xf, yf = flatten(X, -RHO_TILDE), flatten(Y, -RHO_TILDE)
    assert flat == xf * yf + yf * xf


@settings(max_examples=100)
@given(nbar_elements, weights)
def test_reexpansion_oracle(u, lam):
    assert not reexpand_difference(u, lam)


@given(nbar_elements, weights)
def test_flatten_lands_in_k(u, lam):
    assert flatten(u, lam).generators_used() <= set(K_IDX)


def test_flatten_rejects_non_nbar():
    with pytest.raises(ValueError):
        flatten(U_STD.gen("E12"), -RHO)


def test_to_sl2_relabels():
    assert to_sl2(ZP) == U_SL2.gen("E+")
    assert to_sl2(ZP * ZM) == U_SL2.gen("E+") * U_SL2.gen("E-")
    assert to_sl2((ZP * ZP - ZM * ZM) * (I * HALF)) == \
        (U_SL2.gen("E+") ** 2 - U_SL2.gen("E-") ** 2) * (I * HALF)


def test_k_and_sl2_structure_constants_agree():
    for i in K_IDX:
        for j in K_IDX:
            assert IWASAWA.structure[i, j] == SL2.structure[i, j]


def test_to_sl2_rejects_non_k():
    with pytest.raises(ValueError):
        to_sl2(U_IWASAWA.gen("E12"))
