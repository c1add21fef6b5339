"""The quaternion group model of M~, its irreducibles, and character bookkeeping."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping

from .algebra import STANDARD, U_STD, UeaElement, _mm, mat
from .linalg import ExactMatrix
from .scalars import ZERO, GaussRational, I

__all__ = [
    "Q8Element", "Q8", "Q8_BY_LABEL", "MIrrep", "IRREPS", "IRREP_BY_LABEL", "SIGN_CHARACTERS",
    "H", "TRIVIAL", "q8_mul", "ad_character", "decompose_mrep", "hom_multiplicity",
    "CharacterTable", "DEFAULT_TABLE", "ad_scalars",
]


@dataclass(frozen=True)
class Q8Element:
    """``sign * m~_index`` with its SU(2) matrix and its image m_index in SO(3)."""

    sign: int
    index: int

    @property
    def label(self) -> str:
        return f"{'+' if self.sign > 0 else '-'}m{self.index}"

    @property
    def matrix2(self):
        base = _TILDE_M[self.index]
        return tuple(tuple(x * self.sign for x in row) for row in base)

    @property
    def matrix3(self):
        return _M[self.index]

    def __str__(self):
        return self.label


_TILDE_M = (
    mat([[1, 0], [0, 1]]),
    mat([[I, 0], [0, -I]]),
    mat([[0, 1], [-1, 0]]),
    mat([[0, I], [I, 0]]),
)
_M = (
    mat([[1, 0, 0], [0, 1, 0], [0, 0, 1]]),
    mat([[-1, 0, 0], [0, 1, 0], [0, 0, -1]]),
    mat([[1, 0, 0], [0, -1, 0], [0, 0, -1]]),
    mat([[-1, 0, 0], [0, -1, 0], [0, 0, 1]]),
)

Q8 = tuple(Q8Element(s, j) for s in (1, -1) for j in range(4))
Q8_BY_LABEL = {g.label: g for g in Q8}


@lru_cache(maxsize=None)
def q8_mul(g: Q8Element, h: Q8Element) -> Q8Element:
    prod = _mm(g.matrix2, h.matrix2)
    for k in Q8:
        if k.matrix2 == prod:
            return k
    raise AssertionError("Q8 is not closed under multiplication")  # pragma: no cover


@dataclass(frozen=True)
class MIrrep:
    label: str
    dim: int
    values: tuple  # character value at each element of Q8, in Q8 order

    def character(self, g: Q8Element) -> GaussRational:
        return self.values[Q8.index(g)]

    @property
    def is_sign(self) -> bool:
        return self.dim == 1

    def __str__(self):
        return self.label


def _sign_irrep(label: str, v1: int, v2: int, v3: int) -> MIrrep:
    row = (1, v1, v2, v3)
    return MIrrep(label, 1, tuple(GaussRational(row[g.index]) for g in Q8))


TRIVIAL = _sign_irrep("(+,+)", 1, 1, 1)
SIGN_CHARACTERS = (
    TRIVIAL,
    _sign_irrep("(+,-)", -1, -1, 1),
    _sign_irrep("(-,+)", -1, 1, -1),
    _sign_irrep("(-,-)", 1, -1, -1),
)
H = MIrrep("H", 2, tuple(GaussRational(2 * g.sign if g.index == 0 else 0) for g in Q8))
IRREPS = SIGN_CHARACTERS + (H,)
IRREP_BY_LABEL = {r.label: r for r in IRREPS}


@dataclass(frozen=True)
class CharacterTable:
    """The five irreducible characters; swappable so self-tests can inject a corrupted table."""

    irreps: tuple = IRREPS

    def by_label(self, label: str) -> MIrrep:
        for r in self.irreps:
            if r.label == label:
                return r
        raise KeyError(label)

    def sign_characters(self) -> tuple:
        return tuple(r for r in self.irreps if r.dim == 1)


DEFAULT_TABLE = CharacterTable()


# ---------------------------------------------------------------------------
# Adjoint action of M on weight lines of U(n-bar)
# ---------------------------------------------------------------------------

def _ad_generator_images(m3) -> list[UeaElement]:
    images = []
    for b in STANDARD.matrices:
        images.append(U_STD.from_matrix(_mm(_mm(m3, b), m3)))  # m3 is its own inverse
    return images


def ad_scalars(line: UeaElement) -> dict[int, GaussRational]:
    """Scalar by which Ad(m_j) acts on ``line``, for j = 0..3.

    Raises ValueError if the line is not Ad(M)-stable or the scalar is not +-1.
    """
    if not line:
        raise ValueError("zero element spans no line")
    if line.algebra is not U_STD:
        line = line.in_algebra(U_STD)
    out = {}
    lead, lead_c = next(iter(line.sorted_terms()))
    for j, m3 in enumerate(_M):
        img = line.substitute(U_STD, _ad_generator_images(m3))
        s = img.coefficient(lead) / lead_c
        if img != line * s:
            raise ValueError(f"line is not stable under Ad(m{j})")
        if s not in (1, -1):
            raise ValueError(f"Ad(m{j}) acts by {s}, not by a sign")
        out[j] = s
    return out


def ad_character(line: UeaElement, table: CharacterTable = DEFAULT_TABLE) -> MIrrep:
    scal = ad_scalars(line)
    for chi in table.sign_characters():
        if all(chi.character(Q8Element(1, j)) == scal[j] for j in range(4)):
            return chi
    raise ValueError(f"no sign character matches Ad scalars {scal}")


# ---------------------------------------------------------------------------
# Decomposition of finite-dimensional Q8 representations
# ---------------------------------------------------------------------------

def _check_representation(action: Mapping[Q8Element, ExactMatrix]) -> None:
    if set(action) != set(Q8):
        raise ValueError("action must be given on all eight elements of Q8")
    for g in Q8:
        for h in Q8:
            if action[g] @ action[h] != action[q8_mul(g, h)]:
                raise ValueError(f"not a representation: rho({g})rho({h}) != rho({q8_mul(g, h)})")


def decompose_mrep(action: Mapping[Q8Element, ExactMatrix], table: CharacterTable = DEFAULT_TABLE,
                   check: bool = True) -> Counter:
    """Multiset (Counter by label) of irreducibles in a Q8 representation.

    Multiplicities come from the inner product of characters,
    mult(sigma) = 1/8 sum_g tr(rho(g)) conj(chi_sigma(g)).
    """
    if check:
        _check_representation(action)
    dims = {m.nrows for m in action.values()}
    if len(dims) != 1:
        raise ValueError("action matrices have different sizes")
    dim = dims.pop()
    traces = {g: action[g].trace() for g in Q8}
    out: Counter = Counter()
    total = 0
    for sigma in table.irreps:
        m = sum((traces[g] * sigma.character(g).conj() for g in Q8), ZERO) / 8
        if not m.is_real() or m.re.denominator != 1 or m.re < 0:
            raise ValueError(f"multiplicity of {sigma.label} is {m}; input is not a genuine Q8 representation")
        if m.re:
            out[sigma.label] = int(m.re)
            total += int(m.re) * sigma.dim
    if total != dim:
        raise ValueError(f"irreducible dimensions sum to {total}, expected {dim}")
    return out


def hom_multiplicity(rep: Counter | Mapping[str, int], sigma: MIrrep | str) -> int:
    label = sigma if isinstance(sigma, str) else sigma.label
    return int(rep.get(label, 0))


def inner_product(chi1: MIrrep, chi2: MIrrep) -> Fraction:
    s = sum((chi1.character(g) * chi2.character(g).conj() for g in Q8), ZERO) / 8
    if not s.is_real():
        raise ValueError("character inner product is not real")
    return s.re
