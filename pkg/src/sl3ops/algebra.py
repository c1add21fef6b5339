"""Weights, the sl(3) matrix model and enveloping-algebra arithmetic.

Lie algebras are given concretely as spans of matrices; structure constants
are computed once from matrix commutators. Elements of the universal
enveloping algebra are finite sums of PBW monomials, each stored as a tuple of
basis indices that is nondecreasing in the algebra's chosen order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .linalg import rref_rows
from .scalars import ONE, ZERO, GaussRational, I, to_gr

__all__ = [
    "Weight", "ALPHA", "BETA", "RHO", "RHO_TILDE", "ZERO_WEIGHT", "POSITIVE_ROOTS",
    "Matrix", "mat", "unit", "commutator", "cartan_theta", "trace",
    "LieBasis", "Uea", "UeaElement",
    "STANDARD", "IWASAWA", "SL2", "U_STD", "U_NBAR", "U_VERMA", "U_IWASAWA", "U_SL2",
    "X", "Y", "Z", "H_ALPHA", "H_BETA", "E12", "E23", "E13", "B1", "B2", "B3",
    "Z_PLUS", "Z_MINUS", "Z_ZERO", "E_PLUS", "E_MINUS", "E_ZERO",
    "pbw_normalize", "monomial_weight",
]


# ---------------------------------------------------------------------------
# Weights (coordinates in the simple-root basis {alpha, beta} of A2)
# ---------------------------------------------------------------------------

# Cartan form of A2 on the simple roots: (a,a) = (b,b) = 2, (a,b) = -1.
_FORM = ((2, -1), (-1, 2))


@dataclass(frozen=True, order=True)
class Weight:
    a: Fraction = Fraction(0)
    b: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))

    def __add__(self, other: "Weight") -> "Weight":
        return Weight(self.a + other.a, self.b + other.b)

    def __sub__(self, other: "Weight") -> "Weight":
        return Weight(self.a - other.a, self.b - other.b)

    def __neg__(self) -> "Weight":
        return Weight(-self.a, -self.b)

    def __mul__(self, s) -> "Weight":
        s = Fraction(s)
        return Weight(self.a * s, self.b * s)

    __rmul__ = __mul__

    def inner(self, other: "Weight") -> Fraction:
        x, y = (self.a, self.b), (other.a, other.b)
        return sum(x[i] * _FORM[i][j] * y[j] for i in range(2) for j in range(2))

    def pairing(self, root: "Weight") -> Fraction:
        """<self, root^vee> = 2 (self, root) / (root, root)."""
        return 2 * self.inner(root) / root.inner(root)

    def reflect(self, root: "Weight") -> "Weight":
        return self - root * self.pairing(root)

    def is_zero(self) -> bool:
        return not self.a and not self.b

    def __str__(self):
        return f"({self.a},{self.b})"


ZERO_WEIGHT = Weight(0, 0)
ALPHA = Weight(1, 0)
BETA = Weight(0, 1)
RHO = Weight(1, 1)
RHO_TILDE = Weight(Fraction(1, 2), Fraction(1, 2))
POSITIVE_ROOTS = (ALPHA, BETA, ALPHA + BETA)


# ---------------------------------------------------------------------------
# Matrices
# ---------------------------------------------------------------------------

Matrix = tuple  # tuple of row tuples of GaussRational


def mat(rows: Iterable[Iterable]) -> Matrix:
    return tuple(tuple(to_gr(x) for x in r) for r in rows)


def unit(i: int, j: int, n: int = 3) -> Matrix:
    """Matrix unit E_ij, 1-based indices as in the usual notation."""
    return mat([[1 if (r, c) == (i - 1, j - 1) else 0 for c in range(n)] for r in range(n)])


def _mm(a: Matrix, b: Matrix) -> Matrix:
    n, m, p = len(a), len(b), len(b[0])
    return tuple(
        tuple(sum((a[i][k] * b[k][j] for k in range(m)), ZERO) for j in range(p)) for i in range(n)
    )


def _lin(*pairs) -> Matrix:
    """Linear combination sum(c * M)."""
    n = len(pairs[0][1])
    out = [[ZERO] * n for _ in range(n)]
    for c, m in pairs:
        c = to_gr(c)
        for i in range(n):
            for j in range(n):
                out[i][j] = out[i][j] + c * m[i][j]
    return tuple(tuple(r) for r in out)


def commutator(a: Matrix, b: Matrix) -> Matrix:
    return _lin((1, _mm(a, b)), (-1, _mm(b, a)))


def cartan_theta(a: Matrix) -> Matrix:
    """theta(U) = -U^t."""
    return tuple(tuple(-a[j][i] for j in range(len(a))) for i in range(len(a)))


def trace(a: Matrix) -> GaussRational:
    return sum((a[i][i] for i in range(len(a))), ZERO)


def conjugate_by(g: Matrix, a: Matrix, g_inv: Matrix) -> Matrix:
    return _mm(_mm(g, a), g_inv)


X = unit(2, 1)
Y = unit(3, 2)
Z = unit(3, 1)
E12 = unit(1, 2)
E23 = unit(2, 3)
E13 = unit(1, 3)
H_ALPHA = _lin((1, unit(1, 1)), (-1, unit(2, 2)))
H_BETA = _lin((1, unit(2, 2)), (-1, unit(3, 3)))

B1 = _lin((-1, unit(1, 3)), (1, unit(3, 1)))
B2 = _lin((-1, unit(2, 3)), (1, unit(3, 2)))
B3 = _lin((-1, unit(1, 2)), (1, unit(2, 1)))
Z_PLUS = _lin((1, B2), (-I, B3))
Z_MINUS = _lin((-1, B2), (-I, B3))
Z_ZERO = commutator(Z_PLUS, Z_MINUS)

E_PLUS = mat([[0, 1], [0, 0]])
E_MINUS = mat([[0, 0], [1, 0]])
E_ZERO = mat([[1, 0], [0, -1]])


# ---------------------------------------------------------------------------
# Lie algebra with a fixed basis
# ---------------------------------------------------------------------------

class LieBasis:
    """A matrix Lie algebra with an ordered basis and its structure constants."""

    def __init__(self, names: Sequence[str], matrices: Sequence[Matrix],
                 weights: Sequence[Weight] | None = None):
        if len(names) != len(matrices):
            raise ValueError("names and matrices differ in length")
        self.names = tuple(names)
        self.matrices = tuple(matrices)
        self.weights = tuple(weights) if weights is not None else None
        self.dim = len(names)
        self._size = len(matrices[0])
        # Solve coordinates by reducing the augmented system [basis | I].
        cols = self._size * self._size
        rows = []
        for k, m in enumerate(self.matrices):
            r = {p: v for p, v in enumerate(self._flat(m)) if v}
            r[cols + k] = ONE
            rows.append(r)
        reduced, pivots = rref_rows(rows, cols + self.dim)
        if any(p >= cols for p in pivots):
            raise ValueError("basis matrices are linearly dependent")
        self._coord_rows = list(zip(pivots, reduced))
        self._cols = cols

    @staticmethod
    def _flat(m: Matrix) -> list:
        return [x for row in m for x in row]

    def index(self, name: str) -> int:
        return self.names.index(name)

    def coords(self, m: Matrix) -> dict[int, GaussRational]:
        """Coordinates of ``m`` in this basis; raises if ``m`` is outside the span."""
        flat = self._flat(m)
        out: dict[int, GaussRational] = {}
        residual = list(flat)
        for pc, row in self._coord_rows:
            c = residual[pc]
            if not c:
                continue
            for p in range(self._cols):
                v = row.get(p)
                if v:
                    residual[p] = residual[p] - c * v
            for k in range(self.dim):
                v = row.get(self._cols + k)
                if v:
                    out[k] = out.get(k, ZERO) + c * v
        if any(residual):
            raise ValueError("matrix is not in the span of the basis")
        return {k: v for k, v in out.items() if v}

    def element(self, coeffs: Mapping[int, object]) -> Matrix:
        return _lin(*[(c, self.matrices[k]) for k, c in coeffs.items()]) if coeffs else \
            tuple(tuple(ZERO for _ in range(self._size)) for _ in range(self._size))

    @cached_property
    def structure(self) -> dict[tuple[int, int], dict[int, GaussRational]]:
        out = {}
        for i in range(self.dim):
            for j in range(self.dim):
                out[i, j] = self.coords(commutator(self.matrices[i], self.matrices[j]))
        return out

    def __repr__(self):
        return f"LieBasis({', '.join(self.names)})"


STANDARD = LieBasis(
    ["X", "Y", "Z", "Ha", "Hb", "E12", "E23", "E13"],
    [X, Y, Z, H_ALPHA, H_BETA, E12, E23, E13],
    [-ALPHA, -BETA, -(ALPHA + BETA), ZERO_WEIGHT, ZERO_WEIGHT, ALPHA, BETA, ALPHA + BETA],
)
# k-part spanned by the sl(2)-triple Z_+, Z_-, Z_0 rather than B_1, B_2, B_3.
IWASAWA = LieBasis(
    ["Z+", "Z-", "Z0", "Ha", "Hb", "E12", "E23", "E13"],
    [Z_PLUS, Z_MINUS, Z_ZERO, H_ALPHA, H_BETA, E12, E23, E13],
)
SL2 = LieBasis(["E+", "E-", "E0"], [E_PLUS, E_MINUS, E_ZERO])

N_BAR_IDX = (0, 1, 2)
CARTAN_IDX = (3, 4)
N_IDX = (5, 6, 7)


# ---------------------------------------------------------------------------
# Universal enveloping algebra
# ---------------------------------------------------------------------------

Word = tuple


class Uea:
    """U(g) for a :class:`LieBasis`, with PBW monomials ordered by ``order``.

    ``order`` lists basis indices from smallest to largest.
    """

    def __init__(self, basis: LieBasis, order: Sequence[int] | None = None):
        self.basis = basis
        order = tuple(range(basis.dim)) if order is None else tuple(order)
        if sorted(order) != list(range(basis.dim)):
            raise ValueError("order must be a permutation of the basis indices")
        self.order = order
        self.rank = {idx: r for r, idx in enumerate(order)}
        self._cache: dict[Word, dict[Word, GaussRational]] = {}

    def __repr__(self):
        return f"Uea({[self.basis.names[i] for i in self.order]})"

    # -- construction ---------------------------------------------------------
    def one(self) -> "UeaElement":
        return UeaElement(self, {(): ONE})

    def zero(self) -> "UeaElement":
        return UeaElement(self, {})

    def gen(self, name_or_idx) -> "UeaElement":
        idx = self.basis.index(name_or_idx) if isinstance(name_or_idx, str) else name_or_idx
        return UeaElement(self, {(idx,): ONE})

    def word(self, *names) -> "UeaElement":
        """Product of generators in the given (possibly unordered) sequence."""
        idx = tuple(self.basis.index(n) if isinstance(n, str) else n for n in names)
        return self.from_terms({idx: ONE})

    def from_terms(self, terms: Mapping[Word, object] | Iterable[tuple[Word, object]]) -> "UeaElement":
        """Normalize a formal sum of arbitrary words."""
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Word, GaussRational] = {}
        for w, c in items:
            c = to_gr(c)
            if not c:
                continue
            for nw, nc in self.normal_word(tuple(w)).items():
                _acc(acc, nw, c * nc)
        return UeaElement(self, acc, _normalized=True)

    def from_lie(self, coeffs: Mapping[int, object]) -> "UeaElement":
        return UeaElement(self, {(k,): to_gr(c) for k, c in coeffs.items()})

    def from_matrix(self, m: Matrix) -> "UeaElement":
        return self.from_lie(self.basis.coords(m))

    # -- normal ordering ------------------------------------------------------
    def normal_word(self, word: Word) -> dict[Word, GaussRational]:
        cached = self._cache.get(word)
        if cached is not None:
            return cached
        rank = self.rank
        for i in range(len(word) - 1):
            a, b = word[i], word[i + 1]
            if rank[a] > rank[b]:
                break
        else:
            result = {word: ONE}
            self._cache[word] = result
            return result
        # ab = ba + [a, b]
        result: dict[Word, GaussRational] = dict(self.normal_word(word[:i] + (b, a) + word[i + 2:]))
        for k, c in self.basis.structure[a, b].items():
            for nw, nc in self.normal_word(word[:i] + (k,) + word[i + 2:]).items():
                _acc(result, nw, c * nc)
        self._cache[word] = result
        return result

    def is_normal(self, word: Word) -> bool:
        return all(self.rank[word[i]] <= self.rank[word[i + 1]] for i in range(len(word) - 1))


def _acc(d: dict, key, val):
    s = d.get(key, ZERO) + val
    if s:
        d[key] = s
    else:
        d.pop(key, None)


class UeaElement:
    """Immutable element of a :class:`Uea` in PBW normal form."""

    __slots__ = ("algebra", "terms", "_hash")

    def __init__(self, algebra: Uea, terms: Mapping[Word, object], _normalized: bool = False):
        self.algebra = algebra
        if not _normalized and not all(algebra.is_normal(tuple(w)) for w in terms):
            terms, _normalized = algebra.from_terms(terms).terms, True
        if _normalized:
            clean = dict(terms)
        else:
            clean = {}
            for w, c in terms.items():
                c = to_gr(c)
                if c:
                    _acc(clean, tuple(w), c)
        self.terms = clean
        self._hash = None

    # -- arithmetic -----------------------------------------------------------
    def _check(self, other: "UeaElement"):
        if other.algebra is not self.algebra:
            raise ValueError("elements live in different enveloping algebras")

    def __add__(self, other):
        if not isinstance(other, UeaElement):
            other = self.algebra.one() * other
        self._check(other)
        d = dict(self.terms)
        for w, c in other.terms.items():
            _acc(d, w, c)
        return UeaElement(self.algebra, d, True)

    __radd__ = __add__

    def __neg__(self):
        return UeaElement(self.algebra, {w: -c for w, c in self.terms.items()}, True)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, UeaElement):
            self._check(other)
            acc: dict[Word, GaussRational] = {}
            for w1, c1 in self.terms.items():
                for w2, c2 in other.terms.items():
                    for nw, nc in self.algebra.normal_word(w1 + w2).items():
                        _acc(acc, nw, c1 * c2 * nc)
            return UeaElement(self.algebra, acc, True)
        s = to_gr(other)
        if not s:
            return self.algebra.zero()
        return UeaElement(self.algebra, {w: c * s for w, c in self.terms.items()}, True)

    def __rmul__(self, other):
        return self * other

    def __truediv__(self, s):
        return self * to_gr(s).inverse()

    def __pow__(self, k: int):
        out = self.algebra.one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, UeaElement):
            return self.algebra is other.algebra and self.terms == other.terms
        if not other:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def __iter__(self):
        return iter(self.sorted_terms())

    def __len__(self):
        return len(self.terms)

    # -- utilities ------------------------------------------------------------
    def sorted_terms(self) -> list[tuple[Word, GaussRational]]:
        """Terms by decreasing length, then by exponent vector in the basis order (deterministic)."""
        return sorted(self.terms.items(), key=lambda t: (-len(t[0]), self._exponents(t[0])), reverse=False)

    def _exponents(self, w: Word) -> tuple:
        return tuple(-w.count(i) for i in self.algebra.order)

    def exponents(self, w: Word) -> tuple[int, ...]:
        """Exponent vector of a monomial, indexed by the basis order."""
        return tuple(w.count(i) for i in self.algebra.order)

    def in_algebra(self, target: Uea) -> "UeaElement":
        """Re-normalize into another algebra over the same basis (e.g. different order)."""
        if target.basis is not self.algebra.basis:
            raise ValueError("target algebra has a different basis")
        return target.from_terms(self.terms)

    def substitute(self, target: Uea, images: Sequence["UeaElement"]) -> "UeaElement":
        """Algebra map sending basis generator k to ``images[k]`` in ``target``."""
        out = target.zero()
        for w, c in self.terms.items():
            term = target.one() * c
            for k in w:
                term = term * images[k]
            out = out + term
        return out

    def coefficient(self, word: Word) -> GaussRational:
        return self.terms.get(tuple(word), ZERO)

    def generators_used(self) -> set[int]:
        return {k for w in self.terms for k in w}

    def max_length(self) -> int:
        return max((len(w) for w in self.terms), default=0)

    def word_str(self, w: Word) -> str:
        if not w:
            return "1"
        names = self.algebra.basis.names
        parts, i = [], 0
        while i < len(w):
            j = i
            while j < len(w) and w[j] == w[i]:
                j += 1
            n = names[w[i]]
            parts.append(n if j - i == 1 else f"{n}^{j - i}")
            i = j
        return "*".join(parts)

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for w, c in self.sorted_terms():
            ws = self.word_str(w)
            if c == 1:
                s = ws
            elif c == -1:
                s = f"-{ws}" if w else "-1"
            else:
                s = f"{c}*{ws}" if w else str(c)
            out.append(s)
        text = " + ".join(out)
        return text.replace("+ -", "- ")

    def __repr__(self):
        return f"UeaElement({self})"


# Enveloping algebras used throughout.
#   U_STD:      the 8-element basis in its listed order X<Y<Z<Ha<Hb<E12<E23<E13,
#               which is also n-bar < Cartan < n, the Verma-module order.
#   U_IWASAWA:  k < Cartan < n, used for flattening.
U_STD = Uea(STANDARD)
U_VERMA = U_STD
U_NBAR = U_STD
U_IWASAWA = Uea(IWASAWA)
U_SL2 = Uea(SL2)


def pbw_normalize(terms: Mapping[Word, object] | Iterable[tuple[Word, object]],
                  order: Sequence[int] | None = None,
                  basis: LieBasis = STANDARD) -> UeaElement:
    """Normal-order a formal sum of words over ``basis`` in the given total order."""
    if basis is STANDARD and (order is None or tuple(order) == U_STD.order):
        algebra = U_STD
    else:
        algebra = _algebra_for(basis, tuple(order) if order is not None else tuple(range(basis.dim)))
    return algebra.from_terms(terms)


_ALGEBRAS: dict[tuple[int, tuple], Uea] = {}


def _algebra_for(basis: LieBasis, order: tuple) -> Uea:
    key = (id(basis), order)
    alg = _ALGEBRAS.get(key)
    if alg is None:
        alg = _ALGEBRAS[key] = Uea(basis, order)
    return alg


def monomial_weight(word: Word, basis: LieBasis = STANDARD) -> Weight:
    if basis.weights is None:
        raise ValueError(f"{basis!r} carries no root weights")
    total = ZERO_WEIGHT
    for k in word:
        total = total + basis.weights[k]
    return total
