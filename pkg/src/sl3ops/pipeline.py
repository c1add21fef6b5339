"""End-to-end recipes: classify operators at a principal-series parameter and
tabulate the K-types of their solution spaces."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence

from .algebra import U_IWASAWA, U_STD, UeaElement, Weight
from .kflat import flatten, to_sl2
from .qmchar import DEFAULT_TABLE, CharacterTable, MIrrep, ad_character, decompose_mrep, hom_multiplicity
from .su2model import PolyVector, common_sol, q8_action_on, sol_space
from .verma import classify_targets, normalize_line, singular_vectors

__all__ = [
    "OperatorRecord", "KTypeRow", "KTypeTable", "PatternSummary", "Progression",
    "build_operators", "ktype_table", "infer_pattern", "operator_label", "NAMED_WORDS",
    "MIN_CONFIDENT_NMAX", "DEFAULT_NMAX",
]

DEFAULT_NMAX = 60
MIN_CONFIDENT_NMAX = 16
MODULUS = 4


def _w(*names: str) -> UeaElement:
    return U_STD.word(*names)


# Short labels for the lines that occur in the two worked cases.
NAMED_WORDS = {
    "X": _w("X"),
    "Y": _w("Y"),
    "Y2X": _w("Y", "Y", "X"),
    "X2Y": _w("X", "X", "Y"),
    "XY2X": _w("X", "Y", "Y", "X"),
    "XcY": _w("X", "Y") + _w("Y", "X"),
}
_LABEL_OF = {normalize_line(u): name for name, u in NAMED_WORDS.items()}


def operator_label(u_bar: UeaElement) -> str:
    """Short name of the line C*u_bar, falling back to its normal form."""
    return _LABEL_OF.get(normalize_line(u_bar), str(normalize_line(u_bar)).replace(" ", ""))


@dataclass(frozen=True)
class OperatorRecord:
    """One intertwining operator found at ``lambda_ps``.

    ``nu_target`` is the principal-series parameter of the target; the Verma
    label of the source of the homomorphism is ``-nu_target``.
    """

    lambda_ps: Weight
    nu_target: Weight
    u_bar: UeaElement
    chi: MIrrep
    u_flat: UeaElement
    order: int
    label: str

    @property
    def verma_nu(self) -> Weight:
        return -self.nu_target

    @property
    def right_translation(self) -> str:
        return f"R({self.u_bar})"


def build_operators(lambda_ps: Weight, table: CharacterTable = DEFAULT_TABLE) -> list[OperatorRecord]:
    lam = -lambda_ps
    out = []
    for nu in classify_targets(lam):
        for v in singular_vectors(lam, nu):
            u = v.element
            out.append(OperatorRecord(
                lambda_ps=lambda_ps,
                nu_target=-nu,
                u_bar=u,
                chi=ad_character(u, table),
                u_flat=flatten(u, lambda_ps),
                order=u.max_length(),
                label=operator_label(u),
            ))
    out.sort(key=lambda r: (r.order, r.nu_target))
    return out


@dataclass(frozen=True)
class KTypeRow:
    n: int
    multiplicity: int
    kernel_basis: tuple[PolyVector, ...]
    mrep: Counter

    @property
    def kernel_dim(self) -> int:
        return len(self.kernel_basis)


@dataclass(frozen=True)
class KTypeTable:
    operator_label: str
    lambda_ps: Weight
    sigma: MIrrep
    rows: tuple[KTypeRow, ...]
    n_max: int

    def nonzero(self) -> list[int]:
        return [r.n for r in self.rows if r.multiplicity]

    def row(self, n: int) -> KTypeRow:
        return self.rows[n]


def _as_sl2(u: UeaElement) -> UeaElement:
    return to_sl2(u) if u.algebra is U_IWASAWA else u


def kernel_rows(u_flats: Sequence[UeaElement], n_max: int,
                table: CharacterTable = DEFAULT_TABLE) -> list[tuple[int, list[PolyVector], Counter]]:
    """Kernel and its Q8 decomposition for n = 0..n_max; independent of sigma."""
    if not u_flats:
        raise ValueError("ktype_table needs at least one operator")
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    ops = [_as_sl2(u) for u in u_flats]
    out = []
    for n in range(n_max + 1):
        basis = sol_space(ops[0], n) if len(ops) == 1 else common_sol(ops, n)
        mrep = decompose_mrep(q8_action_on(basis, n), table) if basis else Counter()
        out.append((n, basis, mrep))
    return out


def ktype_table(u_flats: Sequence[UeaElement], lambda_ps: Weight, sigma: MIrrep, n_max: int,
                label: str = "", table: CharacterTable = DEFAULT_TABLE,
                rows: Sequence[tuple[int, list[PolyVector], Counter]] | None = None) -> KTypeTable:
    """K-type table of the (common) solution space twisted by ``sigma``.

    Pass ``rows`` from :func:`kernel_rows` to reuse kernels across several sigma.
    """
    if rows is None:
        rows = kernel_rows(u_flats, n_max, table)
    out = tuple(
        KTypeRow(n, hom_multiplicity(mrep, sigma), tuple(basis), mrep)
        for n, basis, mrep in rows[: n_max + 1]
    )
    return KTypeTable(label, lambda_ps, sigma, out, n_max)


@dataclass(frozen=True)
class Progression:
    residue: int
    modulus: int
    multiplicity: int

    def __str__(self):
        return f"n = {self.residue} mod {self.modulus}: multiplicity {self.multiplicity}"


@dataclass(frozen=True)
class PatternSummary:
    progressions: tuple[Progression, ...]
    exceptions: tuple[tuple[int, int], ...]  # (n, multiplicity) rows off the fit
    n_max: int
    low_confidence: bool
    irregular: bool = field(default=False)

    @property
    def status(self) -> str:
        return "irregular" if self.irregular else "regular"

    def describe(self) -> str:
        if self.irregular and not self.progressions and not self.exceptions:
            head = "irregular (all zero)"
        elif not self.progressions and not self.exceptions:
            head = "all zero"
        else:
            parts = [str(p) for p in self.progressions]
            parts += [f"n = {n}: multiplicity {m} (off pattern)" for n, m in self.exceptions]
            head = "; ".join(parts)
        tail = f" (verified <= {self.n_max})"
        if self.low_confidence:
            tail += " [low confidence: n_max < %d]" % MIN_CONFIDENT_NMAX
        return head + tail


def infer_pattern(table: KTypeTable) -> PatternSummary:
    """Fit multiplicities by residue mod 4; rows off the majority value are exceptions."""
    progs = []
    exceptions = []
    for r in range(MODULUS):
        mults = [(row.n, row.multiplicity) for row in table.rows if row.n % MODULUS == r]
        if not mults:
            continue
        counts = Counter(m for _, m in mults)
        # Majority value; ties go to the smaller multiplicity so sparse data reads as zero.
        typical = min(counts, key=lambda m: (-counts[m], m))
        if typical:
            progs.append(Progression(r, MODULUS, typical))
        exceptions.extend((n, m) for n, m in mults if m != typical)
    low = table.n_max < MIN_CONFIDENT_NMAX
    return PatternSummary(tuple(progs), tuple(sorted(exceptions)), table.n_max, low,
                          irregular=low or bool(exceptions))
