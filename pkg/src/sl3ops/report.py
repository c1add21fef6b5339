"""Report documents: exact JSON round-trip and a markdown rendering."""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from . import __version__
from .algebra import U_IWASAWA, U_SL2, U_STD, Uea, UeaElement, Weight
from .pipeline import KTypeRow, KTypeTable, OperatorRecord, PatternSummary, Progression
from .qmchar import IRREP_BY_LABEL, IRREPS
from .scalars import GaussRational
from .su2model import PolyVector

__all__ = ["ReportDocument", "to_json_text", "from_json_text", "render_markdown", "weight_to_json",
           "weight_from_json", "SCHEMA_VERSION", "schema_path"]

SCHEMA_VERSION = 1
TOOL = "sl3ops"

_ALGEBRAS = {"std": U_STD, "iwasawa": U_IWASAWA, "sl2": U_SL2}
_ALGEBRA_NAME = {id(v): k for k, v in _ALGEBRAS.items()}


def _q(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def weight_to_json(w: Weight) -> dict:
    return {"a": _q(w.a), "b": _q(w.b)}


def weight_from_json(obj: dict) -> Weight:
    return Weight(Fraction(obj["a"]), Fraction(obj["b"]))


def _uea_to_json(u: UeaElement) -> dict:
    names = u.algebra.basis.names
    return {
        "algebra": _ALGEBRA_NAME[id(u.algebra)],
        "text": str(u),
        "terms": [{"word": [names[k] for k in w], "coeff": c.to_json()} for w, c in u.sorted_terms()],
    }


def _uea_from_json(obj: dict) -> UeaElement:
    alg: Uea = _ALGEBRAS[obj["algebra"]]
    terms = {tuple(alg.basis.index(n) for n in t["word"]): GaussRational.from_json(t["coeff"])
             for t in obj["terms"]}
    return alg.from_terms(terms)


def _poly_to_json(p: PolyVector) -> list:
    return [c.to_json() for c in p.coeffs]


def _poly_from_json(obj: list) -> PolyVector:
    return PolyVector(tuple(GaussRational.from_json(c) for c in obj), len(obj) - 1)


def _mrep_to_json(m: Counter) -> dict:
    # Fixed irreducible order keeps output byte-stable.
    return {r.label: m[r.label] for r in IRREPS if m.get(r.label)}


def _operator_to_json(r: OperatorRecord) -> dict:
    return {
        "label": r.label,
        "lambda_ps": weight_to_json(r.lambda_ps),
        "nu_target": weight_to_json(r.nu_target),
        "verma_nu": weight_to_json(r.verma_nu),
        "order": r.order,
        "u_bar": _uea_to_json(r.u_bar),
        "chi": r.chi.label,
        "u_flat": _uea_to_json(r.u_flat),
        "right_translation": r.right_translation,
    }


def _operator_from_json(obj: dict) -> OperatorRecord:
    return OperatorRecord(
        lambda_ps=weight_from_json(obj["lambda_ps"]),
        nu_target=weight_from_json(obj["nu_target"]),
        u_bar=_uea_from_json(obj["u_bar"]),
        chi=IRREP_BY_LABEL[obj["chi"]],
        u_flat=_uea_from_json(obj["u_flat"]),
        order=obj["order"],
        label=obj["label"],
    )


def _table_to_json(t: KTypeTable) -> dict:
    return {
        "operator_label": t.operator_label,
        "lambda_ps": weight_to_json(t.lambda_ps),
        "sigma": t.sigma.label,
        "n_max": t.n_max,
        "rows": [
            {
                "n": r.n,
                "multiplicity": r.multiplicity,
                "kernel_dim": r.kernel_dim,
                "mrep": _mrep_to_json(r.mrep),
                "kernel_basis": [_poly_to_json(p) for p in r.kernel_basis],
            }
            for r in t.rows
        ],
    }


def _table_from_json(obj: dict) -> KTypeTable:
    rows = tuple(
        KTypeRow(r["n"], r["multiplicity"], tuple(_poly_from_json(p) for p in r["kernel_basis"]),
                 Counter(r["mrep"]))
        for r in obj["rows"]
    )
    return KTypeTable(obj["operator_label"], weight_from_json(obj["lambda_ps"]),
                      IRREP_BY_LABEL[obj["sigma"]], rows, obj["n_max"])


def _pattern_to_json(p: PatternSummary) -> dict:
    return {
        "status": p.status,
        "low_confidence": p.low_confidence,
        "verified_up_to": p.n_max,
        "progressions": [{"residue": g.residue, "modulus": g.modulus, "multiplicity": g.multiplicity}
                         for g in p.progressions],
        "exceptions": [{"n": n, "multiplicity": m} for n, m in p.exceptions],
        "description": p.describe(),
    }


def _pattern_from_json(obj: dict) -> PatternSummary:
    return PatternSummary(
        tuple(Progression(g["residue"], g["modulus"], g["multiplicity"]) for g in obj["progressions"]),
        tuple((e["n"], e["multiplicity"]) for e in obj["exceptions"]),
        obj["verified_up_to"],
        obj["low_confidence"],
        irregular=obj["status"] == "irregular",
    )


@dataclass(frozen=True)
class ReportDocument:
    command: str
    lambda_ps: Weight
    n_max: int | None = None
    selection: str | None = None
    operators: tuple[OperatorRecord, ...] = ()
    tables: tuple[KTypeTable, ...] = ()
    patterns: tuple[PatternSummary, ...] = ()
    version: str = field(default=__version__)

    def to_json(self) -> dict[str, Any]:
        return {
            "schema_version": SCHEMA_VERSION,
            "metadata": {
                "tool": TOOL,
                "version": self.version,
                "command": self.command,
                "lambda_ps": weight_to_json(self.lambda_ps),
                "n_max": self.n_max,
                "selection": self.selection,
            },
            "operators": [_operator_to_json(r) for r in self.operators],
            "ktype_tables": [_table_to_json(t) for t in self.tables],
            "patterns": [_pattern_to_json(p) for p in self.patterns],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "ReportDocument":
        meta = obj["metadata"]
        return cls(
            command=meta["command"],
            lambda_ps=weight_from_json(meta["lambda_ps"]),
            n_max=meta["n_max"],
            selection=meta["selection"],
            operators=tuple(_operator_from_json(o) for o in obj["operators"]),
            tables=tuple(_table_from_json(t) for t in obj["ktype_tables"]),
            patterns=tuple(_pattern_from_json(p) for p in obj["patterns"]),
            version=meta["version"],
        )


def to_json_text(doc: ReportDocument) -> str:
    return json.dumps(doc.to_json(), indent=2, ensure_ascii=False) + "\n"


def from_json_text(text: str) -> ReportDocument:
    return ReportDocument.from_json(json.loads(text))


# ---------------------------------------------------------------------------
# Markdown
# ---------------------------------------------------------------------------

def _mrep_text(m: Counter) -> str:
    parts = []
    for r in IRREPS:
        k = m.get(r.label, 0)
        if k:
            parts.append(r.label if k == 1 else f"{k}{r.label}")
    return " + ".join(parts) if parts else "0"


def render_markdown(doc: ReportDocument) -> str:
    lines = [f"# {TOOL} {doc.command} report", ""]
    lines.append(f"- lambda_ps: {doc.lambda_ps}")
    if doc.n_max is not None:
        lines.append(f"- n_max: {doc.n_max}")
    if doc.selection:
        lines.append(f"- operator: {doc.selection}")
    lines.append(f"- version: {doc.version}")
    lines.append("")

    if doc.command == "classify":
        lines.append(f"## Operators ({len(doc.operators)})")
        lines.append("")
        if doc.operators:
            lines.append("| label | nu_target | u_bar (normal form) | character | order | u_flat |")
            lines.append("|---|---|---|---|---|---|")
            for r in doc.operators:
                lines.append(f"| {r.label} | {r.nu_target} | {r.u_bar} | {r.chi.label} | {r.order} | {r.u_flat} |")
        else:
            lines.append("No singular vectors: no intertwining operators at this parameter.")
        lines.append("")

    for t, p in zip(doc.tables, doc.patterns):
        lines.append(f"## K-types of {t.operator_label}, sigma = {t.sigma.label}")
        lines.append("")
        nz = [r for r in t.rows if r.multiplicity]
        if nz:
            lines.append("| n | dim Sol(n) | M~-decomposition | multiplicity |")
            lines.append("|---|---|---|---|")
            for r in nz:
                lines.append(f"| {r.n} | {r.kernel_dim} | {_mrep_text(r.mrep)} | {r.multiplicity} |")
        else:
            lines.append(f"Empty: multiplicity 0 for every n <= {t.n_max}.")
        lines.append("")
        lines.append(f"Pattern: {p.describe()}")
        lines.append("")
    return "\n".join(lines)


def schema_path():
    """Location of the JSON schema every report validates against."""
    from importlib.resources import files
    return files("sl3ops") / "schema" / "report.schema.json"
