"""Command-line front end: ``sl3ops classify | ktypes | selftest``."""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from .algebra import RHO, RHO_TILDE, Weight
from .pipeline import DEFAULT_NMAX, build_operators, infer_pattern, ktype_table
from .qmchar import IRREP_BY_LABEL
from .report import ReportDocument, render_markdown, to_json_text
from .scalars import parse_rational

__all__ = ["main", "parse_lambda", "parse_sigma", "UsageError", "SIGMA_ALIASES"]

LAMBDA_ALIASES = {"-rho": -RHO, "-rho/2": -RHO_TILDE, "rho": RHO, "rho/2": RHO_TILDE}
SIGMA_ALIASES = {"++": "(+,+)", "+-": "(+,-)", "-+": "(-,+)", "--": "(-,-)", "H": "H"}
# Options whose values may begin with '-' (e.g. "-rho", "-1,-1", "--").
_VALUE_OPTS = ("--lambda", "--sigma", "--u")


class UsageError(ValueError):
    pass


def parse_lambda(text: str) -> Weight:
    key = text.strip()
    if key in LAMBDA_ALIASES:
        return LAMBDA_ALIASES[key]
    parts = key.split(",")
    if len(parts) != 2:
        raise UsageError(f"--lambda: expected 'a,b' or one of {', '.join(LAMBDA_ALIASES)}; got {text!r}")
    coords = []
    for tok in parts:
        try:
            coords.append(parse_rational(tok))
        except ValueError:
            raise UsageError(f"--lambda: bad token {tok.strip()!r} in {text!r}") from None
    return Weight(*coords)


def parse_sigma(text: str):
    label = SIGMA_ALIASES.get(text.strip(), text.strip())
    if label not in IRREP_BY_LABEL:
        raise UsageError(f"--sigma: unknown irrep {text!r}; valid labels: {', '.join(SIGMA_ALIASES)}")
    return IRREP_BY_LABEL[label]


def _join_values(argv: Sequence[str]) -> list[str]:
    out, i = [], 0
    argv = list(argv)
    while i < len(argv):
        a = argv[i]
        if a in _VALUE_OPTS and i + 1 < len(argv):
            val = argv[i + 1]
            i += 2
        elif "=" in a and a.split("=", 1)[0] in _VALUE_OPTS:
            a, val = a.split("=", 1)
            i += 1
        else:
            out.append(a)
            i += 1
            continue
        if a == "--sigma":
            # argparse mangles a bare "--" value, so expand aliases up front.
            val = SIGMA_ALIASES.get(val, val)
        out.append(f"{a}={val}")
    return out


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sl3ops", description="Intertwining operators for SL(3,R) "
                                "principal series and the K-types of their solution spaces.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--lambda", dest="lam", required=True,
                        help="principal-series parameter 'a,b' (coefficients of alpha, beta) or -rho, -rho/2")
        sp.add_argument("--format", choices=("md", "json"), default="md")
        sp.add_argument("--out", default=None, help="output file (default stdout)")

    common(sub.add_parser("classify", help="list singular vectors, characters and flattenings"))
    kt = sub.add_parser("ktypes", help="K-type table of a solution space")
    common(kt)
    kt.add_argument("--u", required=True, help="operator label from classify, or 'A,B' for a common system")
    kt.add_argument("--sigma", required=True, help="M~ irrep: ++, +-, -+, --, H")
    kt.add_argument("--nmax", type=int, default=DEFAULT_NMAX)
    st = sub.add_parser("selftest", help="golden values and property checks")
    st.add_argument("--out", default=None)
    return p


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _render(doc: ReportDocument, fmt: str) -> str:
    return to_json_text(doc) if fmt == "json" else render_markdown(doc)


def cmd_classify(lam: Weight, fmt: str = "md") -> str:
    doc = ReportDocument("classify", lam, operators=tuple(build_operators(lam)))
    return _render(doc, fmt)


def cmd_ktypes(lam: Weight, selector: str, sigma, n_max: int, fmt: str = "md") -> str:
    if n_max < 0:
        raise UsageError(f"--nmax must be nonnegative, got {n_max}")
    ops = build_operators(lam)
    by_label = {r.label: r for r in ops}
    wanted = [s.strip() for s in selector.split(",")]
    missing = [s for s in wanted if s not in by_label]
    if missing:
        valid = ", ".join(by_label) if by_label else "(none: no operators at this parameter)"
        raise UsageError(f"--u: unknown operator {missing[0]!r}; valid labels: {valid}")
    chosen = [by_label[s] for s in wanted]
    label = ",".join(r.label for r in chosen)
    table = ktype_table([r.u_flat for r in chosen], lam, sigma, n_max, label=label)
    doc = ReportDocument("ktypes", lam, n_max=n_max, selection=label, operators=tuple(chosen),
                         tables=(table,), patterns=(infer_pattern(table),))
    return _render(doc, fmt)


def main(argv: Sequence[str] | None = None) -> int:
    argv = _join_values(sys.argv[1:] if argv is None else argv)
    args = _parser().parse_args(argv)
    try:
        if args.command == "selftest":
            from .selftest import run_selftest
            code, text = run_selftest()
            _emit(text, args.out)
            return code
        lam = parse_lambda(args.lam)
        if args.command == "classify":
            text = cmd_classify(lam, args.format)
        else:
            text = cmd_ktypes(lam, args.u, parse_sigma(args.sigma), args.nmax, args.format)
    except UsageError as exc:
        print(f"sl3ops: error: {exc}", file=sys.stderr)
        return 2
    _emit(text, args.out)
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
