"""Command line front end: ``decompose``, ``verify`` and ``bench``.

Exit codes: 0 success, 1 engine error (or a verification mismatch), 2 usage or
parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from mptd.bench import parse_degrees, run_bench
from mptd.decomp import Decomposition, bivariate_decompose, report_multiplicities, signed_decompose
from mptd.oracle import cross_check, multiplicities_by_shear
from mptd.parse import ParseError, parse_poly, parse_vars
from mptd.polyring import Poly, PolyError, VarOrder

EXIT_OK, EXIT_ENGINE, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class SystemInput:
    order: VarOrder
    polys: tuple[Poly, Poly]
    trace: bool = False
    verify: bool = False
    fmt: str = "json"

    def __post_init__(self):
        if len(self.polys) != 2:
            raise UsageError(f"expected exactly two polynomials, got {len(self.polys)}")


@dataclass
class OutputDocument:
    variables: list[str]
    system: list[str]
    components: list[dict]
    pending: list[dict] = field(default_factory=list)
    multiplicities: list[dict] | None = None
    total: int | None = None
    trace: list[dict] | None = None
    verification: dict | None = None

    @property
    def ok(self) -> bool:
        return self.verification is None or bool(self.verification.get("match"))

    def to_dict(self) -> dict:
        return {
            "variables": self.variables,
            "system": self.system,
            "components": self.components,
            "pending": self.pending,
            "multiplicities": self.multiplicities,
            "total": self.total,
            "trace": self.trace,
            "verification": self.verification,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_text(self) -> str:
        names = self.variables
        lines = [f"variables: {' < '.join(names)} (main variable {names[-1]})",
                 f"system: {self.system[0]} ; {self.system[1]}", "components:"]
        for c in self.components:
            lines.append(f"  {c['weight']:+d}  ({c['lower']}, {c['upper']})")
        if not self.components:
            lines.append("  (none)")
        if self.pending:
            lines.append("pending:")
            for p in self.pending:
                lines.append(f"  {p['weight']:+d}  [{p['system'][0]} ; {p['system'][1]}]  from {p['source']}")
        if self.multiplicities is not None:
            lines.append(f"multiplicities (total {self.total}):")
            for m in self.multiplicities:
                lines.append(f"  {m['multiplicity']}  ({m['lower']}, {m['upper']})")
        if self.trace is not None:
            lines.append("trace:")
            for s in self.trace:
                lines.append("  step {index} [{branch}]: m={m} q={q} p={p} w={w} g={g} -> {f_next}".format(**s))
        if self.verification is not None:
            v = self.verification
            status = "match" if v["match"] else "MISMATCH"
            lines.append(f"verification: {status} (shear {v['oracle']['shear']}, oracle total {v['oracle']['total']})")
            for d in v["diff"]:
                lines.append(f"  {json.dumps(d)}")
        return "\n".join(lines)


def run_decompose(inp: SystemInput) -> OutputDocument:
    """Decompose (all-positive in two variables, signed otherwise) and fill the document."""
    f1, f2 = inp.polys
    if inp.verify and len(inp.order) != 2:
        raise UsageError("--verify needs exactly two variables")
    d: Decomposition = bivariate_decompose(f1, f2) if len(inp.order) == 2 else signed_decompose(f1, f2)
    body = d.to_dict()
    doc = OutputDocument(list(inp.order.names), [str(f1), str(f2)], body["components"], body["pending"])
    if len(inp.order) == 2:
        rep = report_multiplicities(d)
        doc.multiplicities, doc.total = rep.to_list(), rep.total
    if inp.trace:
        doc.trace = d.trace.trace() if d.trace is not None else []
    if inp.verify:
        r = multiplicities_by_shear(f1, f2)
        doc.verification = {**cross_check(d, r).to_dict(), "oracle": r.to_dict()}
    return doc


# ---------------------------------------------------------------------------
# input


def _read_system(args) -> SystemInput:
    texts: list[str] = list(args.expr or [])
    names = args.vars
    if args.file is not None:
        if texts:
            raise UsageError("give either an input file or --expr, not both")
        raw = sys.stdin.read() if args.file == "-" else Path(args.file).read_text()
        if raw.lstrip().startswith("{"):
            try:
                data = json.loads(raw)
            except json.JSONDecodeError as exc:
                raise UsageError(f"invalid JSON input: {exc}") from None
            texts = list(data.get("polys", []))
            if names is None and data.get("vars"):
                names = ",".join(data["vars"])
        else:
            texts = [ln.strip() for ln in raw.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if len(texts) != 2:
        raise UsageError(f"expected exactly two polynomials, got {len(texts)}")
    order = parse_vars(names or "x,y")
    polys = tuple(parse_poly(t, order) for t in texts)
    return SystemInput(order, polys, trace=args.trace, verify=args.verify, fmt=args.format)


# ---------------------------------------------------------------------------
# commands


def _cmd_decompose(args) -> int:
    inp = _read_system(args)
    doc = run_decompose(inp)
    print(doc.to_json() if inp.fmt == "json" else doc.to_text())
    return EXIT_OK if doc.ok else EXIT_ENGINE


def _cmd_verify(args) -> int:
    args.verify = True
    return _cmd_decompose(args)


def _cmd_bench(args) -> int:
    try:
        degrees = parse_degrees(args.degrees)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    report = run_bench(degrees, args.count, seed=args.seed, verify_fraction=args.verify_fraction)
    for w in report.warnings:
        print(f"warning: {w}", file=sys.stderr)
    if args.format == "json":
        print(json.dumps({
            "means": {f"[{a},{b}]": m for (a, b), m in report.means().items()},
            "monotone": report.monotone(),
            "checked": len(report.checked()),
            "failures": len(report.failures()),
            "warnings": report.warnings,
        }, indent=2))
    else:
        sys.stdout.write(report.to_csv())
    return EXIT_ENGINE if report.failures() else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="mptd", description="Multiplicity preserving triangular decomposition")
    sub = ap.add_subparsers(dest="command", required=True)

    def system_args(p):
        p.add_argument("file", nargs="?", help="file with two polynomials (one per line, or JSON); '-' for stdin")
        p.add_argument("--expr", action="append", metavar="POLY", help="polynomial (give twice)")
        p.add_argument("--vars", help="variable order, lowest first; the last is the main variable (default x,y)")
        p.add_argument("--format", choices=["json", "text"], default="json")
        p.add_argument("--trace", action="store_true", help="include the PRS step ledger")

    p = sub.add_parser("decompose", help="decompose a system of two polynomials")
    system_args(p)
    p.add_argument("--verify", action="store_true", help="compare with the shear/resultant oracle")
    p.set_defaults(func=_cmd_decompose)

    p = sub.add_parser("verify", help="decompose and compare with the oracle (two variables)")
    system_args(p)
    p.set_defaults(func=_cmd_verify, verify=True)

    p = sub.add_parser("bench", help="time random dense systems")
    p.add_argument("--degrees", default="5,4;7,5;9,7;13,11", help="pairs like '5,4;7,5' or '[5,4] [7,5]'")
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--verify-fraction", type=float, default=0.1)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.set_defaults(func=_cmd_bench)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (ParseError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PolyError as exc:
        print(f"engine error: {exc}", file=sys.stderr)
        return EXIT_ENGINE


if __name__ == "__main__":
    sys.exit(main())
