"""Command-line entry point: verification commands, audits, report emission.

Exit codes are a stable contract: 0 all checks pass, 1 a verification or
constraint failed, 2 usage error (bad bounds, bad sequence file, crossing
cap exceeded).  Output is deterministic: basis elements in canonical
order, exponents ascending, byte-identical across runs and across worker
counts.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

from .diagram import (
    Diagram,
    Disk,
    build_core_stack,
    build_d1_xy,
    build_kink,
    build_theta_over_cores,
    build_xk_yn,
    build_zkn,
)
from .laurent import LaurentPoly, q_power
from .positivity import (
    ConstraintReport,
    minimality_constraints,
    q_constraints,
    structure_constant_audit,
)
from .sequences import CHEBYSHEV, POWER, CustomSequence, SequenceSpec, UniPoly, chebyshev
from .skein import (
    CrossingCapExceeded,
    DEFAULT_CROSSING_CAP,
    SkeinVector,
    full_boundary_ideal,
    grid_ideal,
    normal_form,
    resolve_all,
    resolve_all_mod,
    theta_bullet,
    theta_transport_target,
)


@dataclass
class RunConfig:
    command: str
    n: int | None = None
    k: int | None = None
    max_n: int | None = None
    k_max: int | None = None
    seq: str = "chebyshev"
    diagram: str | None = None
    ideal: str = "none"
    fmt: str = "text"
    cap: int = DEFAULT_CROSSING_CAP
    jobs: int = 1
    q1: bool = False
    diagram_check: bool = False


class UsageError(Exception):
    """Bad bounds or configuration; maps to exit code 2."""


def load_sequence(spec: str) -> SequenceSpec:
    """Resolve "chebyshev", "power", or a JSON file of coefficient arrays.

    The file holds either a list of coefficient arrays indexed by degree,
    or {"base": "chebyshev"|"power", "polys": {"n": [coeffs...]}} to
    override single entries.  A coefficient is an int or an {exponent:
    int} object.
    """
    if spec == "chebyshev":
        return CHEBYSHEV
    if spec == "power":
        return POWER
    try:
        with open(spec) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read sequence file {spec!r}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"sequence file {spec!r} is not valid JSON: {exc}") from exc

    def coeff(entry) -> LaurentPoly:
        if isinstance(entry, int):
            return LaurentPoly(entry)
        if isinstance(entry, dict):
            return LaurentPoly.from_json_dict(entry)
        raise UsageError(f"bad coefficient entry {entry!r} in {spec!r}")

    def poly(entries) -> UniPoly:
        if not isinstance(entries, list):
            raise UsageError(f"polynomial entries must be arrays in {spec!r}")
        return UniPoly([coeff(e) for e in entries])

    try:
        if isinstance(data, list):
            return CustomSequence({i: poly(p) for i, p in enumerate(data)})
        if isinstance(data, dict):
            base_name = data.get("base")
            base = None
            if base_name is not None:
                if base_name not in ("chebyshev", "power"):
                    raise UsageError(f"unknown base sequence {base_name!r}")
                base = CHEBYSHEV if base_name == "chebyshev" else POWER
            polys = {int(i): poly(p) for i, p in data.get("polys", {}).items()}
            return CustomSequence(polys, base=base)
    except ValueError as exc:
        raise UsageError(f"invalid sequence in {spec!r}: {exc}") from exc
    raise UsageError(f"sequence file {spec!r} must hold a list or an object")


# -- rendering -----------------------------------------------------------------


def _coeff_repr(c: LaurentPoly, q1: bool):
    return c.eval_q1() if q1 else c.to_json_dict()


def render_vector(v: SkeinVector, q1: bool = False) -> str:
    if q1:
        if v.is_zero():
            return "0"
        parts = []
        for b, c in v.items():
            val = c.eval_q1()
            bl = b.label()
            parts.append(str(val) if bl == "1" else f"{val}·{bl}")
        return " + ".join(parts)
    return str(v)


def vector_json(v: SkeinVector, q1: bool = False) -> list[dict]:
    return [{"basis": b.label(), "coeff": _coeff_repr(c, q1)} for b, c in v.items()]


@dataclass
class CaseResult:
    label: str
    lhs: SkeinVector
    rhs: SkeinVector

    @property
    def ok(self) -> bool:
        return self.lhs == self.rhs


@dataclass
class IdentityReport:
    """A verification command's report: one line per checked case."""

    name: str
    statement: str
    cases: list[CaseResult] = field(default_factory=list)

    def ok(self) -> bool:
        return all(c.ok for c in self.cases)


def emit_report(report, fmt: str, q1: bool = False) -> str:
    """Deterministic rendering of any report object in the chosen format."""
    if isinstance(report, IdentityReport):
        return _emit_identity(report, fmt, q1)
    if isinstance(report, ConstraintReport):
        return _emit_constraints(report, fmt, q1)
    if isinstance(report, SkeinVector):
        if fmt == "json":
            return json.dumps(vector_json(report, q1), indent=2)
        if fmt == "tsv":
            rows = [
                f"{b.label()}\t{report.coefficient(b).eval_q1() if q1 else report.coefficient(b)}"
                for b in report
            ]
            return "\n".join(rows) if rows else "0"
        return render_vector(report, q1)
    if isinstance(report, tuple):  # audit rows
        return _emit_audit(report, fmt)
    raise TypeError(f"no renderer for {type(report).__name__}")


def _emit_identity(report: IdentityReport, fmt: str, q1: bool) -> str:
    if fmt == "json":
        return json.dumps(
            {
                "name": report.name,
                "statement": report.statement,
                "cases": [
                    {
                        "case": c.label,
                        "lhs": vector_json(c.lhs, q1),
                        "rhs": vector_json(c.rhs, q1),
                        "ok": c.ok,
                    }
                    for c in report.cases
                ],
                "ok": report.ok(),
            },
            indent=2,
        )
    if fmt == "tsv":
        lines = [
            f"{c.label}\t{render_vector(c.lhs, q1)}\t{render_vector(c.rhs, q1)}\t"
            f"{'PASS' if c.ok else 'FAIL'}"
            for c in report.cases
        ]
        lines.append(f"RESULT\t{'PASS' if report.ok() else 'FAIL'}")
        return "\n".join(lines)
    lines = [f"{report.name}: {report.statement}"]
    for c in report.cases:
        mark = "PASS" if c.ok else "FAIL"
        lines.append(f"  {c.label}:")
        lines.append(f"    lhs = {render_vector(c.lhs, q1)}")
        lines.append(f"    rhs = {render_vector(c.rhs, q1)}   -> {mark}")
    lines.append(f"RESULT: {'PASS' if report.ok() else 'FAIL'}")
    return "\n".join(lines)


def _emit_constraints(report: ConstraintReport, fmt: str, q1: bool) -> str:
    conclusion = report.conclusion_at_q1() if q1 else report.conclusion
    if fmt == "json":
        data = report.to_json_dict(q1)
        data["conclusion"] = conclusion
        return json.dumps(data, indent=2)
    rows = []
    for x in report.constraints:
        if x.kind == "identity":
            rows.append((x.label, "exact", "identity", "PASS" if x.satisfied else "FAIL"))
            continue
        ok = (x.value.eval_q1() >= 0) if q1 else x.satisfied
        value = str(x.value.eval_q1()) if q1 else str(x.value)
        rows.append((x.label, value, "Z_+" if q1 else "R_+", "PASS" if ok else "FAIL"))
    if fmt == "tsv":
        lines = ["\t".join(r) for r in rows]
        lines.append(f"conclusion\t{conclusion}")
        return "\n".join(lines)
    lines = [f"{report.subject}"]
    if report.a is not None:
        lines.append(f"  P_1 constant a = {report.a.eval_q1() if q1 else report.a}")
    lines.append(
        "  coefficients: ["
        + ", ".join(str(x.eval_q1()) if q1 else str(x) for x in report.c)
        + "]"
    )
    width = max((len(r[0]) for r in rows), default=0)
    for label, value, req, mark in rows:
        lines.append(f"  {label.ljust(width)}  in {req}:  {value}   -> {mark}")
    lines.append(f"conclusion: {conclusion}")
    return "\n".join(lines)


def _emit_audit(rows, fmt: str) -> str:
    ok = all(r.all_positive for r in rows)
    if fmt == "json":
        return json.dumps(
            {
                "rows": [
                    {"m": r.m, "n": r.n, "all_positive": r.all_positive} for r in rows
                ],
                "ok": ok,
            },
            indent=2,
        )
    lines = [
        f"{r.m}\t{r.n}\t{'PASS' if r.all_positive else 'FAIL'}" for r in rows
    ]
    if fmt == "tsv":
        lines.append(f"RESULT\t{'PASS' if ok else 'FAIL'}")
        return "\n".join(lines)
    head = ["m\tn\tall structure constants positive"]
    head.extend(lines)
    head.append(f"RESULT: {'PASS' if ok else 'FAIL'}")
    return "\n".join(head)


# -- commands ------------------------------------------------------------------


def _cmd_verify_theta(cfg: RunConfig) -> tuple[bool, str]:
    if cfg.n is None or cfg.n < 1:
        raise UsageError("verify-theta needs --n >= 1")
    if cfg.n > cfg.cap:
        raise CrossingCapExceeded(
            f"n={cfg.n} needs {cfg.n} crossings; cap is {cfg.cap}"
        )
    report = IdentityReport(
        name="theta transport",
        statement=(
            "stacking the inner-to-outer arc above T_n(z) resolves to "
            "q^n·theta_n + q^-n·theta_-n"
        ),
    )
    for j in range(1, cfg.n + 1):
        lhs = theta_bullet(chebyshev(j), cap=cfg.cap, jobs=cfg.jobs)
        report.cases.append(CaseResult(f"n={j}", lhs, theta_transport_target(j)))
    return report.ok(), emit_report(report, cfg.fmt, cfg.q1)


def _cmd_verify_zkn(cfg: RunConfig) -> tuple[bool, str]:
    if cfg.k is None or cfg.n is None or not 1 <= cfg.k <= cfg.n:
        raise UsageError("verify-zkn needs 1 <= --k <= --n")
    k, n = cfg.k, cfg.n
    if k * n > cfg.cap:
        raise CrossingCapExceeded(
            f"k*n = {k * n} crossings exceed the cap {cfg.cap}"
        )
    lhs = resolve_all_mod(build_xk_yn(k, n), grid_ideal(n), cap=cfg.cap, jobs=cfg.jobs)
    rhs = normal_form(build_zkn(k, n)).scaled(q_power(-k * n))
    report = IdentityReport(
        name="grid quotient",
        statement=(
            f"x^{k} y_{n} equals q^-{k * n} z_({k},{n}) modulo the boundary "
            f"arcs p0p1..p{n - 1}p{n}"
        ),
        cases=[CaseResult(f"k={k},n={n}", lhs, rhs)],
    )
    return report.ok(), emit_report(report, cfg.fmt, cfg.q1)


def _cmd_verify_d1(cfg: RunConfig) -> tuple[bool, str]:
    d = build_d1_xy()
    lhs = resolve_all_mod(
        d, full_boundary_ideal(d.surface), cap=cfg.cap, jobs=cfg.jobs
    )
    report = IdentityReport(
        name="4-marked disk quotient",
        statement="x·y vanishes modulo the ideal of all four boundary arcs",
        cases=[CaseResult("xy mod boundary", lhs, SkeinVector.zero())],
    )
    return report.ok(), emit_report(report, cfg.fmt, cfg.q1)


def _cmd_audit(cfg: RunConfig) -> tuple[bool, str]:
    if cfg.max_n is None or cfg.max_n < 1:
        raise UsageError("audit needs --max-n >= 1")
    seq = load_sequence(cfg.seq)
    rows = structure_constant_audit(seq, cfg.max_n)
    return all(r.all_positive for r in rows), emit_report(rows, cfg.fmt, cfg.q1)


def _cmd_minimality(cfg: RunConfig) -> tuple[bool, str]:
    if cfg.n is None or cfg.n < 1:
        raise UsageError("minimality needs --n >= 1")
    seq = load_sequence(cfg.seq)
    report = minimality_constraints(seq, cfg.n)
    ok = (report.conclusion_at_q1() if cfg.q1 else report.conclusion) == "consistent"
    return ok, emit_report(report, cfg.fmt, cfg.q1)


def _cmd_arc_constraints(cfg: RunConfig) -> tuple[bool, str]:
    if cfg.n is None or cfg.n < 1:
        raise UsageError("arc-constraints needs --n >= 1")
    if cfg.diagram_check and cfg.n > 4:
        raise UsageError("--diagram-check supports n <= 4")
    seq = load_sequence(cfg.seq)
    report = q_constraints(
        seq,
        cfg.n,
        cfg.k_max,
        diagram_check=cfg.diagram_check,
        cap=cfg.cap,
        jobs=cfg.jobs,
    )
    ok = (report.conclusion_at_q1() if cfg.q1 else report.conclusion) == "consistent"
    return ok, emit_report(report, cfg.fmt, cfg.q1)


def _parse_diagram(spec: str) -> Diagram:
    name, _, args = spec.partition(":")
    try:
        if name == "core":
            return build_core_stack(int(args))
        if name == "theta":
            return build_theta_over_cores(int(args))
        if name in ("xkyn", "zkn"):
            k_s, _, n_s = args.partition(",")
            k, n = int(k_s), int(n_s)
            return build_xk_yn(k, n) if name == "xkyn" else build_zkn(k, n)
        if name == "d1":
            return build_d1_xy()
        if name == "kink":
            if args not in ("+", "-"):
                raise UsageError("kink takes + or -")
            return build_kink(1 if args == "+" else -1)
    except (ValueError, TypeError) as exc:
        raise UsageError(f"bad diagram spec {spec!r}: {exc}") from exc
    raise UsageError(
        f"unknown diagram {spec!r}; use core:K, theta:K, xkyn:K,N, zkn:K,N, d1, kink:+|-"
    )


def _cmd_resolve(cfg: RunConfig) -> tuple[bool, str]:
    if not cfg.diagram:
        raise UsageError("resolve needs a diagram spec")
    d = _parse_diagram(cfg.diagram)
    if cfg.ideal == "none":
        vec = resolve_all(d, cap=cfg.cap, jobs=cfg.jobs)
    else:
        if not isinstance(d.surface, Disk):
            raise UsageError("ideals only apply to disk diagrams")
        ideal = (
            full_boundary_ideal(d.surface)
            if cfg.ideal == "boundary"
            else grid_ideal((len(d.surface.points) - 2) // 2)
        )
        vec = resolve_all_mod(d, ideal, cap=cfg.cap, jobs=cfg.jobs)
    return True, emit_report(vec, cfg.fmt, cfg.q1)


_COMMANDS = {
    "verify-theta": _cmd_verify_theta,
    "verify-zkn": _cmd_verify_zkn,
    "verify-d1": _cmd_verify_d1,
    "audit": _cmd_audit,
    "minimality": _cmd_minimality,
    "arc-constraints": _cmd_arc_constraints,
    "resolve": _cmd_resolve,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="skeincalc",
        description=(
            "Exact Kauffman bracket skein calculator: identity verification "
            "by full crossing resolution, structure-constant audits, and "
            "positivity constraint reports."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser):
        p.add_argument(
            "--format",
            dest="fmt",
            choices=("text", "json", "tsv"),
            default="text",
            help="report format (default text)",
        )
        p.add_argument(
            "--cap",
            type=int,
            default=DEFAULT_CROSSING_CAP,
            help=f"crossing-count cap for full expansion (default {DEFAULT_CROSSING_CAP})",
        )
        p.add_argument("--jobs", type=int, default=1, help="worker processes")
        p.add_argument(
            "--q1", action="store_true", help="specialize all reports at q = 1"
        )

    p = sub.add_parser("verify-theta", help="check the arc transport identity")
    p.add_argument("--n", type=int, required=True, help="check levels 1..n")
    common(p)

    p = sub.add_parser("verify-zkn", help="check the grid quotient identity")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    common(p)

    p = sub.add_parser("verify-d1", help="check xy = 0 mod all boundary arcs")
    common(p)

    p = sub.add_parser("audit", help="structure-constant positivity audit")
    p.add_argument("--seq", default="chebyshev")
    p.add_argument("--max-n", dest="max_n", type=int, required=True)
    common(p)

    p = sub.add_parser("minimality", help="loop minimality constraint report")
    p.add_argument("--seq", default="chebyshev")
    p.add_argument("--n", type=int, required=True)
    common(p)

    p = sub.add_parser("arc-constraints", help="arc sequence constraint report")
    p.add_argument("--seq", default="power")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k-max", dest="k_max", type=int, default=None)
    p.add_argument(
        "--diagram-check",
        action="store_true",
        help="re-derive the quotient weights with the resolution engine",
    )
    common(p)

    p = sub.add_parser("resolve", help="fully resolve a builder diagram")
    p.add_argument(
        "diagram", help="core:K, theta:K, xkyn:K,N, zkn:K,N, d1, or kink:+|-"
    )
    p.add_argument(
        "--ideal",
        choices=("none", "boundary", "grid"),
        default="none",
        help="discard states landing in this boundary-arc ideal",
    )
    common(p)
    return parser


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(command=ns.command)
    for name in (
        "n",
        "k",
        "max_n",
        "k_max",
        "seq",
        "diagram",
        "ideal",
        "fmt",
        "cap",
        "jobs",
        "q1",
        "diagram_check",
    ):
        if hasattr(ns, name):
            setattr(cfg, name, getattr(ns, name))
    return cfg


def run(cfg: RunConfig) -> int:
    """Execute one command; returns the process exit code."""
    try:
        if cfg.jobs < 1:
            raise UsageError("--jobs must be >= 1")
        if cfg.cap < 0:
            raise UsageError("--cap must be >= 0")
        ok, text = _COMMANDS[cfg.command](cfg)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CrossingCapExceeded as exc:
        print(f"refusing to expand: {exc}", file=sys.stderr)
        return 2
    print(text)
    return 0 if ok else 1


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    code = run(config_from_args(ns))
    if argv is None:
        sys.exit(code)
    return code
