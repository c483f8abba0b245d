"""``lefschetz-lab`` command line front end.

Exit codes: 0 success, 1 a mathematical check failed, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from typing import Sequence

from .cohomology import CohomologyEngine, PreconditionError
from .exterior import Form
from .foliated import BasicClosureError, LieModel, NotIsoparametricError, validate_model
from .identities import Context, run_identities, summarize
from .linalg import DegreeOperator
from .modelfile import ModelFileError, dump_model, load_model
from .models import CATALOG_NAMES, get_model

EXIT_OK, EXIT_MATH, EXIT_INPUT = 0, 1, 2
REPORT_IDENTITY_SEED = 0
REPORT_IDENTITY_COUNT = 10


class UsageError(Exception):
    """A command-line argument is out of range."""


class _Style:
    CODES = {"pass": "32", "fail": "31", "skip": "33", "head": "1"}

    def __init__(self, stream):
        mode = os.environ.get("LEFSCHETZ_LAB_COLOR", "auto").strip().lower() or "auto"
        if mode not in ("auto", "never", "always"):
            print(f"warning: LEFSCHETZ_LAB_COLOR={mode!r} not understood, using auto", file=sys.stderr)
            mode = "auto"
        if mode == "auto":
            self.on = hasattr(stream, "isatty") and stream.isatty() and "NO_COLOR" not in os.environ
        else:
            self.on = mode == "always"

    def __call__(self, role: str, text: str) -> str:
        if not self.on:
            return text
        return f"\033[{self.CODES[role]}m{text}\033[0m"


def _qualified(exc: Exception) -> str:
    return f"{type(exc).__module__}: {exc}"


def form_json(phi: Form) -> dict[str, str]:
    return {phi.label(k): str(c) for k, c in sorted(phi.coeffs.items())}


def form_text(phi: Form) -> str:
    if not phi:
        return "0"
    return str(type(phi)(phi.frame, phi.degree, dict(sorted(phi.coeffs.items()))))


def matrix_json(op: DegreeOperator) -> list[list[str]]:
    return [[str(x) for x in row] for row in op.matrix]


# ----------------------------------------------------------------------
# report assembly


def build_report(model: LieModel, identity_seed: int = REPORT_IDENTITY_SEED,
                 identity_count: int = REPORT_IDENTITY_COUNT) -> dict:
    """Everything the ``report`` command prints, as JSON-ready data."""
    validation = validate_model(model)
    out: dict = {
        "model": model.name,
        "dimension": model.frame.m,
        "p": model.p,
        "n": model.n,
        "validation": validation.as_dict(),
    }
    if not validation.ok:
        return out
    engine = CohomologyEngine(model)
    mc = engine.mc
    out["basic_dims"] = engine.complex.dims
    out["kappa"] = form_json(mc.kappa)
    out["isoparametric"] = mc.is_basic_kappa
    out["d_kappa_zero"] = mc.d_kappa_zero
    out["phi0"] = form_json(mc.phi0)
    out["phi0_equals_omega"] = mc.phi0 == model.omega
    out["taut"] = engine.tautness_check() if mc.is_basic_kappa else None
    out["H_B"] = engine.dims("dB")
    out["even_betti"] = engine.even_betti_check()
    try:
        out["H_kappa"] = engine.dims("dKappa")
    except PreconditionError as exc:
        out["H_kappa"] = None
        out["H_kappa_reason"] = str(exc)
    try:
        check = engine.hard_lefschetz_check()
    except PreconditionError as exc:
        out["lefschetz"] = []
        out["harmonic"] = []
        out["hard_lefschetz"] = {"skipped": str(exc)}
    else:
        out["lefschetz"] = [
            {"r": s.r, "source_degree": model.n - s.r, "target_degree": model.n + s.r,
             "source_dim": s.source_dim, "target_dim": s.target_dim, "rank": s.rank,
             "surjective": s.surjective, "matrix": matrix_json(s.matrix)}
            for s in check.steps]
        out["harmonic"] = [
            {"degree": r, "representatives": [None if h is None else form_json(h) for h in reps]}
            for r, reps in sorted(check.representatives.items())]
        out["hard_lefschetz"] = {
            "harmonic_representatives_exist": check.condition1,
            "lefschetz_surjective": check.condition2,
            "equivalent": check.equivalent,
            "missing": [[r, i + 1] for r, i in check.missing],
        }
    results = run_identities(model, identity_seed, identity_count, ctx=Context(model, engine.ops))
    out["identities"] = {
        "seed": identity_seed, "count": identity_count, **summarize(results),
        "failed": [r.name for r in results if r.status == "fail"],
        "skipped_reasons": {r.name: r.reason for r in results if r.status == "skipped"},
    }
    return out


def report_exit_code(report: dict) -> int:
    if not report["validation"]["ok"]:
        return EXIT_MATH
    if report["identities"]["failed"]:
        return EXIT_MATH
    hl = report["hard_lefschetz"]
    if "equivalent" in hl and not hl["equivalent"]:
        return EXIT_MATH
    return EXIT_OK


def dumps(data) -> str:
    return json.dumps(data, indent=2) + "\n"


def _fmt_dims(dims) -> str:
    return "(" + ", ".join(str(d) for d in dims) + ")"


def _fmt_form(table: dict[str, str]) -> str:
    if not table:
        return "0"
    parts = []
    for label, c in table.items():
        c = Fraction(c)
        body = label if abs(c) == 1 else f"{abs(c)}*{label}"
        parts.append(("- " if c < 0 else "+ ") + body)
    text = " ".join(parts)
    return text[2:] if text.startswith("+ ") else "-" + text[2:]


def render_report(report: dict, style: _Style) -> str:
    lines = [style("head", f"model {report['model']}  (m={report['dimension']}, p={report['p']}, n={report['n']})")]
    v = report["validation"]
    for c in v["checks"]:
        mark = style("pass", "ok") if c["passed"] else style("fail", "FAIL")
        lines.append(f"  {c['name']:<26} {mark}" + (f"  {c['detail']}" if c["detail"] else ""))
    lines.append(f"  unimodular                 {'yes' if v['unimodular'] else 'no'}")
    if not v["ok"]:
        lines.append(style("fail", "model is invalid; nothing else computed"))
        return "\n".join(lines) + "\n"
    lines.append(f"basic dims      {_fmt_dims(report['basic_dims'])}")
    lines.append(f"kappa           {_fmt_form(report['kappa'])}"
                 + ("" if report["isoparametric"] else "  (not basic: not isoparametric)"))
    lines.append(f"phi0            {_fmt_form(report['phi0'])}"
                 + ("  (= omega)" if report["phi0_equals_omega"] else ""))
    taut = report["taut"]
    lines.append(f"taut            {'n/a' if taut is None else str(taut).lower()}")
    lines.append(f"H_B             {_fmt_dims(report['H_B'])}")
    if report["H_kappa"] is None:
        lines.append(f"H_kappa         n/a ({report['H_kappa_reason']})")
    else:
        lines.append(f"H_kappa         {_fmt_dims(report['H_kappa'])}")
    eb = report["even_betti"]
    if eb["taut"]:
        lines.append(f"even H_B nonzero {str(eb['holds']).lower()}")
    hl = report["hard_lefschetz"]
    if "skipped" in hl:
        lines.append(style("skip", f"hard Lefschetz check skipped: {hl['skipped']}"))
    else:
        lines.append(style("head", "Lefschetz maps on H_kappa"))
        for s in report["lefschetz"]:
            verdict = style("pass", "surjective") if s["surjective"] else style("fail", "NOT surjective")
            lines.append(f"  r={s['r']}: H^{s['source_degree']} ({s['source_dim']}) -> "
                         f"H^{s['target_degree']} ({s['target_dim']}), rank {s['rank']}, {verdict}")
        lines.append(style("head", "harmonic representatives"))
        for entry in report["harmonic"]:
            for i, rep in enumerate(entry["representatives"], 1):
                if rep is None:
                    lines.append(f"  H^{entry['degree']}: " + style("fail", f"NONE for class #{i}"))
                else:
                    lines.append(f"  H^{entry['degree']} class #{i}: {_fmt_form(rep)}")
        lines.append(f"every class has a harmonic representative  {str(hl['harmonic_representatives_exist']).lower()}")
        lines.append(f"every Lefschetz map surjective             {str(hl['lefschetz_surjective']).lower()}")
        eq = style("pass", "true") if hl["equivalent"] else style("fail", "false")
        lines.append(f"equivalent                                 {eq}")
    ids = report["identities"]
    lines.append(f"identities (seed {ids['seed']}, {ids['count']} samples): "
                 f"{ids['pass']} pass, {ids['fail']} fail, {ids['skipped']} skipped")
    return "\n".join(lines) + "\n"


# ----------------------------------------------------------------------
# commands


def _load(path: str) -> LieModel:
    return load_model(path)


def cmd_validate(args, out, style) -> int:
    model = _load(args.path)
    report = validate_model(model)
    for c in report.checks:
        mark = style("pass", "ok") if c.passed else style("fail", "FAIL")
        out.write(f"{c.name:<26} {mark}" + (f"  {c.detail}" if c.detail else "") + "\n")
    out.write(f"unimodular                 {'yes' if report.unimodular else 'no'}\n")
    out.write(("valid" if report.ok else "invalid") + "\n")
    return EXIT_OK if report.ok else EXIT_MATH


def cmd_report(args, out, style) -> int:
    model = _load(args.path)
    report = build_report(model)
    if args.format == "json":
        out.write(dumps(report))
    else:
        out.write(render_report(report, style))
    return report_exit_code(report)


def cmd_identities(args, out, style) -> int:
    if args.count < 0:
        raise UsageError("--count must be non-negative")
    model = _load(args.path)
    validation = validate_model(model)
    if not validation.ok:
        for c in validation.failures():
            out.write(f"invalid model: {c.name} {c.detail}\n")
        return EXIT_MATH
    results = run_identities(model, args.seed, args.count)
    if args.format == "json":
        out.write(dumps({"model": model.name, "seed": args.seed, "count": args.count,
                         "summary": summarize(results),
                         "identities": [r.as_dict() for r in results]}))
    else:
        for r in results:
            if r.status == "pass":
                tag = style("pass", "pass")
            elif r.status == "fail":
                tag = style("fail", "FAIL")
            else:
                tag = style("skip", f"skipped: {r.reason}")
            out.write(f"{r.name:<28} {tag}  {r.formula}\n")
            if r.counterexample:
                out.write("    counterexample: " + ", ".join(r.counterexample) + "\n")
        s = summarize(results)
        out.write(f"{s['pass']} pass, {s['fail']} fail, {s['skipped']} skipped "
                  f"(seed {args.seed}, {args.count} samples each)\n")
    return EXIT_MATH if any(r.status == "fail" for r in results) else EXIT_OK


def cmd_harmonic(args, out, style) -> int:
    model = _load(args.path)
    validation = validate_model(model)
    if not validation.ok:
        for c in validation.failures():
            out.write(f"invalid model: {c.name} {c.detail}\n")
        return EXIT_MATH
    engine = CohomologyEngine(model)
    r = args.degree
    if not 0 <= r <= 2 * model.n:
        raise UsageError(f"--degree must lie in 0..{2 * model.n}")
    group = engine.cohomology("dKappa", r)
    if not group.dimension:
        out.write(f"H_kappa^{r} = 0, nothing to represent\n")
        return EXIT_OK
    for i, cls in enumerate(group.representatives, 1):
        h = engine.harmonic_representative(cls)
        text = style("fail", "NONE") if h is None else form_text(h)
        out.write(f"class #{i} [{form_text(cls)}]: {text}\n")
    return EXIT_OK


def cmd_export(args, out, style) -> int:
    try:
        entry = get_model(args.name)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None
    text = dump_model(entry.model)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        out.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lefschetz-lab",
        description="Exact symplectic Hodge calculus on Lie-algebra models of transversely symplectic foliations.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="structural checks of a model file")
    p.add_argument("path")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("report", help="cohomology, tautness and hard Lefschetz report")
    p.add_argument("path")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("identities", help="randomized exact check of the operator identities")
    p.add_argument("path")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_identities)

    p = sub.add_parser("harmonic", help="harmonic representatives of H_kappa in one degree")
    p.add_argument("path")
    p.add_argument("--degree", type=int, required=True)
    p.set_defaults(func=cmd_harmonic)

    p = sub.add_parser("export", help="write a built-in model as a model file")
    p.add_argument("name", help=", ".join(CATALOG_NAMES))
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_export)
    return parser


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    style = _Style(out)
    try:
        return args.func(args, out, style)
    except (ModelFileError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (PreconditionError, NotIsoparametricError, BasicClosureError) as exc:
        print(f"error: {_qualified(exc)}", file=sys.stderr)
        return EXIT_MATH


if __name__ == "__main__":
    sys.exit(main())
