"""Command-line interface: exponent, matrix, klein and verify subcommands."""
from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction
from typing import Sequence

from . import kernels, klein, verify, xcurve
from .arith import rat_str
from .invariants import exponent_exact
from .linalg import Mat

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


_NUMERIC = re.compile(r"^-?\d+(/\d+)?$")


class UsageError(ValueError):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False)


def _table(rows: Sequence[Sequence[str]], header: Sequence[str] | None = None) -> str:
    body = [list(header)] + [list(r) for r in rows] if header else [list(r) for r in rows]
    widths = [max(len(r[i]) for r in body) for i in range(len(body[0]))]
    lines = ["  ".join(cell.rjust(w) if _NUMERIC.match(cell) else cell.ljust(w)
                       for cell, w in zip(r, widths)).rstrip() for r in body]
    if header:
        lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def _opt(value) -> str:
    return "unavailable" if value is None else str(value)


def cmd_exponent(args) -> str:
    rep = exponent_exact(args.p, args.r, args.N, args.k)
    if args.format == "json":
        return _dump(rep.to_json())
    if args.format == "csv":
        raise UsageError("csv output is only available for matrices")
    lines = [
        f"X({args.N}*{args.p}^{args.r}), weight {2 * args.k}",
        f"upper bound  {rep.upper}",
        f"lower bound  {_opt(rep.lower)}",
        f"exact        {_opt(rep.exact)}",
    ]
    if rep.note:
        lines.append(f"note: {rep.note}")
    if rep.certificate:
        c = rep.certificate
        lines.append(f"certificate: family {{{c['family']}}} at level {c['level']}, "
                     f"valuation at 0 = {c['valuationAtZero']} (closed) / {c['valuationAtZeroPi']} (resultant)")
    lines.append("")
    lines.append(_table([(str(lab), rat_str(v)) for lab, v in rep.perComponent.items()],
                        header=("component", "bound")))
    if args.cusp_forms:
        lead_ratio = rat_str(Fraction(args.p**args.r, args.p * args.r - args.r + 1))
        lines += [
            "",
            f"cusp forms: upper bound  {rat_str(rep.cuspFormUpper)}",
            f"Edixhoven comparison     {rat_str(rep.edixhovenBound)}",
            f"ratio of leading terms   {lead_ratio}",
        ]
    else:
        lines += ["", f"cusp-form bound {rat_str(rep.cuspFormUpper)}, Edixhoven comparison {rat_str(rep.edixhovenBound)}"]
    return "\n".join(lines)


def _matrix_and_labels(p: int, r: int, which: str) -> tuple[Mat, list[str]]:
    if which == "M":
        return xcurve.build_M(p, r), [str(x) for x in xcurve.labels(p, r)]
    if which == "T":
        return xcurve.build_T(p, r), [str(x) for x in xcurve.t_labels(p, r)]
    return xcurve.tinv_closed_matrix(p, r), [str(x) for x in xcurve.t_labels(p, r)]


def cmd_matrix(args) -> str:
    xcurve.validate_pr(args.p, args.r)
    mat, labs = _matrix_and_labels(args.p, args.r, args.which)
    note = ("entries are deg S(N) * (T^-1)_ij" if args.which == "Tinv"
            else "entries are intersection numbers divided by deg S(N)")
    if args.format == "json":
        out = mat.to_json()
        out = {"which": args.which, "p": args.p, "r": args.r, "normalization": note,
               "labels": labs, **out}
        return _dump(out)
    if args.format == "csv":
        return f"# {args.which} for p={args.p}, r={args.r}; {note}\n" + mat.to_csv().rstrip("\n")
    rows = [[lab] + [rat_str(x) for x in mat.row(i)] for i, lab in enumerate(labs)]
    return f"{args.which} for p={args.p}, r={args.r} ({note})\n" + _table(rows, header=[""] + labs)


def _family(args) -> klein.KleinFamily:
    n = args.p**args.r
    if args.family:
        return klein.KleinFamily.parse(n, args.family)
    return klein.standard_family(args.p, args.r)


def cmd_klein(args) -> str:
    xcurve.validate_pr(args.p, args.r)
    if args.format == "csv":
        raise UsageError("csv output is only available for matrices")
    as_json = args.format == "json"
    action = args.action
    if action == "search":
        fams = klein.search_families(args.p**args.r, args.max_support, args.max_coeff)
        if as_json:
            return _dump([{"family": str(f), "valuationAtZero": klein.valuation_at_zero(f)} for f in fams])
        return _table([(str(f), str(klein.valuation_at_zero(f))) for f in fams],
                      header=("family", "valuation at 0")) if fams else "no families found"
    f = _family(args)
    if action == "check":
        res = {"family": str(f), "level": f.n, "weight": f.weight,
               "congruence": klein.check_congruence(f), "holomorphic": klein.is_holomorphic(f)}
        if as_json:
            return _dump(res)
        return "\n".join(f"{k:12} {v}" for k, v in res.items())
    if action == "order":
        table = klein.cusp_order_table(f)
        if as_json:
            return _dump([{"g": c.g, "a": c.a, "order": rat_str(v)} for c, v in table])
        return _table([(str(c.g), str(c.a), rat_str(v)) for c, v in table], header=("g", "a", "order"))
    if action == "qexp":
        series = klein.qexp_infinity(f, args.trunc) if args.cusp == "infinity" else klein.qexp_zero(f, args.trunc)
        if as_json:
            return _dump(series.to_json())
        lines = [f"expansion at {args.cusp} in q^(1/{series.denominator}), leading exponent "
                 f"{rat_str(series.leading_exponent)}"]
        for i, c in enumerate(series.coeffs):
            value = rat_str(c) if not hasattr(c, "serialize") else "[" + ", ".join(c.serialize()["coeffs"]) + "]"
            lines.append(f"{i:4}  {value}")
        return "\n".join(lines)
    # valuation
    res = {"family": str(f), "closed": klein.valuation_at_zero(f), "resultant": klein.valuation_at_zero_pi(f)}
    if as_json:
        return _dump(res)
    return "\n".join(f"{k:10} {v}" for k, v in res.items())


def cmd_verify(args) -> tuple[str, bool]:
    results = verify.run_suite(args.suite)
    ok = all(r.passed for r in results)
    if args.format == "json":
        return _dump({"backend": kernels.BACKEND, "passed": ok, "checks": [
            {"suite": r.suite, "check": r.name, "status": "PASS" if r.passed else "FAIL",
             "detail": r.detail} for r in results]}), ok
    rows = [("PASS" if r.passed else "FAIL", r.suite, r.name, f"{r.seconds * 1000:.1f} ms", r.detail)
            for r in results]
    total = sum(r.seconds for r in results)
    return (_table(rows, header=("status", "suite", "check", "time", "detail"))
            + f"\n{'all passed' if ok else 'FAILURES'} in {total:.2f} s (kernel backend: {kernels.BACKEND})"), ok


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="modexp", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def level(p: argparse.ArgumentParser) -> None:
        p.add_argument("--p", type=int, required=True, help="prime p")
        p.add_argument("--r", type=int, default=1, help="exponent r >= 1")

    fmt = dict(choices=("text", "json", "csv"), default="text")

    ex = sub.add_parser("exponent", help="exponent bounds for X(N p^r)")
    level(ex)
    ex.add_argument("--N", type=int, required=True, help="prime-to-p level N >= 3")
    ex.add_argument("--k", type=int, default=1, help="weight 2k")
    ex.add_argument("--cusp-forms", action="store_true", help="show the cusp-form bound section")
    ex.add_argument("--format", **fmt)

    mx = sub.add_parser("matrix", help="intersection matrix M, truncation T or its inverse")
    level(mx)
    mx.add_argument("--which", choices=("M", "T", "Tinv"), default="M")
    mx.add_argument("--format", **fmt)

    kl = sub.add_parser("klein", help="products of Klein forms of level p^r")
    kl.add_argument("action", choices=("check", "order", "qexp", "valuation", "search"))
    level(kl)
    kl.add_argument("--family", help='exponents as "t:m,t:m,..."; default is the standard family')
    kl.add_argument("--trunc", type=int, default=50, help="number of series terms")
    kl.add_argument("--cusp", choices=("infinity", "zero"), default="infinity")
    kl.add_argument("--max-support", type=int, default=3)
    kl.add_argument("--max-coeff", type=int, default=2)
    kl.add_argument("--format", **fmt)

    vf = sub.add_parser("verify", help="run the self-check suites")
    vf.add_argument("--suite", choices=["all", *verify.SUITES], default="all")
    vf.add_argument("--format", choices=("text", "json"), default="text")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "verify":
            text, ok = cmd_verify(args)
            print(text)
            return EXIT_OK if ok else EXIT_FAIL
        handler = {"exponent": cmd_exponent, "matrix": cmd_matrix, "klein": cmd_klein}[args.command]
        print(handler(args))
    except (ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main())
