"""Command-line interface: ``qeuler {eval,verify,zeta,padic}``.

Exit codes: 0 success, 1 a verification failed, 2 usage error,
3 domain or computation error.  JSON output is canonical (sorted keys,
rationals as "num/den" strings) so it re-renders byte for byte.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from fractions import Fraction

from .characters import enumerate_characters, real_characters
from .errors import DomainError, QEulerError
from .families import FamilySpec, Form, Kind, gf_expand, series_sum
from .padic import IntegrandPoly, _is_prime, convergence_report, oracle_residue
from .qzeta import ZetaParams, l_qr, zeta_qr
from .suites import NMAX, SUITES, run_suite

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_ERROR = 0, 1, 2, 3


def rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _weight(v: Fraction):
    return v.numerator if v.denominator == 1 else v


def rational_list(text: str) -> tuple:
    return tuple(_weight(rational(tok)) for tok in text.split(",") if tok.strip())


def complex_list(text: str) -> list[complex]:
    out = []
    for tok in text.split(","):
        tok = tok.strip().replace("i", "j")
        try:
            out.append(complex(tok))
        except ValueError:
            raise argparse.ArgumentTypeError(f"not a complex number: {tok!r}") from None
    return out


def character_arg(text: str):
    """``F`` (first real non-trivial character mod F, or the trivial one for F = 1)
    or ``F:i`` (index i in enumeration order, trivial character first)."""
    head, _, index = text.partition(":")
    try:
        f = int(head)
        i = int(index) if index else None
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected F or F:i, got {text!r}") from None
    try:
        if i is None:
            return real_characters(f)[0] if f > 1 else enumerate_characters(1)[0]
        chars = enumerate_characters(f)
    except DomainError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None
    if not 0 <= i < len(chars):
        raise argparse.ArgumentTypeError(f"character index {i} out of range 0..{len(chars) - 1}")
    return chars[i]


def padic_q(text: str, p: int) -> Fraction:
    """``1+p``, ``1+p^k`` or a rational."""
    m = re.fullmatch(r"\s*1\s*\+\s*p(?:\s*\^\s*(\d+))?\s*", text)
    if m:
        return Fraction(1 + p ** int(m.group(1) or 1))
    return rational(text)


def _jsonable(value):
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, complex):
        return [value.real, value.imag]
    return value


def render_json(doc: dict) -> str:
    return json.dumps(_jsonable(doc), sort_keys=True, indent=2) + "\n"


def render_csv(rows: list[dict]) -> str:
    fields: list[str] = []
    for row in rows:
        fields.extend(k for k in row if k not in fields)
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: _jsonable(v) for k, v in row.items()})
    return buf.getvalue()


def _chi_label(chi) -> str | None:
    if chi is None:
        return None
    if chi.is_real:
        return f"{chi.conductor}:{list(chi.exact_table())}"
    return f"{chi.conductor}:{[str(p) if p is not None else None for p in chi.phases]}"


# -- eval ---------------------------------------------------------------------

def cmd_eval(args, parser) -> dict:
    try:
        spec = FamilySpec(Kind(args.family), q=args.q, x=args.x, r=args.r, h=args.h,
                          w=args.w, a=args.a, chi=args.chi)
    except DomainError as exc:
        parser.error(str(exc))
    if args.nmax < 0:
        parser.error("--nmax must be non-negative")
    rows = [{"n": n} for n in range(args.nmax + 1)]
    if args.path in ("exact", "both"):
        exact = gf_expand(spec, max(args.nmax, 0))
        for row in rows:
            row["exact"] = exact[row["n"]]
    if args.path in ("numeric", "both"):
        numeric = spec.replace(q=float(spec.q), x=float(spec.x))
        for row in rows:
            pv = series_sum(numeric, row["n"], args.form, tol=args.tol)
            tr = pv.truncation_report
            row.update(value=float(pv.value), tail_bound=tr.tail_bound,
                       rounding_bound=tr.rounding_bound, cutoff=tr.cutoff)
    params = {"family": spec.kind.value, "r": spec.r, "q": args.q, "x": args.x, "h": args.h,
              "w": args.w, "a": args.a, "chi": _chi_label(args.chi), "nmax": args.nmax,
              "path": args.path, "form": args.form, "tol": args.tol}
    return {"command": "eval", "params": params, "rows": rows}


# -- verify -------------------------------------------------------------------

def cmd_verify(args, parser) -> dict:
    if args.nmax < 0:
        parser.error("--nmax must be non-negative")
    rows = run_suite(args.suite, args.threads, nmax=args.nmax, seed=args.seed)
    params = {"suite": args.suite, "nmax": args.nmax, "seed": args.seed}
    return {"command": "verify", "params": params, "rows": rows,
            "pass": all(row["pass"] for row in rows)}


# -- zeta ---------------------------------------------------------------------

def cmd_zeta(args, parser) -> dict:
    w = args.w
    if args.r is not None:
        if len(w) == 1:
            w = w * args.r
        elif len(w) != args.r:
            parser.error(f"-r {args.r} does not match {len(w)} weights")
    params_obj = ZetaParams(q=args.q, x=args.x, w=w, chi=args.chi, tol=args.tol)
    fn = zeta_qr if args.chi is None else l_qr
    rows = []
    for s in args.s:
        val = fn(s, params_obj)
        rows.append({"s_re": s.real, "s_im": s.imag, "value_re": val.re, "value_im": val.im,
                     "err_bound": val.err_bound})
    params = {"r": len(w), "w": w, "q": args.q, "x": args.x, "chi": _chi_label(args.chi),
              "tol": args.tol}
    return {"command": "zeta", "params": params, "rows": rows}


# -- padic --------------------------------------------------------------------

def cmd_padic(args, parser) -> dict:
    p = args.p
    if p < 3 or not _is_prime(p):
        parser.error(f"p must be an odd prime, got {p}")
    if args.M < 1 or args.N < 1 or args.n < 0 or args.r < 1:
        parser.error("need -M >= 1, -N >= 1, -n >= 0 and -r >= 1")
    try:
        q = padic_q(args.q, p)
    except argparse.ArgumentTypeError as exc:
        parser.error(str(exc))
    if args.h is None:
        spec = FamilySpec(Kind.QEULER_ORDER_R, q=q, x=args.x, r=args.r)
        weights = (1,)
    else:
        spec = FamilySpec(Kind.QEULER_HR, q=q, x=args.x, r=args.r, h=args.h)
        weights = tuple(args.h - j for j in range(1, args.r + 1))
    oracle = oracle_residue(spec, args.n, p, args.M)
    rep = convergence_report(IntegrandPoly.power(args.n, args.x, weights), q, args.r, p,
                             range(1, args.N + 1), args.M, oracle)
    params = {"p": p, "M": args.M, "n": args.n, "q": q, "N": args.N, "r": args.r,
              "x": args.x, "h": args.h}
    return {"command": "padic", "params": params, "rows": rep.details["rows"],
            "oracle": rep.details["oracle"], "monotone": rep.details["monotone"],
            "pass": rep.passed}


# -- parser -------------------------------------------------------------------

def _add_format(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("json", "csv"), default="json")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qeuler", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    ev = sub.add_parser("eval", help="evaluate a polynomial family for n = 0..nmax")
    ev.add_argument("--family", required=True, choices=[k.value for k in Kind])
    ev.add_argument("-r", type=int)
    ev.add_argument("-q", type=rational, default=Fraction(1))
    ev.add_argument("-x", type=rational, default=Fraction(0))
    ev.add_argument("--h", type=int)
    ev.add_argument("-w", type=rational_list)
    ev.add_argument("-a", type=rational_list)
    ev.add_argument("--chi", type=character_arg, help="F or F:i")
    ev.add_argument("--nmax", type=int, default=8)
    ev.add_argument("--path", choices=("exact", "numeric", "both"), default="exact")
    ev.add_argument("--form", choices=[f.value for f in Form], default=Form.MULTI.value)
    ev.add_argument("--tol", type=float, default=1e-12)
    _add_format(ev)
    ev.set_defaults(subparser=ev, handler=cmd_eval)

    ve = sub.add_parser("verify", help="run an identity / cross-oracle suite")
    ve.add_argument("--suite", required=True, choices=[*SUITES, "all"])
    ve.add_argument("--nmax", type=int, default=NMAX)
    ve.add_argument("--seed", type=int, help="add one random x point to the grids")
    ve.add_argument("--threads", type=int, help="worker count (default: QEULER_THREADS)")
    _add_format(ve)
    ve.set_defaults(subparser=ve, handler=cmd_verify)

    ze = sub.add_parser("zeta", help="tabulate the q-zeta (or q-l) function")
    ze.add_argument("-r", type=int)
    ze.add_argument("-w", type=rational_list, default=(1,))
    ze.add_argument("-q", type=rational, default=Fraction(1, 2))
    ze.add_argument("-x", type=rational, default=Fraction(1))
    ze.add_argument("--s", type=complex_list, action="extend", required=True,
                    help="comma-separated s values, e.g. 0,-2,1+2j")
    ze.add_argument("--chi", type=character_arg, help="F or F:i; switches to the l-function")
    ze.add_argument("--tol", type=float, default=1e-12)
    _add_format(ze)
    ze.set_defaults(subparser=ze, handler=cmd_zeta)

    pa = sub.add_parser("padic", help="fermionic p-adic sums against the exact values")
    pa.add_argument("-p", type=int, default=3)
    pa.add_argument("-M", type=int, default=8, help="precision: work mod p^M")
    pa.add_argument("-n", type=int, default=0)
    pa.add_argument("-q", default="1+p", help="1+p, 1+p^k or a rational")
    pa.add_argument("-N", type=int, default=7, help="largest level")
    pa.add_argument("-r", type=int, default=1)
    pa.add_argument("-x", type=rational, default=Fraction(0))
    pa.add_argument("--h", type=int, help="use the (h, r) family")
    _add_format(pa)
    pa.set_defaults(subparser=pa, handler=cmd_padic)
    return parser


def _glue_s_values(argv: list[str]) -> list[str]:
    # "--s -1,2" would otherwise read "-1,2" as an option
    out, it = [], iter(argv)
    for tok in it:
        if tok == "--s":
            nxt = next(it, None)
            out.append(tok if nxt is None else f"--s={nxt}")
        else:
            out.append(tok)
    return out


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    argv = _glue_s_values(sys.argv[1:] if argv is None else list(argv))
    try:
        args = parser.parse_args(argv)
        result = args.handler(args, args.subparser)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    except QEulerError as exc:
        print(f"qeuler: error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    if args.format == "json":
        sys.stdout.write(render_json(result))
    else:
        sys.stdout.write(render_csv(result["rows"]))
    return EXIT_FAILED if result.get("pass") is False else EXIT_OK
