"""Desk-scale verification suites driven by ``qeuler verify``.

Each suite is a list of independent checks.  A check returns a dict with an
``id``, a ``pass`` flag and the worst discrepancy it saw; suites can fan the
checks out to a thread pool and results are always reported sorted by id.
"""

from __future__ import annotations

import os
import random
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Callable

from .characters import real_characters, trivial_character
from .families import FamilySpec, Form, Kind, gf_expand, series_sum
from .identities import check_bernoulli_difference, check_difference_identity, check_distribution
from .padic import (IntegrandPoly, check_q_limit, check_shift_identity, convergence_report,
                    oracle_residue)
from .qzeta import ZetaParams, check_interpolation

QS = (Fraction(1, 3), Fraction(1, 2))
RS = (1, 2, 3)
NMAX = 8
FS = (1, 3, 5)
WS = ((1,), (1, 2), (1, 1, 2))
XS = (Fraction(0), Fraction(1), Fraction(5, 2))
REL_TOL = 1e-9
SERIES_TOL = 1e-13

Check = Callable[[], dict]


def _fmt(v) -> str:
    return str(v)


def _tup(t) -> str:
    return ",".join(str(v) for v in t)


def relative_error(value, reference) -> float:
    reference = complex(reference)
    diff = abs(complex(value) - reference)
    return diff / abs(reference) if reference else diff


def _cross_oracle(check_id: str, spec: FamilySpec, nmax: int, forms=(Form.MULTI,)) -> Check:
    def run():
        exact = gf_expand(spec, nmax)
        numeric = spec.replace(q=float(spec.q), x=float(spec.x))
        worst = 0.0
        for n in range(nmax + 1):
            for form in forms:
                pv = series_sum(numeric, n, form, tol=SERIES_TOL)
                worst = max(worst, relative_error(pv.value, exact[n]))
        return {"id": check_id, "pass": worst <= REL_TOL, "worst": worst}
    return run


def _exact_check(check_id: str, fn) -> Check:
    def run():
        reports = fn()
        bad = [r for r in reports if not r.passed]
        worst = max((abs(r.discrepancy) for r in reports), default=Fraction(0))
        return {"id": check_id, "pass": not bad, "worst": _fmt(worst)}
    return run


def theorem_checks(nmax: int = NMAX, xs=XS) -> list[Check]:
    checks: list[Check] = []
    chars = {f: real_characters(f)[0] for f in (3, 5)}
    for q in QS:
        for r in RS:
            for x in xs:
                spec = FamilySpec(Kind.QEULER_ORDER_R, q=q, x=x, r=r)
                checks.append(_cross_oracle(f"series-qeuler/q={q}/r={r}/x={x}", spec, nmax,
                                            (Form.MULTI, Form.SINGLE)))
        for f, chi in chars.items():
            for r in (1, 2):
                spec = FamilySpec(Kind.CHI_QEULER_ORDER_R, q=q, x=1, r=r, chi=chi)
                checks.append(_cross_oracle(f"series-chi-r/q={q}/f={f}/r={r}", spec, 6,
                                            (Form.MULTI, Form.SINGLE)))
        for r in RS:
            # the series converge only when every exponent h-j is positive
            for h in (r + 1, r + 2):
                spec = FamilySpec(Kind.QEULER_HR, q=q, x=Fraction(1, 2), r=r, h=h)
                checks.append(_cross_oracle(f"series-qeuler-hr/q={q}/h={h}/r={r}", spec, 6,
                                            (Form.MULTI, Form.SINGLE)))
        for w in WS + ((2, 2),):
            forms = (Form.MULTI, Form.SINGLE) if len(set(w)) == 1 else (Form.MULTI,)
            spec = FamilySpec(Kind.BARNES_QEULER, q=q, x=1, w=w)
            checks.append(_cross_oracle(f"series-barnes/q={q}/w={_tup(w)}", spec, nmax, forms))
        for w, a in (((1, 2), (2, 1)), ((1, 1, 2), (1, 2, 3))):
            spec = FamilySpec(Kind.BARNES_QEULER_TWIST, q=q, x=Fraction(1, 2), w=w, a=a)
            checks.append(_cross_oracle(f"series-barnes-twist/q={q}/w={_tup(w)}/a={_tup(a)}", spec, 6))
            spec = FamilySpec(Kind.CHI_BARNES_QEULER, q=q, x=1, w=w[:2], a=a[:2], chi=chars[3])
            checks.append(_cross_oracle(f"series-chi-barnes/q={q}/w={_tup(w[:2])}/a={_tup(a[:2])}", spec, 6))
        for w in ((1,), (1, 2)):
            for x in (1, 2):
                checks.append(_interp_check(f"zeta-values/q={q}/w={_tup(w)}/x={x}", ZetaParams(q, x, w), 6))
                for f, chi in chars.items():
                    checks.append(_interp_check(f"l-values/q={q}/w={_tup(w)}/x={x}/f={f}",
                                                ZetaParams(q, x, w, chi=chi), 4))
    return checks


def _interp_check(check_id: str, params: ZetaParams, nmax: int) -> Check:
    def run():
        reports = [check_interpolation(n, params) for n in range(nmax + 1)]
        worst = max(r.discrepancy for r in reports)
        return {"id": check_id, "pass": all(reports), "worst": worst}
    return run


def distribution_checks(nmax: int = NMAX, xs=XS) -> list[Check]:
    checks: list[Check] = []
    chars = [(1, trivial_character(1)), (3, real_characters(3)[0]), (5, real_characters(5)[0])]
    for q in QS:
        for x in xs:
            for cond, chi in chars:
                spec = FamilySpec(Kind.CHI_QEULER, q=q, x=x, chi=chi)
                for f in FS:
                    if f % cond == 0:
                        checks.append(_exact_check(
                            f"dist-chi/q={q}/x={x}/chi={cond}/f={f}",
                            lambda spec=spec, f=f: [check_distribution(spec, f, n)
                                                    for n in range(nmax + 1)]))
        for w in WS:
            spec = FamilySpec(Kind.BARNES_QEULER, q=q, x=Fraction(1, 2), w=w)
            for f in FS:
                checks.append(_exact_check(
                    f"dist-barnes/q={q}/w={_tup(w)}/f={f}",
                    lambda spec=spec, f=f: [check_distribution(spec, f, n)
                                            for n in range(nmax + 1)]))
        for r in (1, 2):
            for h in (1, 2, 3):
                spec = FamilySpec(Kind.QEULER_HR, q=q, x=Fraction(1, 2), r=r, h=h)
                for f in FS:
                    checks.append(_exact_check(
                        f"dist-qeuler-hr/q={q}/h={h}/r={r}/f={f}",
                        lambda spec=spec, f=f: [check_distribution(spec, f, n)
                                                for n in range(nmax + 1)]))
    return checks


def bernoulli_checks() -> list[Check]:
    checks: list[Check] = []
    for a in ((1,), (2,), (1, 1), (1, 2), (1, 2, 3), (2, 3, 1), (1, 2, 3, 1)):
        N = len(a) - 1
        for w in (Fraction(1, 2), Fraction(1), Fraction(7, 3)):
            checks.append(_exact_check(
                f"barnes-bernoulli/a={_tup(a)}/w={w}",
                lambda a=a, N=N, w=w: [check_bernoulli_difference(n, N, a, w) for n in range(1, 13)]))
    chars = [trivial_character(1), real_characters(3)[0], real_characters(5)[0]]
    for chi in chars:
        for q in QS + (Fraction(1),):
            checks.append(_exact_check(
                f"chi-difference/f={chi.conductor}/q={q}",
                lambda chi=chi, q=q: [check_difference_identity(chi, q, m, n)
                                      for m in range(6) for n in range(1, 4)]))
    return checks


def padic_checks() -> list[Check]:
    checks: list[Check] = []
    M = 8
    for p in (3, 5):
        for r in (1, 2):
            for n in range(5):
                def run(p=p, r=r, n=n):
                    spec = FamilySpec(Kind.QEULER_ORDER_R, q=1 + p, r=r)
                    rep = convergence_report(IntegrandPoly.power(n, 0, (1,)), 1 + p, r, p,
                                             range(3, 8), M, oracle_residue(spec, n, p, M))
                    worst = min(row["valuation"] - row["N"] for row in rep.details["rows"])
                    return {"id": f"convergence/p={p}/r={r}/n={n}", "pass": rep.passed,
                            "worst": worst}
                checks.append(run)
        for n in (1, 2, 3):
            def shift(p=p, n=n):
                rep = check_shift_identity(IntegrandPoly.power(2, 1), n, p, range(3, 8), M)
                vals = [row["valuation"] for row in rep.details["rows"]]
                return {"id": f"shift/p={p}/n={n}", "pass": rep.passed, "worst": min(vals)}
            checks.append(shift)

        def qlimit(p=p):
            rep = check_q_limit(IntegrandPoly.power(2, 1), p, range(1, 6), 5, M)
            vals = [row["valuation"] for row in rep.details["rows"]]
            return {"id": f"q-limit/p={p}", "pass": rep.passed, "worst": min(vals)}
        checks.append(qlimit)
    return checks


SUITES: dict[str, Callable[..., list[Check]]] = {
    "theorems": theorem_checks,
    "distribution": distribution_checks,
    "bernoulli": bernoulli_checks,
    "padic-convergence": padic_checks,
}


def worker_count() -> int:
    env = os.environ.get("QEULER_THREADS")
    if env:
        return max(1, int(env))
    return min(8, os.cpu_count() or 1)


def _build(name: str, nmax: int, xs) -> list[Check]:
    if name in ("theorems", "distribution"):
        return SUITES[name](nmax, xs)
    return SUITES[name]()


def run_suite(name: str, threads: int | None = None, *, nmax: int = NMAX,
              seed: int | None = None) -> list[dict]:
    """Run a suite (or "all") and return its rows sorted by check id.

    A seed adds one random rational x to the grids that range over x.
    """
    xs = XS
    if seed is not None:
        rng = random.Random(seed)
        xs = tuple(dict.fromkeys(XS + (Fraction(rng.randint(0, 40), rng.randint(1, 9)),)))
    names = list(SUITES) if name == "all" else [name]
    checks = [c for n in names for c in _build(n, nmax, xs)]
    threads = threads or worker_count()
    if threads == 1:
        results = [c() for c in checks]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda c: c(), checks))
    return sorted(results, key=lambda row: row["id"])
