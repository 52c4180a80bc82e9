"""Exact identity checks tying the families together.

Every check evaluates both sides with :func:`gf_expand` and compares exact
rationals; the returned :class:`Report` carries both sides and the exact
discrepancy.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from fractions import Fraction

from .characters import DirichletCharacter
from .errors import PreconditionError, UnsupportedFormError
from .families import FamilySpec, Kind, _require_exact, gf_expand
from .report import Report
from .series import as_rational, binom


def _value(spec: FamilySpec, n: int) -> Fraction:
    # a shared order lets every n <= 8 reuse one cached expansion
    return gf_expand(spec, max(n, 8))[n]


def _distribution_terms(spec: FamilySpec, f: int):
    """Yield (weight, shift) pairs of the relation E(x) = f^n sum weight * E_{q^f}((x+shift)/f)."""
    q, r = spec.q, spec.r
    if spec.kind is Kind.CHI_QEULER:
        for a in range(f):
            c = spec.chi.exact(a)
            if c:
                yield c * (-q) ** a, a
        return
    if spec.kind is Kind.QEULER_HR:
        exps = [spec.h - j for j in range(1, r + 1)]
        scales = [1] * r
    elif spec.kind is Kind.QEULER_ORDER_R:
        exps = scales = [1] * r
    else:
        exps = scales = list(spec.w)
    for a in itertools.product(range(f), repeat=r):
        sign = -1 if sum(a) % 2 else 1
        yield sign * q ** sum(e * aj for e, aj in zip(exps, a)), sum(s * aj for s, aj in zip(scales, a))


def check_distribution(spec: FamilySpec, f: int, n: int) -> Report:
    """Distribution relation over an odd modulus f.

    chi family:     E_{n,chi,q}(x) = f^n sum_a chi(a)(-q)^a E_{n,q^f}((x+a)/f)
    Barnes/order r: E_n(x|w) = f^n sum_a (-1)^|a| q^(w.a) E_{n,q^f}((w.a + x)/f | w)
    (h, r) family:  same with q^((h-1)a_1 + ... + (h-r)a_r) and shift a_1+...+a_r,
                    the right side using the (h, r) family at q^f.
    """
    if f < 1 or f % 2 == 0:
        raise PreconditionError(f"f must be odd and positive, got {f}")
    _require_exact(spec)
    kind = spec.kind
    if kind is Kind.CHI_QEULER:
        if f % spec.chi.conductor:
            raise PreconditionError(
                f"f={f} must be a multiple of the conductor {spec.chi.conductor}")
        name = "distribution:chi"

        def rhs_spec(x):
            return FamilySpec(Kind.QEULER_ORDER_R, q=spec.q**f, x=x, r=1)
    elif kind in (Kind.QEULER_ORDER_R, Kind.BARNES_QEULER, Kind.QEULER_HR):
        name = "distribution:hr" if kind is Kind.QEULER_HR else "distribution:barnes"

        def rhs_spec(x):
            return spec.replace(q=spec.q**f, x=x)
    else:
        raise UnsupportedFormError(f"no distribution relation for {kind.value}")

    by_shift: dict[int, Fraction] = defaultdict(Fraction)
    for weight, shift in _distribution_terms(spec, f):
        by_shift[shift] += weight
    rhs = Fraction(0)
    for shift, weight in by_shift.items():
        if weight:
            rhs += weight * _value(rhs_spec((spec.x + shift) / f), n)
    rhs *= Fraction(f) ** n
    lhs = _value(spec, n)
    return Report(name, lhs == rhs, lhs, rhs, lhs - rhs, {"f": f, "n": n})


def check_difference_identity(chi: DirichletCharacter, q, m: int, n: int) -> Report:
    """q^(nf) E_{m,chi,q}(nf) - (-1)^n E_{m,chi,q} = 2 sum_{l<nf} (-1)^(n-1-l) chi(l) q^l l^m."""
    q = as_rational(q)
    f = chi.conductor
    spec = FamilySpec(Kind.CHI_QEULER, q=q, x=0, chi=chi)
    e_shift = _value(spec.replace(x=n * f), m)
    e_zero = _value(spec, m)
    lhs = q ** (n * f) * e_shift - (-1) ** n * e_zero
    rhs = 2 * sum((Fraction((-1) ** (n - 1 - l) * chi.exact(l)) * q**l * Fraction(l) ** m
                   for l in range(n * f)), Fraction(0))
    return Report("difference:chi", lhs == rhs, lhs, rhs, lhs - rhs,
                  {"m": m, "n": n, "f": f})


def check_bernoulli_difference(n: int, N: int, a, w) -> Report:
    """B_n(w + a_{N+1}, N+1 | a) - B_n(w, N+1 | a) = n B_{n-1}(w, N | a_1..a_N)."""
    if n < 1 or N < 0:
        raise PreconditionError("need n >= 1 and N >= 0")
    a = tuple(a)
    if len(a) != N + 1:
        raise PreconditionError(f"need N+1 = {N + 1} weights, got {len(a)}")
    w = as_rational(w)
    big = FamilySpec(Kind.BARNES_BERNOULLI, x=w, a=a)
    lhs = _value(big.replace(x=w + a[N]), n) - _value(big, n)
    if N == 0:
        lower = w ** (n - 1)  # zero weights: generating function e^(wt)
    else:
        lower = _value(FamilySpec(Kind.BARNES_BERNOULLI, x=w, a=a[:N]), n - 1)
    rhs = n * lower
    return Report("difference:bernoulli", lhs == rhs, lhs, rhs, lhs - rhs,
                  {"n": n, "N": N, "a": a, "w": w})


def binomial_shift_in_x(spec: FamilySpec, n: int) -> Report:
    """E_n(x) = sum_k C(n,k) x^(n-k) E_k(0)."""
    _require_exact(spec)
    at_zero = gf_expand(spec.replace(x=0), n)
    x = spec.x
    rhs = sum((binom(n, k) * x ** (n - k) * at_zero[k] for k in range(n + 1)), Fraction(0))
    lhs = _value(spec, n)
    return Report("binomial-shift", lhs == rhs, lhs, rhs, lhs - rhs, {"n": n})
