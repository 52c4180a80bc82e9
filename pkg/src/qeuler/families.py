"""Higher-order q-Euler polynomial families.

Each family is named by a :class:`FamilySpec` and can be evaluated two ways:

* :func:`gf_expand` expands the generating function exactly over the
  rationals (q, x rational; weights and twist exponents integers);
* :func:`series_sum` sums the explicit infinite series in floating point
  for 0 < q < 1, with a rigorous bound on the discarded tail.

The generating functions (all multiplied by e^{xt}):

=========================  ===================================================
kind                       generating function
=========================  ===================================================
QEULER_ORDER_R             (2 / (q e^t + 1))^r
QEULER_HR                  prod_j 2 / (1 + q^(h-r+j-1) e^t)
BARNES_QEULER              prod_j 2 / (q^(w_j) e^(w_j t) + 1)
BARNES_QEULER_TWIST        prod_j 2 / (q^(a_j) e^(w_j t) + 1)
CHI_QEULER (r = 1)         2 sum_b chi(b) (-q)^b e^(bt) / (q^f e^(ft) + 1)
CHI_QEULER_ORDER_R         the CHI_QEULER factor raised to the r-th power
CHI_BARNES_QEULER          prod_j 2 sum_b chi(b) (-1)^b q^(a_j b) e^(w_j b t)
                                  / (q^(a_j f) e^(w_j f t) + 1)
CLASSICAL_BARNES_EULER     prod_j 2 / (e^(w_j t) + 1)
BARNES_BERNOULLI           t^r / prod_j (e^(a_j t) - 1)
=========================  ===================================================
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from enum import Enum
from fractions import Fraction
from functools import lru_cache

import numpy as np

from ._summation import TailModel, exact_sum, rounding_bound, simplex
from .characters import DirichletCharacter
from .errors import (
    DegenerateParameterError,
    DivergenceError,
    DomainError,
    NonInvertibleError,
    PathError,
    UnsupportedFormError,
)
from .series import DEFAULT_ORDER, TruncSeries, as_rational, ts_exp_linear


class Kind(str, Enum):
    QEULER_ORDER_R = "qeuler"
    QEULER_HR = "qeuler-hr"
    BARNES_QEULER = "barnes"
    BARNES_QEULER_TWIST = "barnes-twist"
    CHI_QEULER = "chi"
    CHI_QEULER_ORDER_R = "chi-r"
    CHI_BARNES_QEULER = "chi-barnes"
    BARNES_BERNOULLI = "bernoulli"
    CLASSICAL_BARNES_EULER = "classical-barnes"


CHI_KINDS = frozenset({Kind.CHI_QEULER, Kind.CHI_QEULER_ORDER_R, Kind.CHI_BARNES_QEULER})
_NEEDS_W = frozenset({Kind.BARNES_QEULER, Kind.BARNES_QEULER_TWIST,
                      Kind.CHI_BARNES_QEULER, Kind.CLASSICAL_BARNES_EULER})
_NEEDS_A = frozenset({Kind.BARNES_QEULER_TWIST, Kind.CHI_BARNES_QEULER, Kind.BARNES_BERNOULLI})


class Form(str, Enum):
    MULTI = "multi"
    SINGLE = "single"


class Path(str, Enum):
    GF = "gf"
    SERIES = "series"


def _coerce(v):
    if isinstance(v, float):
        return v
    return as_rational(v)


def _coerce_weight(v):
    if isinstance(v, float):
        return v
    v = as_rational(v)
    return int(v) if v.denominator == 1 else v


@dataclass(frozen=True)
class FamilySpec:
    """Parameters naming one polynomial family instance.

    ``q`` and ``x`` are Fractions on the exact path and may be floats on the
    numeric path.  ``r`` is inferred from ``w`` or ``a`` when omitted.
    """

    kind: Kind
    q: Fraction | float = Fraction(1)
    x: Fraction | float = Fraction(0)
    r: int | None = None
    h: int | None = None
    w: tuple | None = None
    a: tuple | None = None
    chi: DirichletCharacter | None = None

    def __post_init__(self):
        kind = Kind(self.kind)
        set_ = object.__setattr__
        set_(self, "kind", kind)
        set_(self, "q", _coerce(self.q))
        set_(self, "x", _coerce(self.x))
        if self.w is not None:
            set_(self, "w", tuple(_coerce_weight(v) for v in self.w))
        if self.a is not None:
            set_(self, "a", tuple(_coerce_weight(v) for v in self.a))

        r = self.r
        if r is None:
            r = len(self.w) if self.w is not None else len(self.a) if self.a is not None else 1
        if not isinstance(r, int) or r < 1:
            raise DomainError(f"order r must be a positive integer, got {r!r}")
        set_(self, "r", r)

        if kind in _NEEDS_W and self.w is None:
            raise DomainError(f"{kind.value} needs weights w")
        if kind in _NEEDS_A and self.a is None:
            raise DomainError(f"{kind.value} needs twist/weight exponents a")
        for name in ("w", "a"):
            vec = getattr(self, name)
            if vec is not None and len(vec) != r:
                raise DomainError(f"len({name}) = {len(vec)} but r = {r}")
        if self.w is not None and any(v <= 0 for v in self.w):
            raise DomainError("weights w_j must be positive")
        if kind is Kind.BARNES_BERNOULLI and any(v <= 0 for v in self.a):
            raise DomainError("Bernoulli weights a_j must be positive")
        if (kind is Kind.QEULER_HR) != (self.h is not None):
            raise DomainError("h is required for qeuler-hr and only allowed there")
        if (kind in CHI_KINDS) != (self.chi is not None):
            raise DomainError("a character is required exactly for the chi families")
        if kind is Kind.CHI_QEULER and r != 1:
            raise DomainError("chi family has order 1; use chi-r for higher order")
        if self.x < 0:
            raise DomainError("x must be non-negative")
        if self.q == 0:
            raise DomainError("q must be nonzero")

    def replace(self, **changes) -> FamilySpec:
        return replace(self, **changes)

    @property
    def is_exact(self) -> bool:
        if isinstance(self.q, float) or isinstance(self.x, float):
            return False
        if self.chi is not None and not self.chi.is_real:
            return False
        return all(isinstance(v, int) for vec in (self.w, self.a) if vec for v in vec)


@dataclass(frozen=True)
class TruncationReport:
    terms: int
    cutoff: int
    tail_bound: float
    rounding_bound: float = 0.0


@dataclass(frozen=True)
class PolyValue:
    n: int
    value: Fraction | float | complex
    path: Path
    truncation_report: TruncationReport | None = None


# ---------------------------------------------------------------------------
# exact path
# ---------------------------------------------------------------------------

def _require_exact(spec: FamilySpec) -> None:
    if isinstance(spec.q, float) or isinstance(spec.x, float):
        raise PathError("exact path needs rational q and x; use series_sum for floats")
    if spec.chi is not None and not spec.chi.is_real:
        raise PathError("complex character values need the numeric path (series_sum)")
    for vec in (spec.w, spec.a):
        if vec and not all(isinstance(v, int) for v in vec):
            raise PathError("exact path needs integer weights and twist exponents")


def _plain_factors(spec: FamilySpec) -> list[tuple[Fraction, int]]:
    """(c_j, w_j) such that the family is prod_j 2/(c_j e^(w_j t) + 1) * e^(xt)."""
    q, r, kind = spec.q, spec.r, spec.kind
    if kind is Kind.QEULER_ORDER_R:
        return [(q, 1)] * r
    if kind is Kind.QEULER_HR:
        return [(q ** (spec.h - r + j - 1), 1) for j in range(1, r + 1)]
    if kind is Kind.BARNES_QEULER:
        return [(q**wj, wj) for wj in spec.w]
    if kind is Kind.BARNES_QEULER_TWIST:
        return [(q**aj, wj) for aj, wj in zip(spec.a, spec.w)]
    if kind is Kind.CLASSICAL_BARNES_EULER:
        return [(Fraction(1), wj) for wj in spec.w]
    raise AssertionError(kind)


def _chi_factors(spec: FamilySpec) -> list[tuple[int, int]]:
    """(a_j, w_j) for the character-twisted factors."""
    if spec.kind is Kind.CHI_BARNES_QEULER:
        return list(zip(spec.a, spec.w))
    return [(1, 1)] * spec.r


def generating_series(spec: FamilySpec, T: int = DEFAULT_ORDER) -> TruncSeries:
    """The family's generating function in t, exact through t^T."""
    _require_exact(spec)
    out = ts_exp_linear(spec.x, T)
    try:
        if spec.kind is Kind.BARNES_BERNOULLI:
            for aj in spec.a:
                # (e^(a t) - 1)/t = sum_k a^(k+1) t^k/(k+1)!
                u = TruncSeries.from_coeffs(
                    (Fraction(aj) ** (k + 1) / math.factorial(k + 1) for k in range(T + 1)), T)
                out = out * u.inv()
        elif spec.kind in CHI_KINDS:
            chi, q = spec.chi, spec.q
            f = chi.conductor
            table = chi.exact_table()
            for aj, wj in _chi_factors(spec):
                num = TruncSeries.constant(0, T)
                for b in range(f):
                    if table[b]:
                        num = num + (2 * table[b] * (-1) ** b * q ** (aj * b)) * ts_exp_linear(wj * b, T)
                den = q ** (aj * f) * ts_exp_linear(wj * f, T) + 1
                out = out * num * den.inv()
        else:
            for c, wj in _plain_factors(spec):
                den = c * ts_exp_linear(wj, T) + 1
                out = out * (2 * den.inv())
    except (NonInvertibleError, ZeroDivisionError) as exc:
        raise DegenerateParameterError(f"degenerate parameters for {spec.kind.value}: {exc}") from exc
    return out


@lru_cache(maxsize=4096)
def _gf_cached(spec: FamilySpec, T: int) -> tuple[Fraction, ...]:
    return tuple(generating_series(spec, T).egf())


def gf_expand(spec: FamilySpec, T: int = DEFAULT_ORDER) -> list[Fraction]:
    """Exact values [E_0, ..., E_T] (n! times the t^n coefficients)."""
    return list(_gf_cached(spec, T))


def gf_value(spec: FamilySpec, n: int) -> PolyValue:
    return PolyValue(n, _gf_cached(spec, n)[n], Path.GF)


# ---------------------------------------------------------------------------
# numeric path
# ---------------------------------------------------------------------------

def _numeric_q(spec: FamilySpec) -> float:
    q = float(spec.q)
    if q <= 0:
        raise DomainError("numeric path needs 0 < q < 1")
    if q >= 1:
        raise DivergenceError(f"series diverge for q = {q:g} >= 1")
    return q


def _multi_model(spec: FamilySpec, q: float):
    """Per-index geometric ratios, t-scales and optional character table."""
    kind, r = spec.kind, spec.r
    chi = None
    if kind is Kind.QEULER_ORDER_R:
        exps, scales = [1] * r, [1] * r
    elif kind is Kind.QEULER_HR:
        exps, scales = [spec.h - j for j in range(1, r + 1)], [1] * r
    elif kind is Kind.BARNES_QEULER:
        exps, scales = list(spec.w), list(spec.w)
    elif kind is Kind.BARNES_QEULER_TWIST:
        exps, scales = list(spec.a), list(spec.w)
    elif kind in (Kind.CHI_QEULER, Kind.CHI_QEULER_ORDER_R):
        exps, scales, chi = [1] * r, [1] * r, spec.chi
    elif kind is Kind.CHI_BARNES_QEULER:
        exps, scales, chi = list(spec.a), list(spec.w), spec.chi
    elif kind is Kind.CLASSICAL_BARNES_EULER:
        raise DivergenceError("the classical Barnes-Euler series has no q-damping (q = 1)")
    else:
        raise UnsupportedFormError(f"{kind.value} has no series form")
    exps = [float(e) for e in exps]
    if any(e <= 0 for e in exps):
        raise DivergenceError(
            f"series diverge: q-exponents {exps} must all be positive for 0 < q < 1")
    ratios = np.array([q**e for e in exps])
    return ratios, np.array([float(s) for s in scales]), chi


def _chi_table(chi: DirichletCharacter) -> np.ndarray:
    vals = np.array(chi.values, dtype=complex)
    if chi.is_real:
        return vals.real.copy()
    return vals


def _finish(n, r, terms, M, bound) -> PolyValue:
    value = exact_sum(terms)
    # each term is a product of r + 2 correctly rounded powers, one raised to n
    ulps = 8 + n + r
    report = TruncationReport(terms=int(terms.size), cutoff=M, tail_bound=bound,
                              rounding_bound=rounding_bound(terms, ulps))
    return PolyValue(n, value, Path.SERIES, report)


def _multi_sum(spec, n, q, tol) -> PolyValue:
    ratios, scales, chi = _multi_model(spec, q)
    r = spec.r
    x = float(spec.x)
    model = TailModel(r=r, rho=float(ratios.max()), x0=x, W=float(scales.max()),
                      power=n, const=2.0**r)
    M, bound = model.cutoff(tol, minimum=n + 10)
    idx = simplex(r, M)
    lin = idx @ scales
    geo = np.prod(ratios ** idx, axis=1)
    sign = 1.0 - 2.0 * (idx.sum(axis=1) % 2)
    terms = 2.0**r * sign * geo * (x + lin) ** n
    if chi is not None:
        terms = terms * np.prod(_chi_table(chi)[idx % chi.conductor], axis=1)
    return _finish(n, r, terms, M, bound)


def _comb_array(m: np.ndarray, r: int) -> np.ndarray:
    return np.array([math.comb(int(k) + r - 1, r - 1) for k in m], dtype=float)


def _single_sum(spec, n, q, tol) -> PolyValue:
    kind, r, x = spec.kind, spec.r, float(spec.x)
    if kind is Kind.QEULER_ORDER_R or (
            kind is Kind.BARNES_QEULER and len(set(spec.w)) == 1):
        w0 = 1 if kind is Kind.QEULER_ORDER_R else spec.w[0]
        rho = q**w0
        model = TailModel(r=r, rho=rho, x0=x, W=float(w0), power=n, const=2.0**r)
        M, bound = model.cutoff(tol, minimum=n + 10)
        m = np.arange(M + 1)
        terms = 2.0**r * _comb_array(m, r) * (-rho) ** m * (x + w0 * m) ** n
        return _finish(n, r, terms, M, bound)

    if kind is Kind.QEULER_HR:
        e = spec.h - r
        if e <= 0:
            raise DivergenceError(f"series diverge: need h > r, got h={spec.h}, r={r}")
        rho = q**e
        # the q-binomial is at most prod_{i<r} 1/(1 - q^i) for 0 < q < 1
        cap = math.prod(1 / (1 - q**i) for i in range(1, r))
        model = TailModel(r=r, rho=rho, x0=x, W=1.0, power=n, const=2.0**r * cap,
                          count_indices=False)
        M, bound = model.cutoff(tol, minimum=n + 10)
        m = np.arange(M + 1)
        qb = np.ones(M + 1)
        for i in range(1, r):
            qb *= (1 - q ** (m + i)) / (1 - q**i)
        terms = 2.0**r * qb * (-rho) ** m * (x + m) ** n
        return _finish(n, r, terms, M, bound)

    if kind in (Kind.CHI_QEULER, Kind.CHI_QEULER_ORDER_R):
        chi = spec.chi
        f = chi.conductor
        table = _chi_table(chi)
        A = np.indices((f,) * r).reshape(r, -1).T
        inner_w = np.prod(table[A], axis=1) * (-q) ** A.sum(axis=1)
        asum = A.sum(axis=1)
        rho = q**f
        model = TailModel(r=r, rho=rho, x0=x + r * (f - 1), W=float(f), power=n,
                          const=2.0**r * f**r)
        M, bound = model.cutoff(tol, minimum=n + 10)
        m = np.arange(M + 1)
        outer = 2.0**r * _comb_array(m, r) * (-rho) ** m
        terms = outer[:, None] * inner_w[None, :] * (asum[None, :] + x + f * m[:, None]) ** n
        return _finish(n, r, terms.ravel(), M, bound)

    if kind is Kind.BARNES_QEULER:
        raise UnsupportedFormError("single-index form needs equal weights")
    raise UnsupportedFormError(f"no single-index form for {kind.value}")


def series_sum(spec: FamilySpec, n: int, form: Form | str = Form.MULTI,
               tol: float = 1e-12) -> PolyValue:
    """Sum the family's explicit series for E_n at the spec's x.

    ``tol`` is the target for the rigorous tail bound (absolute).
    """
    if tol <= 0:
        raise DomainError("tol must be positive")
    if spec.kind is Kind.BARNES_BERNOULLI:
        raise UnsupportedFormError("Barnes-Bernoulli polynomials have no series form here")
    q = _numeric_q(spec)
    if Form(form) is Form.MULTI:
        return _multi_sum(spec, n, q, tol)
    return _single_sum(spec, n, q, tol)
