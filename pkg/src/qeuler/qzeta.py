"""Barnes-type q-zeta and q-l-functions of order r for real 0 < q < 1.

    zeta(s, x | w) = 2^r sum_m (-1)^|m| q^(w.m) / (x + w.m)^s
    l(s, x; chi | w) = the same with prod_j chi(m_j) inserted

The q^(w.m) factor makes both series absolutely convergent for every complex
s, so they are evaluated by direct summation everywhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy import integrate, special

from ._summation import TailModel, exact_sum, rounding_bound, simplex
from .characters import DirichletCharacter
from .errors import DivergenceError, DomainError, PathError, UnsupportedFormError
from .families import FamilySpec, Form, Kind, gf_expand, series_sum
from .report import Report


@dataclass(frozen=True)
class ZetaParams:
    q: float | Fraction
    x: float | Fraction
    w: tuple
    chi: DirichletCharacter | None = None
    tol: float = 1e-12

    def __post_init__(self):
        object.__setattr__(self, "w", tuple(self.w))
        if not 0 < float(self.q) < 1:
            raise DivergenceError(f"need 0 < q < 1, got q = {float(self.q):g}")
        if float(self.x) <= 0:
            raise DomainError("need x > 0")
        if not self.w or any(float(v) <= 0 for v in self.w):
            raise DomainError("weights must be positive")
        if self.tol <= 0:
            raise DomainError("tol must be positive")

    @property
    def r(self) -> int:
        return len(self.w)


@dataclass(frozen=True)
class ComplexVal:
    re: float
    im: float
    err_bound: float

    @property
    def value(self) -> complex:
        return complex(self.re, self.im)


def _sum(s: complex, params: ZetaParams, chi: DirichletCharacter | None, cutoff: int | None = None):
    s = complex(s)
    q, x, r = float(params.q), float(params.x), params.r
    w = np.array([float(v) for v in params.w])
    sigma = s.real
    # |base^-s| = base^-Re(s) <= x^-Re(s) when Re(s) >= 0, else (x + W k)^|Re(s)|
    if sigma >= 0:
        model = TailModel(r=r, rho=q ** w.min(), x0=x, W=float(w.max()), power=0.0,
                          const=2.0**r * x**-sigma)
    else:
        model = TailModel(r=r, rho=q ** w.min(), x0=x, W=float(w.max()), power=-sigma,
                          const=2.0**r)
    if cutoff is None:
        M, bound = model.cutoff(params.tol, minimum=max(10, int(abs(sigma)) + 10))
    else:
        M, bound = cutoff, model.tail(cutoff)
    idx = simplex(r, M)
    lin = idx @ w
    base = x + lin
    sign = 1.0 - 2.0 * (idx.sum(axis=1) % 2)
    log_mag = lin * math.log(q) - s * np.log(base)
    terms = 2.0**r * sign * np.exp(log_mag)
    if chi is not None:
        terms = terms * np.prod(np.array(chi.values)[idx % chi.conductor], axis=1)
    if s.imag == 0 and (chi is None or chi.is_real):
        terms = terms.real
    value = complex(exact_sum(terms))
    ulps = 8 + float(np.max(np.abs(log_mag)))
    err = bound + rounding_bound(terms, ulps)
    return ComplexVal(value.real, value.imag, err), M


def zeta_qr(s, params: ZetaParams, *, cutoff: int | None = None) -> ComplexVal:
    """Barnes-type q-zeta function of order r = len(params.w)."""
    return _sum(s, params, None, cutoff)[0]


def l_qr(s, params: ZetaParams, *, cutoff: int | None = None) -> ComplexVal:
    """Dirichlet-type q-l-function; params.chi must be set."""
    if params.chi is None:
        raise DomainError("l_qr needs a character")
    return _sum(s, params, params.chi, cutoff)[0]


def zeta_cutoff(s, params: ZetaParams) -> int:
    """The summation cutoff zeta_qr picks for this s (simplex |m| <= M)."""
    return _sum(s, params, params.chi)[1]


def _reference(n: int, params: ZetaParams) -> tuple[float, float]:
    """E_n(x | w) or E_{n,chi}(x | w) from the families module, with its error bound."""
    chi = params.chi
    kind = Kind.BARNES_QEULER if chi is None else Kind.CHI_BARNES_QEULER
    a = None if chi is None else params.w
    try:
        spec = FamilySpec(kind, q=params.q, x=params.x, w=params.w, a=a, chi=chi)
        return float(gf_expand(spec, n)[n]), 0.0
    except (PathError, TypeError):
        spec = FamilySpec(kind, q=float(params.q), x=float(params.x), w=params.w, a=a, chi=chi)
        pv = series_sum(spec, n, Form.MULTI, tol=params.tol)
        return pv.value, pv.truncation_report.tail_bound + pv.truncation_report.rounding_bound


def check_interpolation(n: int, params: ZetaParams, *, atol: float = 1e-8) -> Report:
    """zeta(-n) (or l(-n) when params.chi is set) against E_n from the families module."""
    val = (zeta_qr if params.chi is None else l_qr)(-n, params)
    ref, ref_err = _reference(n, params)
    diff = abs(val.value - ref)
    rel = diff / abs(ref) if ref else diff
    return Report("interpolation", diff < atol, val.value, ref, diff, {
        "n": n, "relative": rel, "err_bound": val.err_bound, "reference_err_bound": ref_err})


def generating_function_neg(t: float, params: ZetaParams) -> complex:
    """F(-t, x | w) (or its chi-twisted version) from the closed product form."""
    q, x = float(params.q), float(params.x)
    out = math.exp(-x * t)
    chi = params.chi
    for wj in params.w:
        wj = float(wj)
        if chi is None:
            out *= 2.0 / (q**wj * math.exp(-wj * t) + 1.0)
        else:
            f = chi.conductor
            num = sum(chi(b) * q ** (wj * b) * (-1) ** b * math.exp(-wj * b * t) for b in range(f))
            out *= 2.0 * num / (q ** (wj * f) * math.exp(-wj * f * t) + 1.0)
    return out


def generating_function_neg_series(t: float, params: ZetaParams, terms: int = 200) -> complex:
    """F(-t, x | w) from its exponential series, truncated at |m| <= terms."""
    q, x, r = float(params.q), float(params.x), params.r
    w = np.array([float(v) for v in params.w])
    idx = simplex(r, terms)
    lin = idx @ w
    vals = 2.0**r * (1.0 - 2.0 * (idx.sum(axis=1) % 2)) * np.exp(lin * (math.log(q) - t) - x * t)
    if params.chi is not None:
        chi = params.chi
        vals = vals * np.prod(np.array(chi.values)[idx % chi.conductor], axis=1)
    return complex(exact_sum(vals.astype(complex)))


def _tail_cut(s: float, params: ZetaParams, eps: float) -> float:
    """T with int_T^inf t^(s-1) 2^r e^(-xt) dt < eps (a bound on the integrand's tail)."""
    x, r = float(params.x), params.r
    T = 2.0
    while 2.0**r * x**-s * special.gamma(s) * special.gammaincc(s, x * T) >= eps:
        T *= 1.5
    return T


def check_mellin(s: float, params: ZetaParams, *, atol: float = 1e-4) -> Report:
    """(1/Gamma(s)) int_0^inf t^(s-1) F(-t, x | w) dt against zeta(s) (or l(s))."""
    if isinstance(s, complex):
        if s.imag:
            raise UnsupportedFormError("the quadrature check takes real s only")
        s = s.real
    s = float(s)
    if s <= 0:
        raise UnsupportedFormError("need s > 0 (Gamma has poles at non-positive integers)")
    # |F(-t)| <= 2^r e^(-xt) * prod 1/|...|; the denominators are >= 1 and the
    # chi numerators are bounded by f, so this tail bound covers both cases.
    scale = 1.0 if params.chi is None else float(params.chi.conductor) ** params.r
    T = _tail_cut(s, params, 1e-12 / scale)
    tail = scale * 2.0**params.r * float(params.x) ** -s * special.gamma(s) * special.gammaincc(
        s, float(params.x) * T)

    def part(fn):
        # t^(s-1) is handled by the algebraic weight on [0, 1]
        head, e1 = integrate.quad(fn, 0.0, 1.0, weight="alg", wvar=(s - 1.0, 0.0),
                                  epsabs=1e-13, epsrel=1e-12, limit=200)
        body, e2 = integrate.quad(lambda t: t ** (s - 1.0) * fn(t), 1.0, T,
                                  epsabs=1e-13, epsrel=1e-12, limit=400)
        return head + body, e1 + e2

    re, err_re = part(lambda t: generating_function_neg(t, params).real)
    im, err_im = (0.0, 0.0)
    if params.chi is not None and not params.chi.is_real:
        im, err_im = part(lambda t: generating_function_neg(t, params).imag)
    g = math.gamma(s)
    mellin = complex(re, im) / g
    quad_err = (err_re + err_im + tail) / g
    series = (zeta_qr if params.chi is None else l_qr)(s, params)
    diff = abs(mellin - series.value)
    return Report("mellin", diff < atol, mellin, series.value, diff, {
        "s": s, "quad_err": quad_err, "series_err": series.err_bound, "T": T})
