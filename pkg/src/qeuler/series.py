"""Exact substrate: rationals, truncated power series in t, (q-)binomials.

Rationals are :class:`fractions.Fraction`, which keeps numerator and
denominator coprime with a positive denominator after every operation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Iterable, Union

from .errors import DomainError, NonInvertibleError, SeriesOrderError

Rational = Fraction
Number = Union[int, Fraction]

DEFAULT_ORDER = 16


def as_rational(value) -> Fraction:
    """Coerce ints, Fractions and "p/q" strings to Fraction; reject floats."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, _RationalABC)) and not isinstance(value, bool):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


@dataclass(frozen=True)
class TruncSeries:
    """sum(coeffs[k] t^k) + O(t^(order+1)) with Fraction coefficients."""

    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("a truncated series needs at least one coefficient")
        object.__setattr__(self, "coeffs", tuple(as_rational(c) for c in self.coeffs))

    @classmethod
    def from_coeffs(cls, coeffs: Iterable, order: int) -> TruncSeries:
        cs = [as_rational(c) for c in coeffs][: order + 1]
        cs += [Fraction(0)] * (order + 1 - len(cs))
        return cls(tuple(cs))

    @classmethod
    def constant(cls, c, order: int) -> TruncSeries:
        return cls.from_coeffs([c], order)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k: int) -> Fraction:
        return self.coeffs[k]

    def __len__(self) -> int:
        return len(self.coeffs)

    def _check(self, other: TruncSeries) -> None:
        if other.order != self.order:
            raise SeriesOrderError(f"order mismatch: {self.order} vs {other.order}")

    def __add__(self, other):
        if isinstance(other, TruncSeries):
            self._check(other)
            return TruncSeries(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))
        return self + TruncSeries.constant(other, self.order)

    __radd__ = __add__

    def __neg__(self):
        return TruncSeries(tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, TruncSeries):
            return ts_mul(self, other)
        c = as_rational(other)
        return TruncSeries(tuple(c * a for a in self.coeffs))

    __rmul__ = __mul__

    def __pow__(self, e: int) -> TruncSeries:
        if e < 0:
            return ts_inv(self) ** (-e)
        result = TruncSeries.constant(1, self.order)
        base = self
        while e:
            if e & 1:
                result = ts_mul(result, base)
            e >>= 1
            if e:
                base = ts_mul(base, base)
        return result

    def inv(self) -> TruncSeries:
        return ts_inv(self)

    def egf(self) -> list[Fraction]:
        """The values k! * c_k, i.e. the sequence whose EGF this series is."""
        out = []
        fact = 1
        for k, c in enumerate(self.coeffs):
            if k:
                fact *= k
            out.append(c * fact)
        return out


def ts_mul(a: TruncSeries, b: TruncSeries) -> TruncSeries:
    a._check(b)
    T = a.order
    ac, bc = a.coeffs, b.coeffs
    nz = [(i, c) for i, c in enumerate(ac) if c]
    out = [Fraction(0)] * (T + 1)
    for i, ci in nz:
        for j in range(T + 1 - i):
            if bc[j]:
                out[i + j] += ci * bc[j]
    return TruncSeries(tuple(out))


def ts_inv(a: TruncSeries) -> TruncSeries:
    a0 = a.coeffs[0]
    if a0 == 0:
        raise NonInvertibleError("constant term is zero; factor out powers of t first")
    T = a.order
    inv0 = 1 / a0
    b = [inv0]
    for k in range(1, T + 1):
        s = sum((a.coeffs[i] * b[k - i] for i in range(1, k + 1) if a.coeffs[i]), Fraction(0))
        b.append(-s * inv0)
    return TruncSeries(tuple(b))


def ts_exp_linear(c, T: int = DEFAULT_ORDER) -> TruncSeries:
    """exp(c t) truncated at order T."""
    c = as_rational(c)
    out = [Fraction(1)]
    for k in range(1, T + 1):
        out.append(out[-1] * c / k)
    return TruncSeries(tuple(out))


def binom(n, k: int):
    """Generalised binomial n(n-1)...(n-k+1)/k!; n may be negative or rational."""
    if k < 0:
        raise DomainError("k must be non-negative")
    num = math.prod(n - i for i in range(k)) if k else 1
    if isinstance(n, int):
        return num // math.factorial(k)
    return Fraction(num) / math.factorial(k)


@dataclass(frozen=True)
class QBracketContext:
    """A fixed q for evaluating [n]_q = (1 - q^n)/(1 - q) and q-binomials.

    q may be a Fraction (exact) or a float (numeric path).
    """

    q: Number | float

    def __post_init__(self):
        q = self.q
        if not isinstance(q, float):
            q = as_rational(q)
            object.__setattr__(self, "q", q)
        if q == 0 or q == 1:
            raise DomainError("q-brackets need q != 0 and q != 1")

    def bracket(self, n: int):
        return (1 - self.q**n) / (1 - self.q)


def qbracket(n: int, ctx) -> Fraction | float:
    if not isinstance(ctx, QBracketContext):
        ctx = QBracketContext(ctx)
    return ctx.bracket(n)


def qbinom(n: int, k: int, ctx) -> Fraction | float:
    """Gaussian binomial [n]_q [n-1]_q ... [n-k+1]_q / ([k]_q ... [1]_q)."""
    if not isinstance(ctx, QBracketContext):
        ctx = QBracketContext(ctx)
    if k < 0 or n < 0 or k > n:
        raise DomainError(f"q-binomial needs 0 <= k <= n, got n={n}, k={k}")
    k = min(k, n - k)
    # [n-i]_q / [i+1]_q = (1 - q^(n-i)) / (1 - q^(i+1)); the (1-q) factors cancel.
    q = ctx.q
    num = den = q**0
    for i in range(k):
        num *= 1 - q ** (n - i)
        den *= 1 - q ** (i + 1)
    return num / den
