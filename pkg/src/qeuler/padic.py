"""Finite-level fermionic p-adic integrals.

At level N the fermionic integral with measure parameter mu is the sum

    (1 + mu)/(1 + mu^(p^N)) * sum_{y < p^N} f(y) (-mu)^y

computed modulo p^M.  Integrands are q^(e*y) * P(y) for a rational polynomial
P; multivariate integrands are q^(e_1 y_1 + ... + e_r y_r) * P(y_1 + ... + y_r).
mu = q gives the q-integral I_q, mu = 1 the integral I_1 used for the
q-Euler polynomials.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import BudgetError, PreconditionError, ReductionError
from .families import FamilySpec, gf_expand
from .report import Report, non_decreasing
from .series import as_rational, binom

# summands of one level-N sum (per variable when factored)
BUDGET = 2_000_000


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, math.isqrt(p) + 1))


def reduce_rational(value, p: int, M: int) -> int:
    """Residue of a p-integral rational modulo p^M."""
    value = as_rational(value)
    mod = p**M
    if value.denominator % p == 0:
        raise ReductionError(f"{value} is not p-integral for p={p}")
    return value.numerator * pow(value.denominator, -1, mod) % mod


@dataclass(frozen=True)
class PadicInt:
    """An element of Z_p known modulo p^M."""

    p: int
    M: int
    residue: int

    def __post_init__(self):
        object.__setattr__(self, "residue", self.residue % self.p**self.M)

    @classmethod
    def from_rational(cls, value, p: int, M: int) -> PadicInt:
        return cls(p, M, reduce_rational(value, p, M))

    @property
    def modulus(self) -> int:
        return self.p**self.M

    def _other(self, other) -> int:
        if isinstance(other, PadicInt):
            if (other.p, other.M) != (self.p, self.M):
                raise PreconditionError("mixed p or precision")
            return other.residue
        return reduce_rational(other, self.p, self.M)

    def __add__(self, other):
        return PadicInt(self.p, self.M, self.residue + self._other(other))

    __radd__ = __add__

    def __sub__(self, other):
        return PadicInt(self.p, self.M, self.residue - self._other(other))

    def __rsub__(self, other):
        return PadicInt(self.p, self.M, self._other(other) - self.residue)

    def __neg__(self):
        return PadicInt(self.p, self.M, -self.residue)

    def __mul__(self, other):
        return PadicInt(self.p, self.M, self.residue * self._other(other))

    __rmul__ = __mul__

    def is_unit(self) -> bool:
        return self.residue % self.p != 0

    def inverse(self) -> PadicInt:
        if not self.is_unit():
            raise PreconditionError(f"{self.residue} is not a unit mod {self.p}")
        return PadicInt(self.p, self.M, pow(self.residue, -1, self.modulus))

    def __pow__(self, e: int) -> PadicInt:
        if e < 0:
            return self.inverse() ** (-e)
        return PadicInt(self.p, self.M, pow(self.residue, e, self.modulus))

    def valuation(self) -> int:
        """Largest v <= M with p^v dividing the residue (M means zero at this precision)."""
        x = self.residue
        if x == 0:
            return self.M
        v = 0
        while x % self.p == 0:
            x //= self.p
            v += 1
        return v


@dataclass(frozen=True)
class IntegrandPoly:
    """q^(weights . y) * P(y_1 + ... + y_r) with P given by its coefficients."""

    coeffs: tuple[Fraction, ...]
    weights: tuple[int, ...] = (0,)

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(as_rational(c) for c in self.coeffs) or (Fraction(0),))
        object.__setattr__(self, "weights", tuple(int(e) for e in self.weights))

    @classmethod
    def power(cls, n: int, x=0, weights: Sequence[int] = (0,)) -> IntegrandPoly:
        """(x + s)^n."""
        x = as_rational(x)
        return cls(tuple(binom(n, k) * x ** (n - k) for k in range(n + 1)), tuple(weights))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, y) -> Fraction:
        y = as_rational(y)
        out = Fraction(0)
        for c in reversed(self.coeffs):
            out = out * y + c
        return out

    def shift(self, n: int) -> IntegrandPoly:
        """P(s + n), same weights."""
        out = [Fraction(0)] * len(self.coeffs)
        for k, c in enumerate(self.coeffs):
            for i in range(k + 1):
                out[i] += c * binom(k, i) * Fraction(n) ** (k - i)
        return IntegrandPoly(tuple(out), self.weights)

    def residues(self, p: int, M: int) -> list[int]:
        try:
            return [reduce_rational(c, p, M) for c in self.coeffs]
        except ReductionError as exc:
            raise ReductionError(f"integrand coefficient not p-integral: {exc}") from exc


def _check_unit(name: str, value: int, p: int) -> None:
    if value % p != 1:
        raise PreconditionError(f"{name} must be congruent to 1 mod p={p}")


def _setup(q, mu, p: int, M: int) -> tuple[int, int]:
    if p % 2 == 0 or not _is_prime(p):
        raise PreconditionError(f"p must be an odd prime, got {p}")
    if M < 1:
        raise PreconditionError("precision M must be positive")
    try:
        qr = reduce_rational(q, p, M)
        mur = qr if mu is None else reduce_rational(mu, p, M)
    except ReductionError as exc:
        raise PreconditionError(f"q must be a p-adic unit: {exc}") from exc
    _check_unit("q", qr, p)
    _check_unit("mu", mur, p)
    return qr, mur


@lru_cache(maxsize=256)
def _moments(step: int, L: int, n: int, mod: int) -> tuple[int, ...]:
    """sum_{y < L} step^y y^k mod `mod`, for k = 0..n."""
    acc = [0] * (n + 1)
    pw = 1
    for y in range(L):
        t = pw
        for k in range(n + 1):
            acc[k] += t
            t = t * y
        pw = pw * step % mod
    return tuple(a % mod for a in acc)


def _prefactor(mur: int, L: int, mod: int, p: int) -> int:
    den = (1 + pow(mur, L, mod)) % mod
    if den % p == 0:
        raise PreconditionError("1 + mu^(p^N) is not a unit")
    return (1 + mur) * pow(den, -1, mod) % mod


def fermionic_sum(f: IntegrandPoly, q, p: int, N: int, M: int, *, mu=None) -> PadicInt:
    """Level-N fermionic integral of q^(e y) P(y) against mu (default mu = q)."""
    if len(f.weights) != 1:
        raise PreconditionError("univariate integrand expected; use fermionic_sum_multi")
    return fermionic_sum_multi(f, q, 1, p, N, M, mu=mu)


def fermionic_sum_multi(f: IntegrandPoly, q, r: int, p: int, N: int, M: int, *,
                        mu=None, method: str = "factored") -> PadicInt:
    """r-fold level-N fermionic integral of q^(e . y) P(y_1 + ... + y_r).

    ``method="factored"`` expands (y_1 + ... + y_r)^k binomially and sums one
    variable at a time (p^N summands per variable); ``method="direct"``
    enumerates all p^(rN) points.
    """
    qr, mur = _setup(q, mu, p, M)
    weights = f.weights * r if len(f.weights) == 1 else f.weights
    if len(weights) != r:
        raise PreconditionError(f"need {r} weight exponents, got {len(f.weights)}")
    mod = p**M
    L = p**N
    if method == "direct":
        if L**r > BUDGET:
            raise BudgetError(f"p^(rN) = {L ** r} exceeds the budget of {BUDGET} summands",
                              _max_level(p, r))
    elif method == "factored":
        if L > BUDGET:
            raise BudgetError(f"p^N = {L} exceeds the budget of {BUDGET} summands",
                              _max_level(p, 1))
    else:
        raise ValueError(f"unknown method {method!r}")

    coeffs = f.residues(p, M)
    n = len(coeffs) - 1
    steps = [(-mur) * pow(qr, e, mod) % mod for e in weights]
    if method == "direct":
        total = 0
        for ys in itertools.product(range(L), repeat=r):
            wgt = 1
            for s, y in zip(steps, ys):
                wgt = wgt * pow(s, y, mod) % mod
            sy = sum(ys)
            val = 0
            for c in reversed(coeffs):
                val = (val * sy + c) % mod
            total += wgt * val
    else:
        # moments of y_1 + ... + y_j under the product weight, by binomial convolution
        nu = list(_moments(steps[0], L, n, mod))
        for s in steps[1:]:
            mj = _moments(s, L, n, mod)
            nu = [sum(math.comb(k, i) * nu[i] * mj[k - i] for i in range(k + 1)) % mod
                  for k in range(n + 1)]
        total = sum(c * m for c, m in zip(coeffs, nu))
    pref = pow(_prefactor(mur, L, mod, p), r, mod)
    return PadicInt(p, M, total * pref)


def _max_level(p: int, r: int) -> int:
    N = 0
    while p ** (r * (N + 1)) <= BUDGET:
        N += 1
    return N


def oracle_residue(spec: FamilySpec, n: int, p: int, M: int) -> PadicInt:
    """The exact family value E_n reduced modulo p^M."""
    return PadicInt.from_rational(gf_expand(spec, n)[n], p, M)


def _levels(N) -> list[int]:
    return [N] if isinstance(N, int) else list(N)


def convergence_report(f: IntegrandPoly, q, r: int, p: int, levels: Iterable[int], M: int,
                       oracle: PadicInt, *, mu=1, slack: int = 2) -> Report:
    """Valuations of S_N - oracle over the levels, with the >= N - slack contract."""
    levels = list(levels)
    if levels and p ** max(levels) > BUDGET:
        raise BudgetError(f"p^N = {p ** max(levels)} exceeds the budget of {BUDGET} summands",
                          _max_level(p, 1))
    rows = []
    for N in levels:
        s = fermionic_sum_multi(f, q, r, p, N, M, mu=mu)
        rows.append({"N": N, "residue": s.residue, "valuation": (s - oracle).valuation()})
    vals = [row["valuation"] for row in rows]
    bound_ok = all(row["valuation"] >= min(row["N"] - slack, M) for row in rows)
    monotone = non_decreasing(vals)
    return Report("padic:convergence", bound_ok and monotone, details={
        "rows": rows, "monotone": monotone, "bound_ok": bound_ok, "oracle": oracle.residue})


def check_shift_identity(f: IntegrandPoly, n: int, p: int, N, M: int) -> Report:
    """I_1(f(. + n)) = (-1)^n I_1(f) + 2 sum_{l<n} (-1)^(n-1-l) f(l), at finite levels.

    ``N`` may be a single level or a sequence of levels; the report lists the
    valuation of LHS - RHS per level.
    """
    if n < 1:
        raise PreconditionError("shift n must be positive")
    plain = IntegrandPoly(f.coeffs, (0,))
    shifted = plain.shift(n)
    correction = 2 * sum((Fraction((-1) ** (n - 1 - l)) * plain(l) for l in range(n)), Fraction(0))
    rows = []
    for level in _levels(N):
        lhs = fermionic_sum(shifted, 1, p, level, M)
        rhs = (-1) ** n * fermionic_sum(plain, 1, p, level, M) + correction
        rows.append({"N": level, "valuation": (lhs - rhs).valuation()})
    vals = [row["valuation"] for row in rows]
    return Report("padic:shift", non_decreasing(vals), details={"rows": rows})


def check_q_limit(f: IntegrandPoly, p: int, k, N: int, M: int, *, slack: int = 1) -> Report:
    """Valuation of I_{q_k}(f) - I_1(f) at level N, with q_k = 1 + p^k.

    ``k`` may be a single exponent or a sequence; the check requires the
    valuations to be non-decreasing in k and at least min(k - slack, M).
    """
    base = fermionic_sum(f, 1, p, N, M)
    rows = []
    for kk in _levels(k):
        qk = 1 + p**kk
        diff = fermionic_sum(f, qk, p, N, M) - base
        rows.append({"k": kk, "valuation": diff.valuation()})
    vals = [row["valuation"] for row in rows]
    bound_ok = all(row["valuation"] >= min(row["k"] - slack, M) for row in rows)
    monotone = non_decreasing(vals)
    return Report("padic:q-limit", bound_ok and monotone, details={
        "rows": rows, "monotone": monotone, "bound_ok": bound_ok})
