"""Truncation machinery shared by the numeric series paths.

Every multi-index series here has terms bounded by

    g(k) = const * C(k) * rho**k * (x0 + W*k)**power,   k = |m| = m_1 + ... + m_r

where C(k) is either 1 or the number C(k+r-1, r-1) of multi-indices with
|m| = k.  The ratio g(k+1)/g(k) is non-increasing in k, so once it drops
below one at k0 the tail sum_{k >= k0} g(k) is at most g(k0)/(1 - ratio(k0)).
Sums are taken over the simplex |m| <= M; everything omitted lies in |m| > M.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import BudgetError, DivergenceError

MAX_CUTOFF = 20000
# largest simplex materialised at once (about 500 MB of indices at r = 3)
MAX_TERMS = 20_000_000
EPS = np.finfo(float).eps


@dataclass(frozen=True)
class TailModel:
    r: int
    rho: float
    x0: float
    W: float
    power: float
    const: float = 1.0
    count_indices: bool = True

    def __post_init__(self):
        if not 0 <= self.rho < 1:
            raise DivergenceError(f"geometric ratio {self.rho} is not below 1")

    def log_g(self, k: int) -> float:
        if self.const == 0 or self.rho == 0:
            return -math.inf
        out = math.log(self.const) + k * math.log(self.rho)
        if self.count_indices:
            out += math.lgamma(k + self.r) - math.lgamma(k + 1) - math.lgamma(self.r)
        if self.power:
            out += self.power * math.log(self.x0 + self.W * k)
        return out

    def tail(self, M: int) -> float:
        """Upper bound on the sum of g(k) over k > M."""
        k0 = max(M + 1, 1)
        lg = self.log_g(k0)
        if lg == -math.inf:
            return 0.0
        ratio = math.exp(self.log_g(k0 + 1) - lg)
        if ratio >= 1:
            return math.inf
        return math.exp(lg) / (1 - ratio)

    def cutoff(self, tol: float, minimum: int = 0) -> tuple[int, float]:
        """Smallest M >= minimum whose tail bound is below tol."""
        M = minimum
        while True:
            bound = self.tail(M)
            if bound < tol:
                return M, bound
            if M > MAX_CUTOFF:
                raise DivergenceError(f"no cutoff below {MAX_CUTOFF} reaches tol={tol:g}")
            M += 1


@lru_cache(maxsize=64)
def simplex(r: int, M: int) -> np.ndarray:
    """All m in N^r with m_1 + ... + m_r <= M, as an int array of shape (K, r)."""
    count = math.comb(M + r, r)
    if count > MAX_TERMS:
        raise BudgetError(f"{count} multi-indices for r={r}, |m| <= {M} exceeds {MAX_TERMS}")
    if r == 1:
        return np.arange(M + 1, dtype=np.int64)[:, None]
    blocks = []
    for first in range(M + 1):
        rest = simplex(r - 1, M - first)
        blocks.append(np.hstack([np.full((len(rest), 1), first, dtype=np.int64), rest]))
    out = np.vstack(blocks)
    out.setflags(write=False)
    return out


def exact_sum(terms: np.ndarray) -> complex | float:
    """Correctly rounded sum of float (or complex) terms."""
    if np.iscomplexobj(terms):
        return complex(math.fsum(terms.real), math.fsum(terms.imag))
    return math.fsum(terms)


def rounding_bound(terms: np.ndarray, ulps: float = 8.0) -> float:
    """Estimated accumulated error from evaluating the terms in floating point.

    ``ulps`` is the per-term relative error in units of machine epsilon, as
    estimated by the caller from how the terms were built.  This is an
    estimate, not a rigorous interval bound.
    """
    return float(ulps * EPS * np.sum(np.abs(terms)))
