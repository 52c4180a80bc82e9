"""Dirichlet characters of odd modulus.

A character is stored by its exact phases: chi(m) = exp(2*pi*i*phase[m]) for
m coprime to the modulus, and ``None`` (value 0) otherwise.  Complex values
are derived from the phases, so real characters have values that are exactly
-1, 0 or 1.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DomainError


def factorize(n: int) -> list[tuple[int, int]]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1
    if n > 1:
        out.append((n, 1))
    return out


def euler_phi(n: int) -> int:
    result = n
    for p, _ in factorize(n):
        result -= result // p
    return result


def carmichael(n: int) -> int:
    """Carmichael function for odd n (every prime-power unit group is cyclic)."""
    lam = 1
    for p, e in factorize(n):
        lam = math.lcm(lam, p ** (e - 1) * (p - 1))
    return lam


def primitive_root(modulus: int) -> int:
    """Smallest generator of (Z/modulus)^* for an odd prime power modulus."""
    phi = euler_phi(modulus)
    prime_factors = [p for p, _ in factorize(phi)]
    for g in range(2, modulus):
        if math.gcd(g, modulus) != 1:
            continue
        if all(pow(g, phi // p, modulus) != 1 for p in prime_factors):
            return g
    return 1  # modulus 1 or 2


def _phase_value(phase: Fraction | None) -> complex:
    if phase is None:
        return 0j
    exact = {Fraction(0): 1 + 0j, Fraction(1, 2): -1 + 0j,
             Fraction(1, 4): 1j, Fraction(3, 4): -1j}
    if phase in exact:
        return exact[phase]
    return cmath.exp(2j * math.pi * float(phase))


@dataclass(frozen=True)
class DirichletCharacter:
    conductor: int
    phases: tuple[Fraction | None, ...]
    values: tuple[complex, ...] = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        f = self.conductor
        if f < 1 or f % 2 == 0:
            raise DomainError(f"conductor must be odd and positive, got {f}")
        if len(self.phases) != f:
            raise DomainError("need one phase per residue class")
        object.__setattr__(self, "values", tuple(_phase_value(ph) for ph in self.phases))

    @property
    def is_real(self) -> bool:
        return all(ph is None or ph in (0, Fraction(1, 2)) for ph in self.phases)

    @property
    def is_trivial(self) -> bool:
        return all(ph is None or ph == 0 for ph in self.phases)

    def __call__(self, m: int) -> complex:
        return self.values[m % self.conductor]

    def exact(self, m: int) -> int:
        """Integer value in {-1, 0, 1}; only defined for real characters."""
        ph = self.phases[m % self.conductor]
        if ph is None:
            return 0
        if ph == 0:
            return 1
        if ph == Fraction(1, 2):
            return -1
        raise DomainError("character value is not real")

    def exact_table(self) -> tuple[int, ...]:
        return tuple(self.exact(m) for m in range(self.conductor))

    def __repr__(self):
        if self.is_real:
            return f"DirichletCharacter(f={self.conductor}, values={list(self.exact_table())})"
        return f"DirichletCharacter(f={self.conductor}, phases={list(self.phases)})"


def trivial_character(f: int = 1) -> DirichletCharacter:
    if f == 1:
        # chi = 1 everywhere, including chi(0), so twisted sums reduce to plain ones
        return DirichletCharacter(1, (Fraction(0),))
    return DirichletCharacter(f, tuple(Fraction(0) if math.gcd(m, f) == 1 else None
                                       for m in range(f)))


def enumerate_characters(f: int) -> list[DirichletCharacter]:
    """All phi(f) characters mod an odd f, trivial character first.

    (Z/f)^* is split by CRT into cyclic groups (Z/p^e)^*; a character is fixed
    by choosing, for each factor, the image exp(2*pi*i*k/phi(p^e)) of a
    primitive root.
    """
    if f < 1 or f % 2 == 0:
        raise DomainError(f"only odd positive moduli are supported, got {f}")
    if f == 1:
        return [trivial_character(1)]
    parts = []
    for p, e in factorize(f):
        pe = p**e
        phi = pe - pe // p
        g = primitive_root(pe)
        dlog = {}
        x = 1
        for k in range(phi):
            dlog[x] = k
            x = x * g % pe
        parts.append((pe, phi, dlog))

    chars = []
    for ks in itertools.product(*(range(phi) for _, phi, _ in parts)):
        phases = []
        for m in range(f):
            if math.gcd(m, f) != 1:
                phases.append(None)
                continue
            ph = Fraction(0)
            for k, (pe, phi, dlog) in zip(ks, parts):
                ph += Fraction(k * dlog[m % pe], phi)
            phases.append(ph - math.floor(ph))
        chars.append(DirichletCharacter(f, tuple(phases)))
    return chars


def chi_eval(chi: DirichletCharacter, m: int) -> complex:
    return chi(m)


def real_characters(f: int, *, include_trivial: bool = False) -> list[DirichletCharacter]:
    return [c for c in enumerate_characters(f)
            if c.is_real and (include_trivial or not c.is_trivial)]
