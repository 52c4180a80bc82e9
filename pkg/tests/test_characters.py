import cmath
import itertools
import math

import pytest

from qeuler.characters import (carmichael, chi_eval, enumerate_characters, euler_phi, factorize,
                               primitive_root, real_characters, trivial_character)
from qeuler.errors import DomainError

MODULI = (1, 3, 5, 7, 9, 15, 21, 25, 27, 45)


def test_modulus_one():
    chars = enumerate_characters(1)
    assert len(chars) == 1
    assert chars[0](0) == 1 and chars[0](17) == 1
    assert chars[0].is_trivial and chars[0].is_real


def test_modulus_three():
    chars = enumerate_characters(3)
    assert len(chars) == 2 and chars[0].is_trivial
    chi = chars[1]
    assert chi.exact_table() == (0, 1, -1)
    assert chi_eval(chi, 5) == -1
    assert chi_eval(chi, 3) == 0


def test_modulus_five_brute_force():
    # multiplicative assignments are fixed by the value at the generator 2 (a 4th root of unity)
    brute = []
    for k in range(4):
        table = [0j] * 5
        x = 1
        for j in range(4):
            table[x] = cmath.exp(2j * math.pi * k * j / 4)
            x = x * 2 % 5
        brute.append(table)
    chars = enumerate_characters(5)
    assert len(chars) == 4
    for chi in chars:
        assert any(all(abs(chi(m) - t[m]) < 1e-12 for m in range(5)) for t in brute)
    real = real_characters(5)
    assert len(real) == 1
    assert real[0].exact_table() == (0, 1, -1, -1, 1)


def test_trivial_character_values():
    chi = trivial_character(15)
    for m in range(30):
        assert chi_eval(chi, m) == (1 if math.gcd(m, 15) == 1 else 0)


@pytest.mark.parametrize("f", MODULI)
def test_count_and_distinctness(f):
    chars = enumerate_characters(f)
    assert len(chars) == euler_phi(f)
    assert len({c.phases for c in chars}) == len(chars)


@pytest.mark.parametrize("f", MODULI)
def test_multiplicativity_and_support(f):
    for chi in enumerate_characters(f):
        assert chi(1) == 1
        for a in range(f):
            assert (chi(a) == 0) == (math.gcd(a, f) > 1)
            for b in range(f):
                assert abs(chi(a * b) - chi(a) * chi(b)) < 1e-12


@pytest.mark.parametrize("f", MODULI)
def test_orthogonality(f):
    chars = enumerate_characters(f)
    for chi in chars:
        total = sum(chi(m) for m in range(f))
        expected = euler_phi(f) if chi.is_trivial else 0
        if f == 1:
            expected = 1
        assert abs(total - expected) < 1e-9
    for c1, c2 in itertools.combinations(chars, 2):
        inner = sum(c1(m) * c2(m).conjugate() for m in range(f))
        assert abs(inner) < 1e-9


@pytest.mark.parametrize("f", MODULI)
def test_values_have_order_dividing_carmichael(f):
    lam = carmichael(f)
    for chi in enumerate_characters(f):
        for m in range(f):
            if chi(m):
                assert abs(chi(m) ** lam - 1) < 1e-9


def test_periodicity():
    for chi in enumerate_characters(7):
        for m in range(-14, 30):
            assert chi(m) == chi(m % 7)


def test_exact_values_of_real_characters():
    for f in (3, 5, 7, 15):
        for chi in real_characters(f, include_trivial=True):
            assert all(chi.exact(m) == chi(m).real for m in range(f))
    complex_chi = next(c for c in enumerate_characters(5) if not c.is_real)
    with pytest.raises(DomainError):
        complex_chi.exact(2)


def test_number_theory_helpers():
    assert factorize(360) == [(2, 3), (3, 2), (5, 1)]
    assert euler_phi(45) == 24
    assert carmichael(45) == 12
    for pe in (3, 9, 27, 5, 25, 7, 49):
        g = primitive_root(pe)
        assert len({pow(g, k, pe) for k in range(euler_phi(pe))}) == euler_phi(pe)


@pytest.mark.parametrize("f", [0, 2, 4, 12, -3])
def test_even_or_nonpositive_modulus_rejected(f):
    with pytest.raises(DomainError):
        enumerate_characters(f)
