from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qeuler.characters import real_characters, trivial_character
from qeuler.errors import PathError, PreconditionError, UnsupportedFormError
from qeuler.families import FamilySpec, Kind, gf_expand
from qeuler.identities import (binomial_shift_in_x, check_bernoulli_difference,
                               check_difference_identity, check_distribution)

CHI3 = real_characters(3)[0]
CHI5 = real_characters(5)[0]
QS = (F(1, 3), F(1, 2))
XS = (F(0), F(1), F(5, 2))


def test_chi_distribution_trivial_character_is_tautology():
    rep = check_distribution(FamilySpec(Kind.CHI_QEULER, q=F(1, 2), x=F(1, 3),
                                        chi=trivial_character(1)), 1, 4)
    assert rep.passed and rep.lhs == rep.rhs


def test_barnes_distribution_example():
    assert check_distribution(FamilySpec(Kind.BARNES_QEULER, q=F(1, 2), w=(1,)), 3, 2)


def test_hr_distribution_example():
    spec = FamilySpec(Kind.QEULER_HR, q=F(1, 3), x=F(1, 2), r=1, h=1)
    assert check_distribution(spec, 3, 3)


@pytest.mark.parametrize("q", QS)
@pytest.mark.parametrize("x", XS)
@pytest.mark.parametrize("chi", [trivial_character(1), CHI3, CHI5], ids=["f1", "f3", "f5"])
def test_chi_distribution_grid(q, x, chi):
    spec = FamilySpec(Kind.CHI_QEULER, q=q, x=x, chi=chi)
    for f in (1, 3, 5, 9, 15):
        if f % chi.conductor == 0:
            for n in range(9):
                assert check_distribution(spec, f, n), (f, n)


@pytest.mark.parametrize("q", QS)
@pytest.mark.parametrize("w", [(1,), (1, 2), (1, 1, 2)])
@pytest.mark.parametrize("f", (1, 3, 5))
def test_barnes_distribution_grid(q, w, f):
    spec = FamilySpec(Kind.BARNES_QEULER, q=q, x=F(5, 2), w=w)
    assert all(check_distribution(spec, f, n) for n in range(9))


@pytest.mark.parametrize("q", QS)
@pytest.mark.parametrize("h,r", [(1, 1), (2, 1), (3, 1), (1, 2), (2, 2), (3, 2), (2, 3)])
def test_hr_distribution_grid(q, h, r):
    spec = FamilySpec(Kind.QEULER_HR, q=q, x=1, r=r, h=h)
    for f in (1, 3, 5):
        assert all(check_distribution(spec, f, n) for n in range(7)), f


def test_distribution_reports_discrepancy():
    rep = check_distribution(FamilySpec(Kind.QEULER_ORDER_R, q=F(1, 2), x=1, r=2), 3, 4)
    assert rep.passed and rep.discrepancy == 0 and rep.details == {"f": 3, "n": 4}


def test_distribution_errors():
    with pytest.raises(PreconditionError):
        check_distribution(FamilySpec(Kind.QEULER_ORDER_R, q=F(1, 2)), 2, 1)
    with pytest.raises(PreconditionError):
        check_distribution(FamilySpec(Kind.CHI_QEULER, q=F(1, 2), chi=CHI3), 5, 1)
    with pytest.raises(UnsupportedFormError):
        check_distribution(FamilySpec(Kind.BARNES_BERNOULLI, a=(1,)), 3, 1)
    with pytest.raises(PathError):
        check_distribution(FamilySpec(Kind.QEULER_ORDER_R, q=0.5), 3, 1)


# -- difference identity --------------------------------------------------------

def test_difference_classical_case():
    for m in range(6):
        for n in (2, 4):
            assert check_difference_identity(trivial_character(1), 1, m, n)


def test_difference_examples():
    for chi in (trivial_character(1), CHI3):
        assert check_difference_identity(chi, F(1, 2), 0, 1)
    assert check_difference_identity(CHI3, F(1, 3), 1, 2)


def test_difference_needs_q_power_on_shifted_term():
    # without q^(nf), the printed form fails away from q = 1
    q = F(1, 2)
    spec = FamilySpec(Kind.CHI_QEULER, q=q, chi=CHI3)
    bare = gf_expand(spec.replace(x=3), 0)[0] + gf_expand(spec, 0)[0]
    rep = check_difference_identity(CHI3, q, 0, 1)
    assert rep.passed and bare != rep.rhs
    assert (bare, rep.rhs) == (F(-8, 3), F(-3, 2))


@pytest.mark.parametrize("chi", [trivial_character(1), CHI3, CHI5], ids=["f1", "f3", "f5"])
@pytest.mark.parametrize("q", QS + (F(1), F(3, 2)))
def test_difference_grid(chi, q):
    for m in range(6):
        for n in range(1, 4):
            assert check_difference_identity(chi, q, m, n)


# -- Barnes-Bernoulli ----------------------------------------------------------

def test_bernoulli_examples():
    assert check_bernoulli_difference(1, 0, (1,), F(1, 3))
    assert check_bernoulli_difference(4, 1, (1, 1), F(1, 2))
    assert check_bernoulli_difference(6, 2, (1, 2, 3), 1)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(1, 4), min_size=1, max_size=4), st.integers(1, 12),
       st.fractions(0, 5, max_denominator=6))
def test_bernoulli_difference_property(a, n, w):
    assert check_bernoulli_difference(n, len(a) - 1, a, w)


def test_bernoulli_errors():
    with pytest.raises(PreconditionError):
        check_bernoulli_difference(0, 0, (1,), 0)
    with pytest.raises(PreconditionError):
        check_bernoulli_difference(2, 1, (1,), 0)


# -- shift in x ----------------------------------------------------------------

def test_binomial_shift_examples():
    assert binomial_shift_in_x(FamilySpec(Kind.QEULER_ORDER_R, q=F(1, 2), x=7), 0)
    assert binomial_shift_in_x(FamilySpec(Kind.QEULER_ORDER_R, q=F(1, 2), x=3, r=2), 4)
    assert binomial_shift_in_x(FamilySpec(Kind.BARNES_QEULER, q=F(1, 3), x=F(1, 2), w=(1, 2)), 3)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([Kind.QEULER_ORDER_R, Kind.BARNES_QEULER, Kind.CHI_QEULER,
                        Kind.BARNES_BERNOULLI]),
       st.fractions(0, 4, max_denominator=5), st.integers(0, 8))
def test_binomial_shift_property(kind, x, n):
    extra = {Kind.QEULER_ORDER_R: dict(q=F(1, 3), r=2),
             Kind.BARNES_QEULER: dict(q=F(1, 2), w=(1, 3)),
             Kind.CHI_QEULER: dict(q=F(2, 3), chi=CHI5),
             Kind.BARNES_BERNOULLI: dict(a=(1, 2))}[kind]
    assert binomial_shift_in_x(FamilySpec(kind, x=x, **extra), n)
