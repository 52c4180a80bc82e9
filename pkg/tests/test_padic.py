from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qeuler.errors import BudgetError, PreconditionError, ReductionError
from qeuler.families import FamilySpec, Kind, gf_expand
from qeuler.padic import (IntegrandPoly, PadicInt, check_q_limit, check_shift_identity,
                          convergence_report, fermionic_sum, fermionic_sum_multi, oracle_residue,
                          reduce_rational)

ONE = IntegrandPoly((1,))


def val(a, b):
    return (a - b).valuation()


# -- PadicInt ---------------------------------------------------------------------

@given(st.fractions(max_denominator=50).filter(lambda v: v.denominator % 3),
       st.fractions(max_denominator=50).filter(lambda v: v.denominator % 3))
def test_reduction_is_a_ring_map(a, b):
    A, B = PadicInt.from_rational(a, 3, 6), PadicInt.from_rational(b, 3, 6)
    assert A + B == PadicInt.from_rational(a + b, 3, 6)
    assert A * B == PadicInt.from_rational(a * b, 3, 6)
    assert A - B == PadicInt.from_rational(a - b, 3, 6)


@given(st.integers(1, 5**6 - 1).filter(lambda v: v % 5))
def test_units_invert(x):
    u = PadicInt(5, 6, x)
    assert (u * u.inverse()).residue == 1
    assert u ** -3 * u**3 == PadicInt(5, 6, 1)


def test_valuation():
    assert PadicInt(3, 5, 0).valuation() == 5
    assert PadicInt(3, 5, 18).valuation() == 2
    assert PadicInt(3, 5, 7).valuation() == 0


def test_reduction_errors():
    with pytest.raises(ReductionError):
        reduce_rational(F(1, 3), 3, 4)
    with pytest.raises(PreconditionError):
        PadicInt(3, 4, 3).inverse()
    with pytest.raises(PreconditionError):
        PadicInt(3, 4, 1) + PadicInt(5, 4, 1)


# -- fermionic sums ---------------------------------------------------------------

@pytest.mark.parametrize("p", (3, 5, 7))
@pytest.mark.parametrize("N", (1, 2, 4))
def test_constant_integrand_at_q_one(p, N):
    assert fermionic_sum(ONE, 1, p, N, 6).residue == 1


def test_e0_at_q_one_plus_p():
    p, M = 3, 8
    target = PadicInt.from_rational(F(2, 2 + p), p, M)
    vals = [val(fermionic_sum(IntegrandPoly((1,), (1,)), 1 + p, p, N, M, mu=1), target)
            for N in range(1, 8)]
    assert vals == sorted(vals) and vals[-1] >= 7


def test_e1_at_q_one_plus_p():
    p, M, q = 3, 8, F(4)
    target = PadicInt.from_rational(-2 * q / (1 + q) ** 2, p, M)
    assert target == oracle_residue(FamilySpec(Kind.QEULER_ORDER_R, q=q), 1, p, M)
    vals = [val(fermionic_sum(IntegrandPoly.power(1, 0, (1,)), q, p, N, M, mu=1), target)
            for N in range(2, 8)]
    assert vals == sorted(vals) and vals[-1] >= 6


def test_order_two_constant():
    p, M = 3, 8
    target = PadicInt.from_rational(F(2, 5) ** 2, p, M)
    s = fermionic_sum_multi(IntegrandPoly((1,), (1,)), 4, 2, p, 7, M, mu=1)
    assert val(s, target) >= 7


def test_order_two_first_moment():
    p, M, q = 3, 6, 4
    oracle = oracle_residue(FamilySpec(Kind.QEULER_ORDER_R, q=q, r=2), 1, p, M)
    for N in (4, 5, 6):
        s = fermionic_sum_multi(IntegrandPoly.power(1, 0, (1,)), q, 2, p, N, M, mu=1)
        assert val(s, oracle) >= N - 2


def test_multi_with_r_one_is_single():
    f = IntegrandPoly.power(3, F(1, 2), (1,))
    for mu in (None, 1):
        assert fermionic_sum_multi(f, 4, 1, 3, 5, 8, mu=mu) == fermionic_sum(f, 4, 3, 5, 8, mu=mu)


@pytest.mark.parametrize("weights", [(1,), (2, 1), (1, 2, 3)])
def test_factored_matches_direct(weights):
    r = len(weights) if len(weights) > 1 else 2
    f = IntegrandPoly.power(3, F(2, 5), weights)
    for N in (1, 2):
        a = fermionic_sum_multi(f, 4, r, 3, N, 7, mu=1, method="factored")
        b = fermionic_sum_multi(f, 4, r, 3, N, 7, mu=1, method="direct")
        assert a == b


def test_hr_integrand_converges_to_hr_family():
    p, M, q, h, r = 5, 6, 6, 3, 2
    oracle = oracle_residue(FamilySpec(Kind.QEULER_HR, q=q, x=1, r=r, h=h), 2, p, M)
    f = IntegrandPoly.power(2, 1, tuple(h - j for j in range(1, r + 1)))
    rows = [val(fermionic_sum_multi(f, q, r, p, N, M, mu=1), oracle) for N in range(2, 6)]
    assert rows == sorted(rows) and rows[-1] >= 4


def test_q_integral_with_default_measure():
    # mu = q: I_q(1) = 1 exactly at every level
    for N in range(1, 5):
        assert fermionic_sum(ONE, 4, 3, N, 8).residue == 1


def test_fermionic_preconditions():
    with pytest.raises(PreconditionError):
        fermionic_sum(ONE, 1, 2, 3, 4)
    with pytest.raises(PreconditionError):
        fermionic_sum(ONE, 2, 3, 3, 4)
    with pytest.raises(PreconditionError):
        fermionic_sum(ONE, F(1, 3), 3, 3, 4)
    with pytest.raises(ReductionError):
        fermionic_sum(IntegrandPoly((F(1, 3),)), 1, 3, 3, 4)
    with pytest.raises(PreconditionError):
        fermionic_sum(IntegrandPoly((1,), (1, 1)), 1, 3, 3, 4)


def test_budget():
    with pytest.raises(BudgetError) as info:
        fermionic_sum_multi(ONE, 1, 2, 3, 8, 4, method="direct")
    assert info.value.max_level == 6
    with pytest.raises(BudgetError):
        fermionic_sum_multi(ONE, 1, 2, 3, 20, 4)


# -- reports ----------------------------------------------------------------------

@pytest.mark.parametrize("p", (3, 5))
@pytest.mark.parametrize("r", (1, 2))
def test_convergence_report(p, r):
    for n in range(5):
        spec = FamilySpec(Kind.QEULER_ORDER_R, q=1 + p, r=r)
        rep = convergence_report(IntegrandPoly.power(n, 0, (1,)), 1 + p, r, p, range(3, 8), 8,
                                 oracle_residue(spec, n, p, 8))
        assert rep.passed, rep.details


def test_level_stability():
    p, M = 3, 10
    f = IntegrandPoly.power(3, 1, (1,))
    sums = [fermionic_sum_multi(f, 4, 2, p, N, M, mu=1) for N in range(2, 9)]
    vals = [val(b, a) for a, b in zip(sums, sums[1:])]
    assert vals == sorted(vals)


def test_classical_euler_numbers_at_q_one():
    p, M = 5, 6
    exact = gf_expand(FamilySpec(Kind.QEULER_ORDER_R, q=1), 4)
    for n in range(5):
        target = PadicInt.from_rational(exact[n], p, M)
        s = fermionic_sum(IntegrandPoly.power(n), 1, p, 6, M)
        assert val(s, target) >= 5


def test_shift_identity_examples():
    rep = check_shift_identity(ONE, 1, 3, 4, 8)
    assert rep.details["rows"][0]["valuation"] == 8
    rep = check_shift_identity(IntegrandPoly.power(1), 1, 3, range(3, 8), 8)
    assert rep.passed and all(row["valuation"] >= row["N"] - 1 for row in rep.details["rows"])
    assert check_shift_identity(IntegrandPoly.power(2), 2, 5, range(3, 8), 6)
    with pytest.raises(PreconditionError):
        check_shift_identity(ONE, 0, 3, 4, 8)


def test_q_limit_examples():
    rep = check_q_limit(IntegrandPoly.power(1), 3, range(1, 6), 6, 8)
    assert rep.passed
    rep = check_q_limit(ONE, 3, range(1, 6), 4, 8)
    assert all(row["valuation"] >= min(row["k"], 4) for row in rep.details["rows"])
    same = check_q_limit(IntegrandPoly.power(2), 3, 8, 4, 8)
    assert same.details["rows"][0]["valuation"] == 8
