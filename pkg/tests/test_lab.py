from fractions import Fraction as F
from math import factorial

import pytest

from taylormeans.errors import ExcludedExponent, MismatchError, PreconditionError
from taylormeans.functions import Power, moment_integrals
from taylormeans.lab import (Laurent, abcd_power, derivative_table_check, dk_table, dv_table,
                             harmonic_pair_exact, l_poly, l_poly_check, lemma5_sum,
                             lemma6_root_count, n_poly, q_factor, reflection_check, s_factor,
                             theorem1_verify, v1_double_sum, v1_double_sum_check, vw_build,
                             vw_values)
from taylormeans.poly import Polynomial

X = Polynomial.x()
P_RANGE = [p for p in range(-12, 21) if p not in (0, 1, 2, 3)]


def test_abcd_examples():
    c = abcd_power(5, 2)
    assert (c.A, c.B, c.C, c.D) == (180, 280, 450, 744)
    c = abcd_power(4, 2)
    assert (c.A, c.B, c.C, c.D) == (24, 36, 56, 90)
    c = abcd_power(-1, 2)
    assert (c.A, c.B, c.C, c.D) == (F(45, 8), 7, 9, 12)
    with pytest.raises(ExcludedExponent):
        abcd_power(3, 2)


@pytest.mark.parametrize("p", [-7, -1, 4, 5, 11])
@pytest.mark.parametrize("b", [F(3, 2), 2, 10])
def test_abcd_matches_antiderivative_moments(p, b):
    c = abcd_power(p, b)
    assert moment_integrals(Power(p), 3, 1, b).moments == (c.A, c.B, c.C, c.D)


def test_laurent_basics():
    a = Laurent.from_terms([(2, -3), (1, 0), (0, 4)])
    assert a.shift == -3 and a.poly == Polynomial([2, 0, 0, 1])
    assert a(2) == F(2, 8) + 1
    assert a.reflect().reflect() == a
    with pytest.raises(PreconditionError):
        a.as_polynomial()


def test_vw_examples():
    assert vw_build(4).V.as_polynomial() == -60 * (X - 1) ** 5
    assert vw_build(5).V.as_polynomial() == -36 * (13 * X ** 2 + 10 * X + 2) * (X - 1) ** 5
    k = vw_build(-1).V.reflect().as_polynomial()
    assert k == 72 * X * (2 * X ** 2 + 2 * X + 1) * (X - 1) ** 5


@pytest.mark.parametrize("p", P_RANGE)
def test_reflection_and_signs(p):
    pair = vw_build(p)
    assert reflection_check(pair, p)
    for b in (F(3, 2), 2, 3, 10):
        assert pair.V(b) < 0 < pair.W(b)


def test_reflection_detects_tampering():
    pair = vw_build(7)
    bad = type(pair)(7, pair.V, pair.W + Laurent.monomial(1, 2))
    assert not reflection_check(bad, 7)


def test_vw_values_float_path():
    v, w = vw_values(5, 2.0)
    assert abs(v - float(vw_build(5).V(2))) < 1e-9 and abs(w - float(vw_build(5).W(2))) < 1e-9
    # non-integer exponent: the counterexample has g(1) > 0, so V(36) > 0 for p = 3/2
    v, _ = vw_values(1.5, 36.0)
    assert v > 0


def test_q_factor_examples():
    assert q_factor(4) == Polynomial([-60])
    assert q_factor(6) == -12 * Polynomial([7, 35, 105, 161, 142])
    q13 = q_factor(13)
    assert all(c < 0 for c in q13.coeffs)
    with pytest.raises(PreconditionError):
        q_factor(3)


def test_s_factor_examples():
    assert s_factor(1) == 72 * X * (2 * X ** 2 + 2 * X + 1)
    for n in (2, 10):
        assert all(c > 0 for c in s_factor(n).coeffs)


@pytest.mark.parametrize("n", range(4, 31))
def test_q_negative(n):
    assert all(c < 0 for c in q_factor(n).coeffs)


@pytest.mark.parametrize("n", range(1, 31))
def test_s_positive(n):
    S = s_factor(n)
    assert all(c > 0 for c in S.coeffs[1 if n == 1 else 0:])


def test_derivative_tables():
    n = 9
    V = vw_build(n).V.as_polynomial()
    assert V(0) == 12 * n + 12 == 120
    assert factorial(n) * V[n] == -factorial(n) * (n - 1) * (n - 2) ** 2 * (n - 3)
    K = vw_build(-2).V.reflect().as_polynomial()
    assert factorial(2) * K[2] == -480 == dk_table(2)[2]
    assert dv_table(9)[0] == 120
    assert all(derivative_table_check(n) for n in range(2, 31))
    assert derivative_table_check(12, "V") and derivative_table_check(5, "K")
    with pytest.raises(PreconditionError):
        derivative_table_check(5, "V")


def test_lemma5_examples():
    assert lemma5_sum(9, 0) == (150, 150)
    assert lemma5_sum(13, 1) == (885, 885)
    assert lemma5_sum(4, 0) == (75, 75)
    with pytest.raises(PreconditionError):
        lemma5_sum(6, 3)


def test_lemma5_range():
    for n in range(4, 41):
        for j in range(0, n - 3):
            lhs, rhs = lemma5_sum(n, j)
            assert lhs == rhs, (n, j)


def test_lemma6_examples():
    assert lemma6_root_count(13) == 1 and n_poly(13)(-1) == -42
    assert lemma6_root_count(23) == 1
    assert lemma6_root_count(40) == 1
    with pytest.raises(PreconditionError):
        lemma6_root_count(12)


def test_lemma6_range():
    assert all(lemma6_root_count(n) == 1 for n in range(13, 41))


def test_l_poly_examples():
    assert l_poly(4) == -150 * (X - 1) ** 4
    assert vw_build(4).V.as_polynomial().derivative() == 2 * l_poly(4)
    assert l_poly_check(5) and l_poly_check(13)


def test_v1_examples():
    assert v1_double_sum(4) == -60 * (X - 1) ** 5
    assert v1_double_sum_check(5)
    assert v1_double_sum(13).degree == 23 and v1_double_sum_check(13)


def test_l_and_v1_ranges():
    assert all(l_poly_check(n) for n in range(4, 26))
    assert all(v1_double_sum_check(n) for n in range(4, 26))


def test_theorem1_examples():
    g1, gb, x1 = theorem1_verify(5, 2)
    assert g1 < 0 < gb and 1 < x1 < 2
    assert abs(theorem1_verify(-1, 2)[2] - 1.2) < 1e-12
    assert abs(theorem1_verify(4, 3)[2] - 2) < 1e-12
    assert harmonic_pair_exact(2) and harmonic_pair_exact(F(7, 3))


def test_vw_mismatch_raised_on_bad_display(monkeypatch):
    import taylormeans.lab as lab
    monkeypatch.setattr(lab, "v_display", lambda p: Laurent.monomial(1, 0))
    with pytest.raises(MismatchError):
        lab.vw_build(6)
