from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from taylormeans.errors import EndpointRoot, NotDivisible, PreconditionError, ZeroPolynomial
from taylormeans.poly import (Polynomial, SignSequence, cubic_discriminant,
                              descartes_sign_changes, differentiate, divide_out_root_power,
                              evaluate, fourier_budan_bound, poly_divmod, poly_gcd)

X = Polynomial.x()


def test_normalization_and_degree():
    p = Polynomial([1, 2, 0, 0])
    assert p.coeffs == (1, 2) and p.degree == 1
    assert Polynomial([0, 0]).degree is None and Polynomial([0]).is_zero
    assert Polynomial([F(1, 2), 1]) == Polynomial([F(2, 4), 1])


def test_evaluate_examples():
    assert evaluate(X ** 2 + 1, 1j) == 0
    assert evaluate((X - 1) ** 3, 1) == 0
    v4 = -60 * (X - 1) ** 5
    assert evaluate(v4, 2) == -60


def test_evaluate_is_exact_for_rationals():
    val = evaluate(Polynomial([F(1, 3), 1]), F(1, 3))
    assert val == F(2, 3) and isinstance(val, F)


def test_differentiate_examples():
    assert differentiate(X ** 3) == 3 * X ** 2
    assert differentiate(Polynomial([1, 2, 3, 4, 5]), 5).is_zero
    assert differentiate(-60 * (X - 1) ** 5) == -300 * (X - 1) ** 4
    assert differentiate(X ** 3, 0) == X ** 3
    with pytest.raises(PreconditionError):
        differentiate(X, -1)


def test_divide_out_root_power_examples():
    assert divide_out_root_power(-60 * (X - 1) ** 5, 1, 5) == Polynomial([-60])
    assert divide_out_root_power(X ** 2 - 1, 1, 1) == X + 1
    v5 = -36 * (13 * X ** 2 + 10 * X + 2) * (X - 1) ** 5
    assert divide_out_root_power(v5, 1, 5) == -36 * (13 * X ** 2 + 10 * X + 2)


def test_divide_out_root_power_reports_stage():
    with pytest.raises(NotDivisible, match=r"\^3"):
        divide_out_root_power((X - 1) ** 2 * (X + 1), 1, 3)


def test_descartes_examples():
    assert descartes_sign_changes(Polynomial([-2, 53, 20, 1])) == 1
    assert descartes_sign_changes(X ** 2 + 1) == 0
    assert descartes_sign_changes(Polynomial([30, -45, 22, 1])) == 2
    with pytest.raises(ZeroPolynomial):
        descartes_sign_changes(Polynomial([]))


def test_sign_sequence_skips_zeros():
    s = SignSequence.of([1, 0, 0, -2, 0, 3])
    assert s.signs == (1, 0, 0, -1, 0, 1) and s.changes == 2


def test_fourier_budan_examples():
    from taylormeans.lab import n_poly
    assert fourier_budan_bound(n_poly(13), -1, 0) == 1
    assert fourier_budan_bound(X ** 2 + 1, 0, 1) == 0
    assert fourier_budan_bound((X - F(1, 2)) * (X - F(1, 4)), 0, 1) == 2
    with pytest.raises(EndpointRoot):
        fourier_budan_bound(X * (X - 3), 0, 1)
    with pytest.raises(PreconditionError):
        fourier_budan_bound(X, 1, 0)


def test_cubic_discriminant_examples():
    assert cubic_discriminant(0, -3, 0) == 108
    assert cubic_discriminant(0, 1, 0) == -4
    assert cubic_discriminant(22, -45, 30) < 0


def test_gcd_and_divmod():
    a = (X - 1) * (X - 2) * (X - 3)
    b = (X - 2) * (X - 3) * (X - 5) * (X - F(1, 3))
    assert poly_gcd(a, b) == X ** 2 - 5 * X + 6
    q, r = poly_divmod(b, a)
    assert q * a + r == b and r.degree < a.degree


# -- properties -----------------------------------------------------------------

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=12)
polys = st.lists(st.integers(-20, 20), min_size=1, max_size=7).map(Polynomial)


@settings(max_examples=100, deadline=None)
@given(roots=st.lists(rationals, min_size=1, max_size=8), lo=rationals, width=st.fractions(
    min_value=F(1, 10), max_value=6, max_denominator=10))
def test_fourier_budan_exact_for_real_rooted(roots, lo, width):
    hi = lo + width
    p = Polynomial.from_roots(roots)
    if p(lo) == 0 or p(hi) == 0:
        return
    inside = sum(1 for r in roots if lo < r < hi)
    assert fourier_budan_bound(p, lo, hi) == inside


@settings(max_examples=100, deadline=None)
@given(roots=st.lists(rationals, min_size=1, max_size=8), lead=st.integers(1, 9))
def test_descartes_bounds_positive_roots(roots, lead):
    p = Polynomial.from_roots(roots, leading=lead)
    if p.is_zero:
        return
    positives = sum(1 for r in roots if r > 0)
    changes = descartes_sign_changes(p)
    assert changes >= positives and (changes - positives) % 2 == 0


@settings(max_examples=100, deadline=None)
@given(p=polys, q=polys, c=rationals)
def test_differentiate_linear_and_product_rule(p, q, c):
    assert differentiate(p * c + q) == differentiate(p) * c + differentiate(q)
    assert differentiate(p * q) == differentiate(p) * q + p * differentiate(q)


@settings(max_examples=60, deadline=None)
@given(q=polys, root=rationals, m=st.integers(0, 5))
def test_divide_round_trip(q, root, m):
    if q.is_zero:
        return
    p = q * Polynomial.binomial_power(root, m)
    back = divide_out_root_power(p, root, m)
    assert back == q and back * Polynomial.binomial_power(root, m) == p
