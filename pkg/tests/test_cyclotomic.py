import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cgfpos.cyclotomic import (
    cgf_form,
    cyclotomic_poly,
    delta_product,
    divisor_multiset,
    euler_phi,
    factor_profile,
    is_prime,
    polynomiality_delta,
)
from cgfpos.polyq import IntPoly, QuotientSpec, expand_quotient, is_flat, min_coefficient, product

from oracles import cyclotomic_mobius


def test_factor_profile():
    p = factor_profile(105)
    assert p.prime_factors == (3, 5, 7) and p.omega == 3 and p.radical == 105
    p = factor_profile(12)
    assert p.prime_factors == (2, 3) and p.omega == 2 and p.radical == 6
    p = factor_profile(1)
    assert p.prime_factors == () and p.omega == 0 and p.radical == 1
    with pytest.raises(ValueError):
        factor_profile(0)


def test_cyclotomic_examples():
    assert cyclotomic_poly(1) == IntPoly([-1, 1])
    assert cyclotomic_poly(5) == IntPoly([1, 1, 1, 1, 1])
    assert min_coefficient(cyclotomic_poly(105)) == -2


@pytest.mark.parametrize("n", list(range(1, 121)) + [210, 255, 385, 1155])
def test_cyclotomic_matches_mobius_product(n):
    assert list(cyclotomic_poly(n).coeffs) == cyclotomic_mobius(n)


def test_product_over_divisors_is_q_n_minus_1():
    for n in range(1, 301):
        p = product(cyclotomic_poly(d) for d in range(1, n + 1) if n % d == 0)
        assert p == IntPoly([-1] + [0] * (n - 1) + [1]), n


def test_degree_is_euler_phi():
    for n in range(1, 200):
        assert cyclotomic_poly(n).degree == euler_phi(n)


primes = st.sampled_from([2, 3, 5, 7, 11, 13])


@given(st.integers(min_value=1, max_value=60), primes)
def test_substitution_identities(n, p):
    lhs = cyclotomic_poly(n).substitute_power(p)
    if n % p:
        assert cyclotomic_poly(n) * cyclotomic_poly(n * p) == lhs
    else:
        assert cyclotomic_poly(n * p) == lhs


def test_flat_with_two_odd_primes():
    for n in range(1, 301):
        odd = [q for q in factor_profile(n).prime_factors if q != 2]
        if len(odd) <= 2:
            assert is_flat(cyclotomic_poly(n)), n


def test_negative_coefficient_when_two_primes():
    for n in range(1, 301):
        if factor_profile(n).omega >= 2:
            assert min_coefficient(cyclotomic_poly(n)) < 0, n


def test_divisor_multiset():
    assert divisor_multiset([2, 3]) == (1, 1, 2, 3)
    assert divisor_multiset([6]) == (1, 2, 3, 6)
    assert divisor_multiset([4, 4]) == (1, 1, 2, 2, 4, 4)
    assert len(divisor_multiset([12, 30, 7])) == 6 + 8 + 2


def test_polynomiality_delta_examples():
    assert polynomiality_delta(QuotientSpec((105, 3, 5, 7), (35, 21, 15, 1))) == (105,)
    assert polynomiality_delta(QuotientSpec((4, 5), (2, 3))) is None
    assert polynomiality_delta(QuotientSpec((6, 1), (2, 3))) == (6,)
    with pytest.raises(ValueError):
        polynomiality_delta(QuotientSpec((2,), (1, 1)))


def test_delta_sign_convention():
    # #A - #B = 1: the quotient is -Phi_1 * ... = (1 - q) * ...
    spec = QuotientSpec((6, 4), (2,))
    delta = polynomiality_delta(spec)
    assert expand_quotient(spec) == -delta_product(delta)


small = st.lists(st.integers(min_value=1, max_value=30), min_size=1, max_size=4)


@settings(max_examples=300)
@given(small, small)
def test_delta_iff_exact_division(A, B):
    n = min(len(A), len(B))
    spec = QuotientSpec(tuple(A[:n]), tuple(B[:n]))
    delta = polynomiality_delta(spec)
    expansion = expand_quotient(spec)
    assert (delta is None) == (expansion is None)
    if delta is not None:
        assert delta_product(delta) == expansion


def test_cgf_form_examples():
    form = cgf_form(IntPoly([1, 1, 2, 1, 1]))
    assert (form.alpha, form.beta, form.cyclo_indices) == (1, 0, (3, 4))
    form = cgf_form(IntPoly([0, 2]))
    assert (form.alpha, form.beta, form.cyclo_indices) == (2, 1, ())
    assert cgf_form(IntPoly([1, 1, 0, 1])) is None
    with pytest.raises(ValueError):
        cgf_form(IntPoly([1, -1, 1]))
    with pytest.raises(ValueError):
        cgf_form(IntPoly())


@settings(max_examples=60)
@given(
    st.integers(min_value=1, max_value=5),
    st.integers(min_value=0, max_value=3),
    st.lists(st.integers(min_value=2, max_value=40), max_size=4),
)
def test_cgf_form_round_trip(alpha, beta, idx):
    body = delta_product(idx)
    if min(body.coeffs) < 0:
        return
    p = IntPoly((0,) * beta + tuple(alpha * c for c in body.coeffs))
    form = cgf_form(p)
    assert form is not None
    assert form.expand() == p
    assert sorted(form.cyclo_indices) == sorted(idx)


def test_is_prime():
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
