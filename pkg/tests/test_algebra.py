"""Polynomial arithmetic, irreducibility, and counting layer."""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ffzeros import algebra


def poly_strategy(q, max_deg=6):
    return st.lists(
        st.integers(min_value=0, max_value=q - 1), min_size=0, max_size=max_deg + 1
    ).map(tuple)


# ----------------------------------------------------------------------
# representation


def test_poly_trim_strips_leading_zeros():
    assert algebra.poly_trim((1, 2, 0, 0)) == (1, 2)
    assert algebra.poly_trim((0, 0)) == ()
    assert algebra.poly_trim(()) == ()


def test_poly_degree():
    # the zero polynomial has no degree
    assert algebra.poly_degree(()) is None
    assert algebra.poly_degree((5,)) == 0
    assert algebra.poly_degree((0, 0, 1)) == 2


def test_poly_str_round_trip(K3):
    f = (1, 0, 1)
    assert algebra.poly_from_str(K3, algebra.poly_to_str(f)) == f
    assert algebra.poly_to_str(()) == "0"
    with pytest.raises(ValueError):
        algebra.poly_from_str(K3, "T^2+1")


@given(st.integers(min_value=0, max_value=3**5 - 1))
def test_poly_code_round_trip(code):
    K = algebra.field_make(3)
    f = algebra.poly_from_code(K, code)
    assert algebra.poly_code(K, f) == code


def test_poly_validate(K3):
    assert algebra.poly_validate(K3, [1, 2, 0, 1]) == (1, 2, 0, 1)
    assert algebra.poly_validate(K3, [1, 0, 1, 0]) == (1, 0, 1)  # trims
    with pytest.raises(ValueError):
        algebra.poly_validate(K3, [4, 0, 1])  # coefficient out of range
    with pytest.raises(ValueError):
        algebra.poly_validate(K3, [-1, 0, 1])


# ----------------------------------------------------------------------
# ring axioms


@settings(max_examples=60, deadline=None)
@given(poly_strategy(3), poly_strategy(3), poly_strategy(3))
def test_ring_axioms_f3(f, g, h):
    K = algebra.field_make(3)
    assert algebra.poly_add(K, f, g) == algebra.poly_add(K, g, f)
    assert algebra.poly_mul(K, f, g) == algebra.poly_mul(K, g, f)
    left = algebra.poly_mul(K, f, algebra.poly_add(K, g, h))
    right = algebra.poly_add(
        K, algebra.poly_mul(K, f, g), algebra.poly_mul(K, f, h)
    )
    assert left == right
    assert algebra.poly_add(K, f, algebra.poly_neg(K, f)) == ()


@settings(max_examples=60, deadline=None)
@given(poly_strategy(4), poly_strategy(4))
def test_extension_field_mul_degree(f, g):
    # degree of a product adds, over F_4 as well
    K = algebra.field_make(2, 2)
    ft, gt = algebra.poly_trim(f), algebra.poly_trim(g)
    prod = algebra.poly_mul(K, ft, gt)
    if ft and gt:
        assert algebra.poly_degree(prod) == algebra.poly_degree(
            ft
        ) + algebra.poly_degree(gt)
    else:
        assert prod == ()


@settings(max_examples=60, deadline=None)
@given(poly_strategy(3), poly_strategy(3, max_deg=3))
def test_divmod_invariant(f, g):
    K = algebra.field_make(3)
    g = algebra.poly_trim(g)
    if not g:
        with pytest.raises(ZeroDivisionError):
            algebra.poly_divmod(K, f, g)
        return
    quot, rem = algebra.poly_divmod(K, f, g)
    back = algebra.poly_add(K, algebra.poly_mul(K, quot, g), rem)
    assert back == algebra.poly_trim(f)
    assert rem == () or algebra.poly_degree(rem) < algebra.poly_degree(g)


@settings(max_examples=40, deadline=None)
@given(poly_strategy(3, max_deg=4), poly_strategy(3, max_deg=4))
def test_gcd_divides_both(f, g):
    K = algebra.field_make(3)
    d = algebra.poly_gcd(K, f, g)
    if d:
        for h in (f, g):
            if algebra.poly_trim(h):
                assert algebra.poly_mod(K, h, d) == ()
        assert d[-1] == 1  # monic normalization


def test_poly_eval(K3):
    # f = T^2 + 2T + 1 at T=1 gives 4 = 1 mod 3
    assert algebra.poly_eval(K3, (1, 2, 1), 1) == 1
    assert algebra.poly_eval(K3, (1, 2, 1), 2) == 0


def test_poly_pow_mod(K3):
    # T^8 mod T^2+1: T^2 = -1 so T^8 = 1
    assert algebra.poly_pow_mod(K3, (0, 1), 8, (1, 0, 1)) == (1,)


def test_poly_monic(K3):
    assert algebra.poly_monic(K3, (2, 0, 2)) == (1, 0, 1)
    with pytest.raises(ValueError):
        algebra.poly_monic(K3, ())


# ----------------------------------------------------------------------
# field construction


def test_field_basic_tables(K3):
    assert K3.q == 3 and K3.p == 3 and K3.e == 1
    assert K3.add(2, 2) == 1
    assert K3.mul(2, 2) == 1
    assert K3.inv(2) == 2
    with pytest.raises(ZeroDivisionError):
        K3.inv(0)


def test_field_extension_f4(K4):
    assert K4.q == 4 and K4.p == 2 and K4.e == 2
    assert K4.ext_modulus == (1, 1, 1)
    # x * (x+1) = x^2 + x = 1 under x^2 = x + 1
    assert K4.mul(2, 3) == 1
    for a in range(1, 4):
        assert K4.mul(a, K4.inv(a)) == 1
    # characteristic 2: a + a = 0
    for a in range(4):
        assert K4.add(a, a) == 0


def test_field_f8_and_f9_group_structure():
    for p, e in ((2, 3), (3, 2)):
        K = algebra.field_make(p, e)
        q = p**e
        # multiplicative group is cyclic of order q-1: check element orders divide
        for a in range(1, q):
            x, n = a, 1
            while x != 1:
                x = K.mul(x, a)
                n += 1
                assert n <= q - 1
            assert (q - 1) % n == 0


def test_field_make_rejects_composite_characteristic():
    with pytest.raises(ValueError):
        algebra.field_make(6)


def test_field_make_is_cached():
    assert algebra.field_make(3) is algebra.field_make(3)


# ----------------------------------------------------------------------
# irreducibility


@pytest.mark.parametrize("p,e", [(2, 1), (3, 1), (2, 2)])
def test_irreducible_agrees_with_frobenius_oracle(p, e):
    K = algebra.field_make(p, e)
    for n in (1, 2, 3):
        for f in algebra.enumerate_monic(K, n):
            assert algebra.is_irreducible(K, f) == algebra.is_irreducible_frobenius(
                K, f
            ), f
        if K.q >= 4:
            break  # degree 3 over F_4 is 64 polys, enough


def test_known_irreducibles(K2, K3):
    assert algebra.is_irreducible(K3, (1, 0, 1))  # T^2+1, -1 not a square mod 3
    assert not algebra.is_irreducible(K2, (1, 0, 1))  # (T+1)^2 over F_2
    assert algebra.is_irreducible(K2, (1, 1, 1))
    assert algebra.is_irreducible(K3, (0, 1))  # T itself


def test_degree_one_always_irreducible(K3):
    for c in range(3):
        assert algebra.is_irreducible(K3, (c, 1))


def test_constants_rejected(K3):
    with pytest.raises(ValueError):
        algebra.is_irreducible(K3, (1,))
    with pytest.raises(ValueError):
        algebra.is_irreducible(K3, ())


def test_irreducibles_enumeration_counts(K2, K3):
    for K in (K2, K3):
        for n in range(1, 6):
            found = list(algebra.irreducibles(K, n))
            assert len(found) == algebra.count_irreducibles(K, n)
            assert all(algebra.is_irreducible(K, f) for f in found)
            assert len(set(found)) == len(found)


def test_least_irreducible_is_minimal(K3):
    f = algebra.least_irreducible(K3, 3)
    assert f == (1, 2, 0, 1)
    code = algebra.poly_code(K3, f)
    for g in algebra.enumerate_monic(K3, 3):
        if algebra.poly_code(K3, g) < code:
            assert not algebra.is_irreducible(K3, g)


# ----------------------------------------------------------------------
# counting


@pytest.mark.parametrize("p,e", [(2, 1), (3, 1), (5, 1), (2, 2)])
def test_irreducible_count_degree_identity(p, e):
    # sum over m | n of m * (#irreducibles of degree m) recovers q^n
    K = algebra.field_make(p, e)
    for n in range(1, 13):
        total = sum(m * algebra.count_irreducibles(K, m) for m in algebra.divisors(n))
        assert total == K.q**n


def test_mobius_values():
    assert [algebra.mobius(n) for n in range(1, 11)] == [
        1,
        -1,
        -1,
        0,
        -1,
        1,
        -1,
        0,
        0,
        1,
    ]


def test_divisors_sorted():
    assert algebra.divisors(12) == [1, 2, 3, 4, 6, 12]
    assert algebra.divisors(1) == [1]
    assert algebra.divisors(49) == [1, 7, 49]


# ----------------------------------------------------------------------
# factorization and arithmetic functions


def test_factorize_frozen_example(K3):
    # T^4 - 1 = (T+1)(T+2)(T^2+1) over F_3
    fac = algebra.factorize(K3, (2, 0, 0, 0, 1))
    assert fac == [((1, 1), 1), ((2, 1), 1), ((1, 0, 1), 1)]


def test_factorize_prime_power(K3):
    fac = algebra.factorize(K3, (1, 2, 1))  # (T+1)^2
    assert fac == [((1, 1), 2)]


@settings(max_examples=30, deadline=None)
@given(poly_strategy(3, max_deg=5))
def test_factorize_reconstructs(f):
    K = algebra.field_make(3)
    f = algebra.poly_trim(f)
    if len(f) < 2:
        return
    fm = algebra.poly_monic(K, f)
    prod = (1,)
    for factor, mult in algebra.factorize(K, fm):
        assert algebra.is_irreducible(K, factor)
        for _ in range(mult):
            prod = algebra.poly_mul(K, prod, factor)
    assert prod == fm


def test_von_mangoldt(K3):
    assert algebra.von_mangoldt(K3, (1, 0, 1)) == 2  # irreducible quadratic
    assert algebra.von_mangoldt(K3, (1, 2, 1)) == 1  # (T+1)^2
    assert algebra.von_mangoldt(K3, (0, 1, 1)) == 0  # T(T+1)
    assert algebra.von_mangoldt(K3, (1,)) == 0


def test_von_mangoldt_degree_sum(K2, K3):
    # summing Lambda over all monic polynomials of degree n gives q^n
    for K in (K2, K3):
        for n in range(1, 5):
            total = sum(
                algebra.von_mangoldt(K, f) for f in algebra.enumerate_monic(K, n)
            )
            assert total == K.q**n


def test_euler_phi(K3):
    assert algebra.euler_phi(K3, (1, 0, 1)) == 8  # q^2 - 1 for irreducible Q
    assert algebra.euler_phi(K3, (0, 0, 1)) == 6  # T^2: q^2 - q
    assert algebra.euler_phi(K3, (0, 1, 1)) == 4  # T(T+1): (q-1)^2


def test_euler_phi_multiplicative(K3):
    # brute count of invertible residues mod f
    f = (2, 1, 1)  # T^2 + T + 2, irreducible over F_3
    assert algebra.is_irreducible(K3, f)
    count = 0
    for code in range(3**2):
        g = algebra.poly_from_code(K3, code)
        if algebra.poly_gcd(K3, g, f) == (1,):
            count += 1
    assert count == algebra.euler_phi(K3, f) == 8


def test_enumerate_monic_shape(K3):
    polys = list(algebra.enumerate_monic(K3, 2))
    assert len(polys) == 9
    assert all(f[-1] == 1 and len(f) == 3 for f in polys)
    assert len(set(polys)) == 9
