"""Group-algebra arithmetic: exact ring laws, involution, hat, invertibility."""

import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import modunits as m
from modunits.errors import ContextMismatch, OrderMismatch


def alg(spec, p):
    return m.GroupAlgebra(m.build_group(m.parse_group_spec(spec)), p)


F2C2 = alg("catalog:C,2", 2)
F3C3 = alg("catalog:C,3", 3)
F3S3 = alg("catalog:S3", 3)
F2Q8 = alg("catalog:Q8", 2)


def regular_matrix_oracle(a):
    """Definitional left-multiplication matrix: M[g*h, h] += a[g]."""
    G = a.algebra.group
    M = np.zeros((G.order, G.order), dtype=np.int64)
    for g in G.elements():
        for h in G.elements():
            M[G.mul[g, h], h] += int(a.coeffs[g])
    return M % a.algebra.p


# ---------------------------------------------------------------------------
# embed / add / mul

def test_embed_identity_is_one():
    assert F3S3.embed(F3S3.group.identity) == F3S3.one()


def test_embed_multiplicative():
    G = F3S3.group
    rng = np.random.default_rng(1)
    for _ in range(50):
        g, h = rng.integers(0, G.order, 2)
        assert F3S3.embed(int(g)) * F3S3.embed(int(h)) == F3S3.embed(int(G.mul[g, h]))


def test_unit_laws():
    rng = np.random.default_rng(2)
    for _ in range(30):
        a = F3S3.random_element(rng)
        assert a + F3S3.zero() == a
        assert a * F3S3.one() == a
        assert F3S3.one() * a == a


def test_one_plus_g_squares_to_zero_in_char_2():
    g = F2C2.embed(1)
    u = F2C2.one() + g
    assert (u * u).is_zero()


def test_mul_matches_regular_matrix_oracle():
    rng = np.random.default_rng(3)
    for algebra in (F2C2, F3C3, F3S3, F2Q8):
        for _ in range(25):
            a = algebra.random_element(rng)
            b = algebra.random_element(rng)
            expected = regular_matrix_oracle(a) @ b.coeffs % algebra.p
            assert ((a * b).coeffs == expected).all()


def test_regular_matrix_property_matches_oracle():
    rng = np.random.default_rng(4)
    for _ in range(20):
        a = F3S3.random_element(rng)
        assert (a.regular_matrix() % 3 == regular_matrix_oracle(a)).all()


@settings(max_examples=80, deadline=None)
@given(st.lists(st.integers(0, 2), min_size=6, max_size=6),
       st.lists(st.integers(0, 2), min_size=6, max_size=6),
       st.lists(st.integers(0, 2), min_size=6, max_size=6))
def test_ring_axioms(av, bv, cv):
    a, b, c = (F3S3.from_coeffs(v) for v in (av, bv, cv))
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert (a + b) * c == a * c + b * c
    assert a + b == b + a


def test_context_mismatch():
    with pytest.raises(ContextMismatch):
        F2C2.one() + F3C3.one()
    with pytest.raises(ContextMismatch):
        F3C3.one() * F3S3.one()


def test_scalar_multiplication():
    a = F3C3.embed(1)
    assert (2 * a).coeffs[1] == 2
    assert 3 * a == F3C3.zero()


# ---------------------------------------------------------------------------
# augmentation

def test_augmentation_examples():
    assert F3S3.one().augmentation() == 1
    for g in F3S3.group.elements():
        assert F3S3.embed(g).augmentation() == 1


def test_augmentation_is_ring_homomorphism():
    rng = np.random.default_rng(5)
    for _ in range(100):
        a = F3S3.random_element(rng)
        b = F3S3.random_element(rng)
        assert (a + b).augmentation() == (a.augmentation() + b.augmentation()) % 3
        assert (a * b).augmentation() == (a.augmentation() * b.augmentation()) % 3


def test_augmentation_of_hat_is_zero():
    assert F3C3.hat(1).augmentation() == 0
    assert F2C2.hat(1).augmentation() == 0


# ---------------------------------------------------------------------------
# involution

def test_involution_fixes_one():
    assert F3S3.one().involution() == F3S3.one()


def test_involution_laws():
    rng = np.random.default_rng(6)
    for _ in range(100):
        a = F3S3.random_element(rng)
        b = F3S3.random_element(rng)
        assert a.involution().involution() == a
        assert (a * b).involution() == b.involution() * a.involution()
        assert a.involution().augmentation() == a.augmentation()


def test_involution_moves_coefficient_to_inverse():
    G = F3S3.group
    for g in G.elements():
        assert F3S3.embed(g).involution() == F3S3.embed(int(G.inv[g]))


# ---------------------------------------------------------------------------
# hat

def test_hat_char2():
    h = F2C2.hat(1)
    assert h == F2C2.one() + F2C2.embed(1)
    assert (h * h).is_zero()


def test_hat_char3():
    h = F3C3.hat(1)
    assert (h * h).is_zero()
    assert h.support() == (0, 1, 2)


def test_hat_rejects_wrong_order():
    with pytest.raises(OrderMismatch):
        F3S3.hat(F3S3.group.identity)  # order 1
    with pytest.raises(OrderMismatch):
        alg("catalog:C,4", 2).hat(1)  # order 4 at p = 2


def test_hat_central_when_element_central():
    A = alg("prod:catalog:S3|catalog:C,3", 3)
    c = m.central_order_p_elements(A.group, 3)[0]
    h = A.hat(c)
    for x in A.group.elements():
        e = A.embed(x)
        assert h * e == e * h


# ---------------------------------------------------------------------------
# invertibility

def test_try_inverse_of_one():
    assert F3S3.one().try_inverse() == F3S3.one()


def test_try_inverse_square_zero_is_none():
    u = F2C2.one() + F2C2.embed(1)
    assert u.try_inverse() is None


def test_try_inverse_recheck():
    rng = np.random.default_rng(7)
    found = 0
    for _ in range(100):
        a = F3S3.random_element(rng)
        b = a.try_inverse()
        if b is not None:
            found += 1
            assert (a * b).is_one() and (b * a).is_one()
    assert found > 10


def exhaustive_inverse_search(a):
    """Try every coefficient vector as a right inverse."""
    algebra = a.algebra
    n = algebra.dim
    hits = []
    for combo in itertools.product(range(algebra.p), repeat=n):
        b = algebra.from_coeffs(list(combo))
        if (a * b).is_one():
            hits.append(b)
    return hits


def test_try_inverse_matches_exhaustive_search_tiny():
    for algebra in (F2C2, alg("catalog:C,2", 3), F3C3):
        n = algebra.dim
        for combo in itertools.product(range(algebra.p), repeat=n):
            a = algebra.from_coeffs(list(combo))
            hits = exhaustive_inverse_search(a)
            inv = a.try_inverse()
            if inv is None:
                assert hits == []
            else:
                assert hits == [inv]


def test_unit_group_is_closed_under_inverse_and_star():
    rng = np.random.default_rng(8)
    for _ in range(50):
        a = F2Q8.random_element(rng)
        if a.augmentation() != 1:
            continue
        inv = a.try_inverse()
        if inv is None:
            continue
        if a.is_unitary():
            assert inv == a.involution()
            assert inv.is_unitary()


# ---------------------------------------------------------------------------
# unitarity and support

def test_group_elements_are_unitary():
    for algebra in (F2C2, F3S3, F2Q8):
        for g in algebra.group.elements():
            assert algebra.embed(g).is_unitary()


def test_one_plus_hat_in_f2c2_is_unitary():
    u = F2C2.one() + F2C2.hat(1)
    # 1 + (1 + g) = g in characteristic 2
    assert u == F2C2.embed(1)
    assert (u.involution() * u).is_one()
    assert u.is_unitary()


def test_product_of_unitary_is_unitary():
    rng = np.random.default_rng(9)
    A = F2Q8
    unitaries = []
    for _ in range(200):
        a = A.random_element(rng)
        if a.augmentation() == 1 and a.try_inverse() is not None and a.is_unitary():
            unitaries.append(a)
        if len(unitaries) >= 10:
            break
    assert len(unitaries) >= 2
    for u in unitaries:
        for v in unitaries[:3]:
            assert (u * v).is_unitary()


def test_support():
    assert F3S3.zero().support() == ()
    assert F3S3.embed(4).support() == (4,)
    c = F3C3
    assert c.hat(1).support() == (0, 1, 2)


def test_canonical_text():
    assert F3S3.zero().to_text() == "0"
    a = F3C3.one() + 2 * F3C3.embed(1)
    assert a.to_text() == "1*e + 2*a"
    assert F3C3.from_coeffs([0, 0, 1]).to_text() == "1*a2"


def test_negative_power_inverts():
    g = F3S3.embed(3)
    assert g ** -1 == F3S3.embed(int(F3S3.group.inv[3]))
    assert g ** 0 == F3S3.one()
    with pytest.raises(m.errors.NotAUnit):
        (F2C2.one() + F2C2.embed(1)) ** -1


def test_algebra_requires_prime_characteristic():
    with pytest.raises(m.errors.NotPrime):
        m.GroupAlgebra(F3S3.group, 6)


def test_modular_flag():
    assert F2C2.is_modular
    assert F3S3.is_modular
    assert not m.GroupAlgebra(F3S3.group, 5).is_modular
