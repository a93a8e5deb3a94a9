"""Unit enumeration oracles: counts, closure, abstract views, Engel tests."""

import numpy as np
import pytest

import modunits as m
from modunits import units as un
from modunits.errors import BudgetExceeded, EngelInconclusive, NotAUnit


def alg(spec, p):
    return m.GroupAlgebra(m.build_group(m.parse_group_spec(spec)), p)


def test_enumerate_f2c2():
    A = alg("catalog:C,2", 2)
    V = m.enumerate_units(A)
    assert len(V) == 2
    texts = {V.element(i).to_text() for i in range(2)}
    assert texts == {"1*e", "1*a"}


def test_enumerate_f2_klein():
    V = m.enumerate_units(alg("prod:catalog:C,2|catalog:C,2", 2))
    assert len(V) == 8


@pytest.mark.parametrize("spec,p", [
    ("catalog:C,4", 2), ("prod:catalog:C,2|catalog:C,2", 2),
    ("catalog:Q8", 2), ("catalog:C,3", 3),
])
def test_p_group_unit_count_law(spec, p):
    A = alg(spec, p)
    V = m.enumerate_units(A)
    assert len(V) == p ** (A.dim - 1)


def test_enumerate_budget_exceeded_reports_required():
    A = alg("catalog:Q8", 2)
    with pytest.raises(BudgetExceeded) as err:
        m.enumerate_units(A, cap=16)
    assert err.value.required == 2 ** 7


def test_enumeration_deterministic_and_lex_sorted():
    A = alg("catalog:S3", 2)
    V1 = m.enumerate_units(A)
    V2 = m.enumerate_units(A)
    assert (V1.vectors == V2.vectors).all()
    keys = [tuple(row) for row in V1.vectors]
    assert keys == sorted(keys)


def test_enumeration_worker_count_does_not_change_result(monkeypatch):
    monkeypatch.setattr(un, "_CHUNK", 8)  # force multiple chunks
    A = alg("catalog:S3", 2)
    V1 = m.enumerate_units(A, workers=1)
    V2 = m.enumerate_units(A, workers=4)
    assert (V1.vectors == V2.vectors).all()


def test_batch_invertibility_matches_per_element_inverse():
    # the enumeration hot path (batched elimination) and try_inverse must
    # classify every aug-1 candidate identically
    from modunits._gflinalg import batch_invertible_mask
    from modunits.units import _candidate_vectors

    for spec, p in [("catalog:S3", 2), ("catalog:C,3", 3), ("catalog:S3", 3)]:
        A = alg(spec, p)
        n = A.dim
        total = p ** (n - 1)
        vec = _candidate_vectors(p, n, A.group.identity, 0, total)
        mask = batch_invertible_mask(vec[:, A.div], p)
        for i in range(total):
            expected = A.from_coeffs(vec[i]).try_inverse() is not None
            assert bool(mask[i]) == expected, f"{spec}@{p} candidate {i}"


def test_every_enumerated_element_is_a_unit_with_aug_one():
    A = alg("catalog:S3", 2)
    V = m.enumerate_units(A)
    assert len(V) == 12
    for u in V:
        assert u.augmentation() == 1
        assert u.try_inverse() is not None


def test_unit_group_contains_one_and_membership():
    A = alg("catalog:C,3", 3)
    V = m.enumerate_units(A)
    assert V.one_position >= 0
    assert A.one() in V
    assert A.zero() not in V
    assert V.index_of(A.embed(1)) >= 0


def test_unit_group_rejects_non_closed_set():
    A = alg("catalog:C,3", 3)
    one = A.one().coeffs
    g = A.embed(1).coeffs
    with pytest.raises(ValueError):
        un.UnitGroup(A, np.stack([one, g]))  # missing g^2


# ---------------------------------------------------------------------------
# filter_unitary

def test_filter_unitary_f2c2_everything():
    V = m.enumerate_units(alg("catalog:C,2", 2))
    Vs = m.filter_unitary(V)
    assert len(Vs) == 2


def test_filter_unitary_contains_group_elements():
    A = alg("catalog:D,4", 2)
    V = m.enumerate_units(A)
    Vs = m.filter_unitary(V)
    for g in A.group.elements():
        assert A.embed(g) in Vs
    for u in Vs:
        assert u.is_unitary()
        assert u.involution() == u.try_inverse()


def test_filter_unitary_f3s3_is_embedded_group_only():
    # S3 has no central element of order 3, so no skew witnesses exist and
    # the unitary subgroup collapses to the embedded group elements
    A = alg("catalog:S3", 3)
    assert m.central_order_p_elements(A.group, 3) == []
    Vs = m.filter_unitary(m.enumerate_units(A))
    assert len(Vs) == 6
    for u in Vs:
        assert sorted(u.coeffs) == [0, 0, 0, 0, 0, 1]


# ---------------------------------------------------------------------------
# abstract group view

def test_as_abstract_group_trivial():
    A = alg("catalog:C,1", 2)
    V = m.enumerate_units(A)
    assert len(V) == 1
    assert m.as_abstract_group(V).order == 1


def test_as_abstract_group_klein_units():
    V = m.enumerate_units(alg("prod:catalog:C,2|catalog:C,2", 2))
    G = m.as_abstract_group(V)
    assert G.order == 8
    assert G.is_abelian()
    assert m.nilpotency_class(G) == 1


def test_as_abstract_group_d4_units_nilpotent():
    V = m.enumerate_units(alg("catalog:D,4", 2))
    G = m.as_abstract_group(V)
    assert m.nilpotency_class(G) == 2


def test_as_abstract_group_cap():
    V = m.enumerate_units(alg("catalog:D,4", 2))
    with pytest.raises(BudgetExceeded):
        m.as_abstract_group(V, cap=64)


# ---------------------------------------------------------------------------
# closure_subgroup

def test_closure_of_one():
    A = alg("catalog:S3", 3)
    U = m.closure_subgroup([A.one()])
    assert len(U) == 1


def test_closure_of_embedded_element_is_cyclic():
    A = alg("catalog:Q8", 2)
    i = A.group.labels.index("i")
    U = m.closure_subgroup([A.embed(i)])
    assert len(U) == m.element_order(A.group, i) == 4


def test_closure_rejects_non_unit():
    A = alg("catalog:C,2", 2)
    with pytest.raises(NotAUnit):
        m.closure_subgroup([A.one() + A.embed(1)])


def test_closure_rejects_non_normalized():
    A = alg("catalog:C,2", 3)
    with pytest.raises(NotAUnit):
        m.closure_subgroup([2 * A.one()])  # a unit, but augmentation 2


def test_closure_budget():
    A = alg("catalog:D,4", 2)
    V = m.enumerate_units(A)
    gens = [V.element(i) for i in range(4)]
    with pytest.raises(BudgetExceeded):
        m.closure_subgroup(gens, cap=2)


def test_case3_style_closure_in_f3_s3xc3():
    A = alg("prod:catalog:S3|catalog:C,3", 3)
    G = A.group
    invs = [x for x in G.elements() if m.element_order(G, x) == 2]
    c = m.central_order_p_elements(G, 3)[0]
    a, b = invs[0], invs[1]
    ab = int(G.mul[a, b])
    w = A.one() + (A.embed(ab) - A.embed(int(G.inv[ab]))) * A.hat(c)
    U = m.closure_subgroup([w, A.embed(a)])
    assert len(U) == 6
    abstract = m.as_abstract_group(U)
    assert not abstract.is_abelian()


# ---------------------------------------------------------------------------
# Engel machinery

def test_engel_identity_stabilizes_at_zero():
    A = alg("catalog:S3", 2)
    out = m.engel_test(A.one(), A.embed(1))
    assert out.stabilizes and out.steps == 0


def test_engel_commuting_stabilizes_at_one():
    A = alg("catalog:C,6", 2)
    out = m.engel_test(A.embed(1), A.embed(2))
    assert out.stabilizes and out.steps == 1


def test_engel_nontrivial_pair_exists_in_f2s3():
    # oracle: exhaustive scan over all pairs of the 12 normalized units
    V = m.enumerate_units(alg("catalog:S3", 2))
    nontrivial = 0
    for i in range(len(V)):
        for j in range(len(V)):
            out = m.engel_test(V.element(i), V.element(j), n_max=64)
            if out.nontrivial:
                nontrivial += 1
    assert nontrivial > 0


def test_engel_stabilization_step_is_exact():
    # the reported step count n really is the first n with (x, y, n) = 1
    A = alg("catalog:D,4", 2)
    V = m.enumerate_units(A)
    rng = np.random.default_rng(12)
    for _ in range(20):
        x = V.element(int(rng.integers(0, len(V))))
        y = V.element(int(rng.integers(0, len(V))))
        out = m.engel_test(x, y)
        assert out.stabilizes
        z = x
        for k in range(out.steps):
            zi = z.try_inverse()
            z = zi * y.try_inverse() * z * y
            if k < out.steps - 1:
                assert not z.is_one()
        assert z.is_one()


def test_engel_inconclusive_when_budget_tiny():
    A = alg("catalog:S3", 2)
    G = A.group
    x = A.embed(G.labels.index("(1 2)"))
    y = A.embed(G.labels.index("(1 3)"))
    with pytest.raises(EngelInconclusive):
        m.engel_test(x, y, n_max=1)


def test_find_non_engel_pair_abelian_none():
    V = m.enumerate_units(alg("prod:catalog:C,2|catalog:C,2", 2))
    assert m.find_non_engel_pair(V, budget=100, seed=0) is None


def test_find_non_engel_pair_f2s3_found():
    V = m.enumerate_units(alg("catalog:S3", 2))
    pair = m.find_non_engel_pair(V, budget=200, seed=0)
    assert pair is not None
    assert m.engel_test(pair[0], pair[1]).nontrivial


def test_find_non_engel_pair_f2d4_none():
    V = m.enumerate_units(alg("catalog:D,4", 2))
    assert m.find_non_engel_pair(V, budget=150, seed=0) is None


def _table_engel_oracle(G, x, y, n_max=128):
    """Independent table-level Engel iteration with cycle detection."""
    z = x
    seen = {z}
    for _ in range(n_max):
        z = m.commutator(G, z, y)
        if z == G.identity:
            return True
        if z in seen:
            return False
        seen.add(z)
    raise AssertionError("no verdict")


def test_class_exists_iff_no_non_engel_pair():
    # cross-check on unit groups of order <= 256
    for spec, p in [("catalog:S3", 2), ("catalog:D,4", 2), ("catalog:C,6", 2)]:
        V = m.enumerate_units(alg(spec, p))
        assert len(V) <= 256
        A = m.as_abstract_group(V)
        klass = m.nilpotency_class(A)
        pair_free = all(_table_engel_oracle(A, i, j)
                        for i in range(A.order) for j in range(A.order))
        assert (klass is not m.NOT_NILPOTENT) == pair_free
