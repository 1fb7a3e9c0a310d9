from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from invdeg.diagmin import DiagonalAction, Found, NotFoundUpTo, WeightRow, minimal_degree_bruteforce
from invdeg.exactalg import GF, QQ, InvDegError
from invdeg.oracles import coaction_is_invariant, coaction_phi, superinvariant_dimension
from invdeg.superinv import (CharacterGroup, SuperAction, SuperFound, SuperPair, SuperPolynomial,
                             UnsupportedQuotient, apply_phi, apply_pq, canonical_representative,
                             equivalence_class, even_action, k_count, minimal_superdegree, pair,
                             pair_weight, super_system, superinvariant_basis)

Z = CharacterGroup(1, ())
Z2 = CharacterGroup(1, (2,))


def example(xi):
    return SuperAction(Z, (0,), (xi,), ((1,), (-1,)))


def gens(F=QQ, s=2):
    e = [SuperPolynomial.even_generator(F, s, j) for j in range(s)]
    o = [SuperPolynomial.odd_generator(F, s, j) for j in range(s)]
    return e, o


def span_contains(basis, f):
    from invdeg.oracles import in_span
    keys = sorted({p for b in basis + [f] for p in b.terms})
    vec = lambda g: [g.terms.get(k, 0) for k in keys]
    return in_span([vec(b) for b in basis], vec(f))


def test_supercommutative_signs():
    (f10, f20), (f11, f21) = gens()
    assert f11 * f21 == -(f21 * f11)
    assert (f11 * f11).is_zero()
    assert f10 * f21 == f21 * f10
    assert (f21 * f11).terms == {SuperPair((0, 0), (0, 1)): -1}


def test_pair_weight_examples():
    assert pair_weight(example(0), pair((0, 3))) == (-3,)
    assert pair_weight(example(0), pair((0, 0))) == (0,)
    act = SuperAction(Z2, (0, 1), (0,), ((1, 1),))
    assert pair_weight(act, pair((0,), (0,))) == (1, 0)


def test_pq_examples():
    assert apply_pq("P", 0, pair((0, 0), (0, 1))) == pair((1, 0), (1,))
    assert apply_pq("Q", 0, pair((1, 0), (1,))) == pair((0, 0), (0, 1))
    assert apply_pq("Q", 1, pair((1, 0), (1,))) is None
    assert apply_pq("Q", 1, pair((1, 0))) is None
    assert k_count(0, (0, 1, 3)) == 2


def test_canonical_examples():
    assert canonical_representative(pair((1, 1))) == pair((0, 0), (0, 1))
    assert canonical_representative(pair((0, 0), (0,))) == pair((0, 0), (0,))
    assert canonical_representative(pair((2, 0), (1,))) == pair((1, 0), (0, 1))


def test_canonical_form_counterexample():
    # the class of ((3,0), {}) contains neither an (l, all) nor an (0, J) member
    cls = equivalence_class(pair((3, 0)))
    assert cls == {pair((3, 0)), pair((2, 0), (0,))}
    assert canonical_representative(pair((3, 0))) == pair((2, 0), (0,))


@given(st.integers(1, 5).flatmap(lambda s: st.tuples(
    st.lists(st.integers(0, 3), min_size=s, max_size=s),
    st.sets(st.integers(0, s - 1)))))
def test_canonical_is_class_constant(case):
    l, J = case
    p = pair(l, J)
    rep = canonical_representative(p)
    assert canonical_representative(rep) == rep
    assert all(canonical_representative(q) == rep for q in equivalence_class(p))
    assert all(q.degree == p.degree for q in equivalence_class(p))


def test_system_examples():
    act = example(1)
    assert super_system(act, 1).unknowns == ()
    sysm = super_system(act, 2)
    assert set(sysm.unknowns) == {pair((1, 1)), pair((0, 0), (0, 1)),
                                  pair((1, 0), (1,)), pair((0, 1), (0,))}
    assert len(superinvariant_basis(act, 2)) == 2
    single = SuperAction(Z, (0,), (1,), ((3,),))
    assert all(superinvariant_basis(single, d) == [] for d in range(1, 6))


def test_single_torsion_weight_has_invariants():
    # with s = 1 only a weight of infinite order forces F[V]^D = F
    act = SuperAction(Z2, (0, 0), (1,), ((0, 1),))
    found = minimal_superdegree(act, 4)
    assert found.degree == 2
    assert [b.terms for b in found.basis] == [{pair((2,)): 1}]


def test_basis_examples():
    (f10, f20), (f11, f21) = gens()
    b0 = superinvariant_basis(example(0), 2)
    assert span_contains(b0, f10 * f20)
    assert span_contains(b0, f10 * f21 - f20 * f11)
    b1 = superinvariant_basis(example(1), 2)
    assert span_contains(b1, f10 * f20 - f11 * f21)
    assert span_contains(b1, f10 * f21 - f20 * f11)
    assert not span_contains(b1, f10 * f20)
    assert any(len(b.terms) >= 2 for b in b1)
    assert superinvariant_basis(example(1), 3) == []


def test_minimal_superdegree_examples():
    assert minimal_superdegree(example(1), 6).degree == 2
    assert minimal_superdegree(SuperAction(Z, (0,), (1,), ((3,),)), 6) == NotFoundUpTo(6)
    for xi in (0, 1, Fraction(-2, 3)):
        assert minimal_superdegree(SuperAction(Z, (0,), (xi,), ((1,), (1,))), 6) == NotFoundUpTo(6)


def test_phi_examples():
    act = example(1)
    (f10, f20), (f11, f21) = gens()
    assert apply_phi(act, f10 * f20) == f11 * f20 - f10 * f21
    assert apply_phi(act, f11 * f11).is_zero()
    assert apply_phi(act, SuperPolynomial.one(QQ, 2)).is_zero()


actions = st.tuples(
    st.integers(1, 3),
    st.lists(st.integers(-3, 3), min_size=3, max_size=3),
    st.integers(-2, 2),
).map(lambda t: SuperAction(Z, (0,), (t[2],), tuple((w,) for w in t[1][:t[0]])))


@settings(max_examples=40)
@given(actions, st.integers(1, 4))
def test_basis_agrees_with_coaction_oracle(act, d):
    basis = superinvariant_basis(act, d)
    assert len(basis) == superinvariant_dimension(act, d)
    assert all(coaction_is_invariant(act, b) for b in basis)


def test_oracle_agreement_with_torsion_and_odd_g():
    for weights in [((1, 1), (-1, 0)), ((1, 0), (-1, 1), (2, 1)), ((2, 1), (-1, 1))]:
        for xi in (0, 1, -2):
            act = SuperAction(Z2, (0, 1), (xi,), weights)
            for d in range(1, 5):
                basis = superinvariant_basis(act, d)
                assert len(basis) == superinvariant_dimension(act, d)
                assert all(coaction_is_invariant(act, b) for b in basis)


@settings(max_examples=40)
@given(actions, st.integers(1, 4), st.data())
def test_phi_squared_is_weight_scalar(act, d, data):
    from invdeg.superinv import pairs_of_degree
    pairs = pairs_of_degree(act.s, d)
    p = data.draw(st.sampled_from(pairs))
    u = SuperPolynomial(act.field, act.s, {p: 1})
    c = sum((p.l[j] + (j in p.J)) * act.x(act.weights[j]) for j in range(act.s))
    assert apply_phi(act, apply_phi(act, u)) == u.scale(c)
    assert apply_phi(act, u) == coaction_phi(act, u)


def test_phi_of_invariant_monomial_is_superinvariant():
    act = SuperAction(Z, (0,), (1,), ((1,), (-1,), (2,)))
    for p in (pair((0, 2, 0), (2,)), pair((1, 1, 0), (0, 1)), pair((2, 1, 0), (1,))):
        assert pair_weight(act, p) == (0,)
        w = apply_phi(act, SuperPolynomial(QQ, 3, {p: 1}))
        assert not w.is_zero()
        assert coaction_is_invariant(act, w)


def test_g0_equality_small_cases():
    for weights in [((1,), (-1,)), ((2,), (-3,)), ((1,), (1,), (-2,)), ((3,),)]:
        act = SuperAction(Z, (0,), (1,), weights)
        sup = minimal_superdegree(act, 8)
        even = minimal_degree_bruteforce(even_action(act), 8)
        assert (sup.degree if isinstance(sup, SuperFound) else None) == \
            (even.degree if isinstance(even, Found) else None)


def test_even_action_examples():
    assert even_action(example(1)) == DiagonalAction(4, (WeightRow(0, (1, 1, -1, -1)),))
    act = SuperAction(Z2, (0, 1), (0,), ((1, 1), (-1, 0)))
    assert even_action(act, True) == DiagonalAction(4, (WeightRow(0, (1, 1, -1, -1)),))
    assert even_action(act, False) == DiagonalAction(
        4, (WeightRow(0, (1, 1, -1, -1)), WeightRow(2, (1, 1, 0, 0))))
    assert even_action(example(1), True) == even_action(example(1), False)


def test_even_action_quotient_keeps_other_torsion():
    # X = Z x Z/4, g = (0,2): X/<g> still has a Z/2 coordinate
    act = SuperAction(CharacterGroup(1, (4,)), (0, 2), (0,), ((1, 1), (0, 2)))
    ea = even_action(act, True)
    assert WeightRow(2, (1, 1, 0, 0)) in ea.generators


def test_even_action_rejects_free_g():
    act = SuperAction(Z, (1,), (0,), ((1,), (-1,)))
    with pytest.raises(UnsupportedQuotient):
        even_action(act, True)


def test_validation():
    with pytest.raises(InvDegError):
        SuperAction(Z, (1,), (1,), ((1,),))  # x != 0 needs 2g = 0
    with pytest.raises(InvDegError):
        SuperAction(CharacterGroup(0, (3,)), (0,), (), ((1,),), GF(3))
    with pytest.raises(InvDegError):
        SuperAction(Z, (0,), (1, 2), ((1,),))


def test_prime_field_actions():
    act = SuperAction(Z, (0,), (1,), ((1,), (-1,)), GF(5))
    assert len(superinvariant_basis(act, 2)) == 2
    assert superinvariant_dimension(act, 2) == 2


def test_json_round_trip():
    act = SuperAction(Z2, (0, 1), (Fraction(-1, 3),), ((1, 1), (-2, 0)))
    doc = act.to_json()
    assert doc["xi"] == ["-1/3"]
    assert doc["field"] == {"type": "rational"}
    assert SuperAction.from_json(doc) == act
    assert SuperAction.from_json(SuperAction(Z, (0,), (2,), ((1,),), GF(7)).to_json()).field == GF(7)
    with pytest.raises(InvDegError):
        SuperAction.from_json({"free_rank": 1})


def test_polynomial_json():
    (f10, f20), (f11, f21) = gens()
    assert (f10 * f21).to_json() == [{"l": [1, 0], "J": [1], "coeff": "1"}]
