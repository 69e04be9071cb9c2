import pytest
from hypothesis import given, settings, strategies as st

from primsolv import perm
from primsolv.perm import Permutation, PermGroup, StabilizerChain

import oracles

P = Permutation.from_cycles


def sym3():
    return PermGroup([P([[0, 1]], 3), P([[0, 1, 2]], 3)])


def test_compose_convention():
    a = P([[0, 1]], 3)
    b = P([[1, 2]], 3)
    c = perm.compose(a, b)
    assert c.images == (2, 0, 1)
    assert c == P([[0, 2, 1]], 3)
    assert perm.compose(Permutation.identity(3), a) == a


def test_inverse_and_parse():
    p = Permutation.parse("[2,0,3,1]")
    assert perm.compose(p, perm.inverse(p)).is_identity()
    assert Permutation.parse("(0,1)(2,3)", 4).images == (1, 0, 3, 2)
    assert Permutation.parse(P([[0, 2, 1]], 3).cycle_string(), 3) == P([[0, 2, 1]], 3)
    with pytest.raises(ValueError):
        Permutation([0, 0, 1])


def test_orbit_examples():
    assert perm.orbit(PermGroup.trivial(5), 3) == [3]
    G = PermGroup([P([[0, 1, 2]], 4)])
    assert sorted(perm.orbit(G, 0)) == [0, 1, 2]
    assert perm.number_of_orbits(PermGroup.trivial(4)) == 4


def test_order_examples():
    G = PermGroup([P([[0, 1]], 4), P([[0, 1, 2, 3]], 4)])
    assert G.order() == 24
    assert len(oracles.closure(G._raw_gens(), 4)) == 24
    assert PermGroup.trivial(3).order() == 1


def test_chain_invariants():
    G = PermGroup([P([[0, 1, 2, 3, 4]], 6), P([[0, 1], [4, 5]], 6)])
    ch = G.chain
    prod = 1
    for orb in ch.basic_orbits():
        prod *= len(orb)
    assert prod == G.order()
    for i, level in enumerate(ch.levels):
        for g in level.gens:
            assert all(g[b] == b for b in ch.base[:i])


def test_pointwise_stabilizer_examples():
    S3 = sym3()
    assert perm.pointwise_stabilizer(S3, []) is S3
    H = perm.pointwise_stabilizer(S3, [0])
    assert H.order() == 2
    assert P([[1, 2]], 3) in H


def test_setwise_stabilizer_examples():
    S3 = sym3()
    H = perm.setwise_stabilizer(S3, {0, 1})
    assert H.order() == 2 and P([[0, 1]], 3) in H
    assert perm.setwise_stabilizer(S3, set()).order() == 6
    assert perm.setwise_stabilizer(S3, {0, 1, 2}).order() == 6


def test_setwise_against_filter():
    G = PermGroup([P([[0, 1, 2, 3, 4, 5, 6]], 7), P([[1, 2, 4], [3, 6, 5]], 7)])
    elems = oracles.closure(G._raw_gens(), 7)
    for subset in ({0}, {0, 1}, {0, 1, 3}, {1, 2, 4}, {0, 2, 5, 6}):
        expected = sum(1 for g in elems if {g[x] for x in subset} == subset)
        assert perm.setwise_stabilizer(G, subset).order() == expected


def test_derived_series_sym3():
    S3 = sym3()
    series = perm.derived_series(S3)
    assert [H.order() for H in series] == [6, 3, 1]
    assert perm.derived_length(S3) == 2
    assert perm.derived_length(PermGroup.trivial(3)) == 0
    assert perm.derived_length(PermGroup([P([[0, 1, 2, 3]], 4)])) == 1


def test_not_solvable():
    S5 = PermGroup.symmetric(5)
    assert not perm.is_solvable(S5)
    with pytest.raises(perm.NotSolvableError):
        perm.derived_length(S5)


def test_cyclic_and_abelian():
    V4 = PermGroup([P([[0, 1], [2, 3]], 4), P([[0, 2], [1, 3]], 4)])
    assert perm.is_abelian(V4) and not perm.is_cyclic(V4)
    assert perm.is_cyclic(PermGroup([P([[0, 1, 2, 3]], 4)]))
    assert not perm.is_cyclic(sym3())


def test_blocks():
    C4 = PermGroup([P([[0, 1, 2, 3]], 4)])
    assert perm.is_transitive(C4)
    assert perm.minimal_blocks(C4) == [[0, 2], [1, 3]]
    assert not perm.is_primitive(C4)
    assert perm.is_primitive(sym3())
    F20 = PermGroup([P([[0, 1, 2, 3, 4]], 5), P([[1, 2, 4, 3]], 5)])
    assert perm.is_primitive(F20)
    with pytest.raises(ValueError):
        perm.minimal_blocks(PermGroup([P([[0, 1]], 4)]))


def test_intersection():
    S4 = PermGroup.symmetric(4)
    A = PermGroup([P([[0, 1, 2, 3]], 4)])
    B = PermGroup([P([[0, 2]], 4), P([[1, 3]], 4)])
    I = perm.intersection(A, B)
    ea = oracles.closure(A._raw_gens(), 4)
    eb = oracles.closure(B._raw_gens(), 4)
    assert I.order() == len(ea & eb)
    assert perm.is_subgroup(I, S4)


def test_pickle_roundtrip():
    import pickle
    G = sym3()
    G.order()
    H = pickle.loads(pickle.dumps(G))
    assert H.order() == 6


# -- properties

perms = st.integers(min_value=3, max_value=7).flatmap(
    lambda n: st.lists(st.permutations(list(range(n))), min_size=1, max_size=3))


@settings(max_examples=60, deadline=None)
@given(perms)
def test_order_and_membership_match_closure(gens):
    n = len(gens[0])
    G = PermGroup([Permutation(g) for g in gens])
    elems = oracles.closure(gens, n)
    assert G.order() == len(elems)
    for cand in [tuple(range(n))[::-1], tuple(range(1, n)) + (0,)]:
        assert perm.membership(G, Permutation(cand)) == (cand in elems)
    for x in range(n):
        orb = perm.orbit(G, x)
        assert set(orb) == oracles.orbit(elems, x)
        assert len(orb) * perm.pointwise_stabilizer(G, [x]).order() == len(elems)


@settings(max_examples=40, deadline=None)
@given(perms)
def test_derived_series_matches_commutator_closure(gens):
    n = len(gens[0])
    G = PermGroup([Permutation(g) for g in gens])
    expected = oracles.derived_orders([tuple(g) for g in gens], n)
    assert [H.order() for H in perm.derived_series(G)] == expected


@settings(max_examples=40, deadline=None)
@given(st.permutations(list(range(6))), st.permutations(list(range(6))))
def test_inverse_property(a, b):
    p, q = Permutation(a), Permutation(b)
    assert (p * p.inverse()).is_identity()
    assert (p * q).inverse() == q.inverse() * p.inverse()
    assert (p * q)(0) == q(p(0))


def test_chain_extend_and_tail():
    ch = StabilizerChain(4)
    assert ch.extend(P([[0, 1, 2, 3]], 4).images)
    assert not ch.extend(P([[0, 2], [1, 3]], 4).images)
    assert ch.extend(P([[0, 1]], 4).images)
    assert ch.order() == 24
    assert ch.tail(1).order() == 6
    assert len(ch.elements()) == 24
