import json

import pytest

from primsolv import constructions as cons
from primsolv import matgroup, perm
from primsolv.constructions import CatalogLimits, ImportError_
from primsolv.perm import Permutation, PermGroup

import oracles

FIXTURES = __import__("pathlib").Path(__file__).resolve().parent.parent / "fixtures"


def test_semilinear_orders():
    assert cons.semilinear_group(2, 3).order() == 21
    assert cons.semilinear_group(5, 1).order() == 4 == cons.gamma0(5, 1).order()
    assert cons.semilinear_group(3, 2).order() == 16
    M = cons.semilinear_group(2, 3)
    assert matgroup.is_irreducible(M) and M.order() % 2 == 1


def test_gamma0_is_regular_on_nonzero():
    M = cons.gamma0(5, 3)
    assert M.order() == 124
    assert matgroup.vector_orbits(M) == [(0, 1), (1, 124)]
    assert perm.is_cyclic(M.perm_group)


def test_frobenius_normalizes_gamma0():
    # phi^-1 w phi = w^p as maps a -> a w
    for p, m in [(2, 3), (3, 2), (5, 3)]:
        w = cons.semilinear_matrix(p, m, 0, 1)
        phi = cons.frobenius_matrix(p, m)
        lhs = matgroup.mat_mul(matgroup.mat_mul(matgroup.mat_inv(phi, p), w, p), phi, p)
        assert lhs == matgroup.mat_pow(w, p, p)


def test_semilinear_subgroup_c31c3():
    M = cons.semilinear_subgroup(5, 3, 4, 1, 0)
    assert M.order() == 93
    assert len(oracles.mat_closure(M.generators, 5)) == 93
    G = cons.semilinear_group(5, 3).perm_group
    assert perm.is_subgroup(M.perm_group, G)
    with pytest.raises(ValueError):
        cons.semilinear_subgroup(5, 3, 5, 1, 0)


def test_semilinear_parameters_are_subgroups_and_distinct():
    for p, m in [(2, 4), (3, 2), (2, 3)]:
        G = cons.semilinear_group(p, m).perm_group
        seen = set()
        for d, e, c, order in cons.semilinear_parameters(p, m):
            M = cons.semilinear_subgroup(p, m, d, e, c)
            assert M.order() == order
            assert perm.is_subgroup(M.perm_group, G)
            key = frozenset(oracles.closure(M.perm_group._raw_gens(), p**m))
            assert key not in seen
            seen.add(key)


def test_semilinear_sweep_is_complete_small():
    # every 2-generated subgroup <w^d, phi^e w^c> for any c, not just c < d
    p, m = 2, 4
    q1 = p**m - 1
    reference = set()
    for d in (1, 3, 5, 15):
        for e in (1, 2, 4):
            for c in range(q1):
                M = cons.semilinear_subgroup(p, m, d, e, c)
                reference.add(frozenset(oracles.closure(M.perm_group._raw_gens(), 16)))
    ours = {frozenset(oracles.closure(cons.semilinear_subgroup(p, m, d, e, c)
                                      .perm_group._raw_gens(), 16))
            for d, e, c, _ in cons.semilinear_parameters(p, m)}
    assert ours == reference


def test_wreath_examples():
    H = cons.gamma0(3, 1)
    S = PermGroup([Permutation.from_cycles([[0, 1]], 2)])
    W = cons.wreath_linear(H, S)
    assert W.n == 2 and W.order() == 8
    assert len(oracles.mat_closure(W.generators, 3)) == 8
    W2 = cons.wreath_linear(cons.gamma0(2, 2), S)
    assert W2.n == 4 and matgroup.is_irreducible(W2)
    T = cons.wreath_linear(cons.MatrixGroup(2, 1, []), PermGroup.trivial(2))
    assert T.order() == 1
    with pytest.raises(ValueError):
        cons.wreath_linear(cons.gamma0(2, 2), PermGroup.trivial(4), max_dim=6)


def test_transitive_tables():
    orders = {2: [2], 3: [3, 6], 4: [4, 4, 8, 12, 24], 5: [5, 10, 20]}
    for k, expected in orders.items():
        groups = cons.transitive_solvable_groups(k)
        assert [G.order() for _, G in groups] == expected
        assert all(perm.is_transitive(G) and perm.is_solvable(G) for _, G in groups)


def test_affine_group():
    triv = cons.affine_group(cons.MatrixGroup(3, 2, []))
    assert triv.order() == 9 and perm.is_transitive(triv)
    assert perm.pointwise_stabilizer(triv, [0]).order() == 1
    A = cons.affine_group(cons.named_group("GL(2,3)"))
    assert A.order() == 432 and perm.is_primitive(A)
    two = cons.two_point_stabilizer(A, 0, matgroup.index_of((1, 0), 3))
    assert two.order() == 6 and perm.derived_length(two) == 2


def test_affine_primitive_iff_irreducible():
    for p, m in [(2, 3), (3, 2), (2, 4)]:
        for M in cons.enumerate_semilinear_subgroups(p, m):
            A = cons.affine_group(M)
            assert perm.is_primitive(A) == matgroup.is_irreducible(M)
    D = cons.direct_sum(cons.gamma0(3, 1), cons.gamma0(3, 1))
    assert not perm.is_primitive(cons.affine_group(D))


def test_named_groups():
    assert cons.named_group("GL(2,3)").order() == 48
    assert cons.named_group("GL(2,2)").order() == 6
    assert cons.named_group("SL(2,3)").order() == 24
    assert cons.named_group("Q8").order() == 8
    assert cons.named_group("C31:C3").order() == 93
    assert cons.named_group("GL(3,2)").order() == 168
    with pytest.raises(ValueError):
        cons.named_group("PSL(2,7)")
    with pytest.raises(ValueError):
        cons.named_group("GL(2,4)")


def test_direct_sum():
    M = cons.direct_sum(cons.gamma0(3, 1), cons.gamma0(3, 2))
    assert M.n == 3 and M.order() == 16
    Md = cons.direct_sum(cons.gamma0(3, 1), cons.gamma0(3, 1), diagonal=True)
    assert Md.order() == 2
    with pytest.raises(ValueError):
        cons.direct_sum(cons.gamma0(3, 1), cons.gamma0(2, 2))


def test_import_fixture():
    entry = cons.import_group(FIXTURES / "deg512.json")
    assert entry.is_matrix and entry.group.p == 2 and entry.group.n == 9
    assert entry.order() == 9261
    assert entry.primitive_affine and entry.odd_order
    perm_entry = cons.import_group(FIXTURES / "deg512_perm.json")
    assert perm_entry.degree == 512 and perm_entry.order() == 9261


def test_import_errors(tmp_path):
    cases = {
        "notjson.json": "{",
        "list.json": "[1, 2]",
        "nogens.json": json.dumps({"degree": 3}),
        "both.json": json.dumps({"degree": 3, "dimension": 2, "characteristic": 3,
                                 "generators": [[1, 0, 2]]}),
        "badperm.json": json.dumps({"degree": 3, "generators": [[0, 0, 1]]}),
        "wrongdeg.json": json.dumps({"degree": 4, "generators": [[1, 0, 2]]}),
        "singular.json": json.dumps({"dimension": 2, "characteristic": 3,
                                     "generators": [[[1, 1], [1, 1]]]}),
        "badchar.json": json.dumps({"dimension": 2, "characteristic": 4,
                                    "generators": [[[1, 0], [0, 1]]]}),
    }
    for name, text in cases.items():
        path = tmp_path / name
        path.write_text(text)
        with pytest.raises(ImportError_):
            cons.import_group(path)


def test_export_roundtrip():
    for G in (cons.named_group("SL(2,3)"), cons.named_group("SL(2,3)").perm_group):
        data = cons.export_group(G, "x")
        back = cons.parse_group(json.loads(json.dumps(data)))
        assert back.order() == G.order()
    cyc = cons.parse_group({"degree": 4, "generators": ["(0,1,2,3)"]})
    assert cyc.order() == 4


def test_catalog_small():
    entries = cons.catalog(CatalogLimits(max_field=16, max_dim=4, max_degree=16))
    labels = [e.label for e in entries]
    assert len(labels) == len(set(labels))
    assert cons.catalog(CatalogLimits(max_field=16, max_dim=4, max_degree=16))[5].label == labels[5]
    provs = {e.provenance for e in entries}
    assert {"semilinear", "wreath", "named"} <= provs
    for e in entries:
        if e.is_matrix:
            assert e.irreducible == matgroup.is_irreducible(e.group)
            assert e.degree <= 16
        assert e.odd_order == (e.order() % 2 == 1)


def test_catalog_rejects_duplicate_labels():
    path = FIXTURES / "deg512.json"
    with pytest.raises(ValueError):
        cons.catalog(CatalogLimits(max_field=4, max_dim=2, max_degree=4,
                                   imports=(path, path)))


def test_make_entry_rejects_unknown_provenance():
    with pytest.raises(ValueError):
        cons.make_entry("x", cons.gamma0(2, 2), "invented")
