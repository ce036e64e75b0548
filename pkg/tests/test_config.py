import itertools

import numpy as np
import pytest

from ccweights import (ConfigurationError, automorphisms, blocks_and_subconfigurations,
                       closed_subset_check, factor_configuration, schurian_scheme, thin_scheme,
                       verify_coherent)
from ccweights.config import Configuration, blocks
from ccweights.errors import BoundExceeded
from ccweights.groups import cyclic, symmetric

from conftest import cycle, orbitals, reflection

RANK2 = np.array([[0, 1, 1], [1, 0, 1], [1, 1, 0]])


def test_thin_z2():
    cc = thin_scheme(cyclic(2))
    assert cc.color.tolist() == [[0, 1], [1, 0]]
    assert cc.p[1, 1, 0] == 1 and cc.p[1, 1, 1] == 0


def test_rank2_intersection_numbers_match_matrix_product():
    cc = verify_coherent(RANK2)
    A1 = (RANK2 == 1).astype(int)
    prod = A1 @ A1
    assert prod[0, 0] == cc.p[1, 1, 0] == 2
    assert prod[0, 1] == cc.p[1, 1, 1] == 1


def test_c2_failure_names_the_class():
    color = np.array([[0, 1, 2], [2, 0, 2], [2, 2, 0]])
    with pytest.raises(ConfigurationError) as err:
        verify_coherent(color)
    assert err.value.axiom == "C2"
    assert err.value.witness["class"] == 1
    assert err.value.witness["cells"] == [(0, 1)]


def test_c3_and_c4_failures():
    with pytest.raises(ConfigurationError) as err:
        verify_coherent(np.array([[0, 1], [1, 1]]))
    assert err.value.axiom == "C3"
    # path graph 0-1-2: edges and non-edges do not form a scheme
    with pytest.raises(ConfigurationError) as err:
        verify_coherent(np.array([[0, 1, 2], [1, 0, 1], [2, 1, 0]]))
    assert err.value.axiom == "C4"
    i, j, k = err.value.witness["triple"]
    x, y = err.value.witness["cell"]
    A = [(np.array([[0, 1, 2], [1, 0, 1], [2, 1, 0]]) == c).astype(int) for c in range(3)]
    assert (A[i] @ A[j])[x, y] == err.value.witness["value"] != err.value.witness["expected"]


def test_c1_rejects_empty_class():
    with pytest.raises(ConfigurationError) as err:
        Configuration(np.zeros((2, 2), dtype=int), 2)
    assert err.value.axiom == "C1"


def test_thin_scheme_structure():
    z3 = thin_scheme(cyclic(3))
    assert z3.r == 3 and z3.converse == (0, 2, 1)
    G = symmetric(3)
    s3 = thin_scheme(G)
    assert s3.r == 6 and all(s3.valency(c) == 1 for c in range(6)) and s3.thin
    for g in range(6):
        for h in range(6):
            assert s3.p[g, h, G.mul(g, h)] == 1
            assert s3.p[g, h].sum() == 1


@pytest.mark.parametrize("degree, gens, rank", [
    (3, [(1, 0, 2), (1, 2, 0)], 2),
    (4, [cycle(4)], 4),
    (4, [cycle(4), reflection(4)], 3),
    (5, [cycle(5), reflection(5)], 3),
    (6, [cycle(6), reflection(6)], 4),
])
def test_schurian_matches_orbit_oracle(degree, gens, rank):
    cc = schurian_scheme(degree, gens)
    assert cc.r == rank
    orbs = orbitals(degree, gens)
    assert len(orbs) == rank
    for orb in orbs:
        assert len({int(cc.color[x, y]) for x, y in orb}) == 1


def test_regular_action_is_thin():
    cc = schurian_scheme(4, [cycle(4)])
    assert cc.thin and cc.homogeneous


def test_schurian_rejects_intransitive():
    with pytest.raises(ConfigurationError) as err:
        schurian_scheme(3, [(1, 0, 2)])
    assert err.value.axiom == "transitive"


def test_corpus_is_coherent(corpus):
    for name, cc in corpus.items():
        again = verify_coherent(cc.color)
        assert np.array_equal(again.p, cc.p), name
        assert cc.homogeneous, name


def span_closure_oracle(cc, D):
    """D is closed iff the span of its adjacency matrices is closed under products."""
    A = [cc.adjacency(d) for d in D]
    inside = np.isin(cc.color, D)
    return all(not np.any((a @ b)[~inside]) for a in A for b in A) and \
        all(np.array_equal(cc.adjacency(d).T, cc.adjacency(cc.converse[d]))
            or cc.converse[d] in D for d in D)


def test_closed_subsets_agree_with_span_oracle(corpus):
    for name in ["thin S3", "thin Z4", "thin V4", "D4 on 4", "D6 on 6", "S3xZ2 on 6"]:
        cc = corpus[name]
        for k in range(1, cc.r + 1):
            for D in itertools.combinations(range(cc.r), k):
                if 0 not in D:
                    continue
                try:
                    closed_subset_check(cc, D)
                    ok = True
                except ConfigurationError:
                    ok = False
                assert ok == span_closure_oracle(cc, list(D)), (name, D)


def test_closed_subset_examples():
    z4 = thin_scheme(cyclic(4))
    assert closed_subset_check(z4, [0, 2]).classes == (0, 2)
    rank2 = verify_coherent(RANK2)
    assert closed_subset_check(rank2, [0]).classes == (0,)
    assert closed_subset_check(rank2, [0, 1]).classes == (0, 1)
    with pytest.raises(ConfigurationError):
        closed_subset_check(rank2, [1])
    G = symmetric(3)
    s3 = thin_scheme(G)
    c = G.closure([3])
    r3 = [g for g in c if g != 0][0]
    with pytest.raises(ConfigurationError) as err:
        closed_subset_check(s3, [0, r3])
    d, e, k = err.value.witness["triple"]
    assert d == e == r3 and k == G.mul(r3, r3) and s3.p[d, e, k] > 0


def test_blocks_and_factor_of_s3():
    G = symmetric(3)
    s3 = thin_scheme(G)
    D = [0, 1]
    parts, subs = blocks_and_subconfigurations(s3, D)
    assert len(parts) == 3 and all(len(b) == 2 for b in parts)
    for b in parts:
        x = b[0]
        assert set(b) == {G.mul(x, h) for h in D}
    assert all(s.r == 2 and s.thin for s in subs)
    fac = factor_configuration(s3, D)
    assert fac.quotient.color.tolist() == RANK2.tolist()
    # block incidence oracle
    for c in range(6):
        q = fac.class_quotient[c]
        for x, y in np.argwhere(s3.color == c):
            assert fac.quotient.color[fac.block_of[x], fac.block_of[y]] == q


def test_trivial_factors(corpus):
    cc = corpus["D6 on 6"]
    fac = factor_configuration(cc, [0])
    assert fac.m == cc.n and np.array_equal(fac.quotient.color, cc.color)
    fac = factor_configuration(cc, list(range(cc.r)))
    assert fac.m == 1 and fac.quotient.n == 1
    assert [set(b) for b in blocks(cc, list(range(cc.r)))] == [set(range(6))]
    assert blocks(cc, [0]) == [(x,) for x in range(6)]


def test_automorphisms():
    assert len(automorphisms(thin_scheme(cyclic(2)))) == 2
    assert len(automorphisms(verify_coherent(RANK2))) == 6
    for G in [cyclic(3), symmetric(3)]:
        cc = thin_scheme(G)
        auts = automorphisms(cc)
        assert len(auts) == G.order
        assert sorted(auts) == sorted(tuple(G.mul(a, x) for x in range(G.order))
                                      for a in range(G.order))
        assert auts[0] == tuple(range(G.order))


def test_automorphisms_refuse_large_input():
    cc = thin_scheme(cyclic(5))
    with pytest.raises(BoundExceeded):
        automorphisms(cc, bound=4)
