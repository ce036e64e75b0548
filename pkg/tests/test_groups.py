import itertools

import numpy as np
import pytest

from ccweights.groups import (FiniteGroup, GroupError, cyclic, dihedral, from_permutations,
                              klein_four, quaternion, symmetric)


def brute_subgroups(G):
    n = G.order
    out = []
    for k in range(1, n + 1):
        if n % k:
            continue
        for s in itertools.combinations(range(n), k):
            if G.is_subgroup(s):
                out.append(s)
    return sorted(out, key=lambda s: (len(s), s))


@pytest.mark.parametrize("G, count", [(cyclic(6), 4), (symmetric(3), 6), (klein_four(), 5),
                                      (dihedral(4), 10), (quaternion(), 6)])
def test_subgroups_match_subset_enumeration(G, count):
    subs = [tuple(s) for s in G.subgroups()]
    assert subs == brute_subgroups(G)
    assert len(subs) == count


def test_group_axioms_of_constructors(groups):
    for G in groups.values():
        tab = G.cayley
        n = G.order
        assert G.identity == 0
        for a, b, c in itertools.product(range(n), repeat=3):
            assert tab[tab[a, b], c] == tab[a, tab[b, c]]
        for g in range(n):
            assert tab[g, G.inv(g)] == 0


def test_orders_and_exponents():
    assert symmetric(3).exponent() == 6
    assert quaternion().exponent() == 4
    assert sorted(quaternion().element_order(g) for g in range(8)) == [1, 2, 4, 4, 4, 4, 4, 4]
    assert sorted(dihedral(4).element_order(g) for g in range(8)) == [1, 2, 2, 2, 2, 2, 4, 4]
    assert klein_four().is_abelian() and not symmetric(3).is_abelian()


def test_from_permutations_composes_left_to_right():
    G = from_permutations([(1, 2, 0), (1, 0, 2)])
    assert G.order == 6 and not G.is_abelian()


def test_rejects_non_group_tables():
    with pytest.raises(GroupError):
        FiniteGroup(np.array([[0, 1], [1, 1]]))
    with pytest.raises(GroupError):
        FiniteGroup(np.array([[0, 1, 2], [1, 0, 2], [2, 2, 0]]))


def test_subgroup_reindexing():
    G = symmetric(3)
    H, embed = G.subgroup(G.closure([3]))
    assert embed[0] == 0 and H.order == 3 and H.is_abelian()
    for i, a in enumerate(embed):
        for j, b in enumerate(embed):
            assert embed[H.mul(i, j)] == G.mul(a, b)
    with pytest.raises(GroupError):
        G.subgroup([0, 1, 2])
