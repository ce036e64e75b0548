import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ccweights import (CocycleError, ComplexCocycle, RootCochain, RootCocycle, classify_weights,
                       coboundary, cocycle_from_weight, cocycle_group_Zn, cocycle_scaling,
                       cohomologous, complex_coboundary, h2_over_C, is_coboundary_mod,
                       is_coboundary_over_C, make_unimodular, normalize_cocycle,
                       standard_weight, support_subgroup_and_blocks, thin_scheme, to_h_weight,
                       trivial_weight, verify_cocycle, verify_h_weight, verify_weight,
                       weight_equivalent, weight_from_cocycle)
from ccweights.errors import BoundExceeded
from ccweights.groups import cyclic, dihedral, klein_four, quaternion, symmetric
from ccweights.weights import EquivalenceWitness, WeightMatrix

from oracles import all_coboundaries, brute_h2_order_mod, brute_h2_order_over_C

TWISTED = np.array([[1, 1], [-1, 1]])


def klein_twisted():
    G = klein_four()
    k = np.array([[(g & 1) * (h >> 1) for h in range(4)] for g in range(4)])
    return G, RootCocycle(G, 2, k)


# ---------------------------------------------------------------- verify_cocycle

def test_klein_cocycle_passes_exhaustive_check():
    G, alpha = klein_twisted()
    verify_cocycle(alpha)
    v = alpha.values()
    for g, h, t in itertools.product(range(4), repeat=3):
        assert np.isclose(v[g, h] * v[G.mul(g, h), t], v[g, G.mul(h, t)] * v[h, t])


def test_failing_triple_is_reported():
    G = cyclic(2)
    alpha = RootCocycle(G, 2, np.array([[0, 1], [0, 1]]))
    with pytest.raises(CocycleError) as err:
        verify_cocycle(alpha)
    g, h, t = err.value.witness["triple"]
    k = alpha.k
    assert (k[g, h] + k[G.mul(g, h), t] - k[g, G.mul(h, t)] - k[h, t]) % 2


def test_complex_cocycle_tolerance():
    G = cyclic(3)
    rho = np.array([1.0, 2.0, 0.5])
    verify_cocycle(ComplexCocycle(G, complex_coboundary(G, rho)))
    bad = np.ones((3, 3), dtype=complex)
    bad[1, 1] = 1 + 1e-6
    with pytest.raises(CocycleError):
        verify_cocycle(ComplexCocycle(G, bad))


# ---------------------------------------------------------------- cohomology

@pytest.mark.parametrize("G, m, expect", [(cyclic(2), 2, [2]), (klein_four(), 2, [2, 2, 2]),
                                          (cyclic(3), 2, [])])
def test_h2_mod_matches_enumeration(G, m, expect):
    H = cocycle_group_Zn(G, m)
    assert H.invariant_factors == expect
    assert H.order == brute_h2_order_mod(G, m)


@pytest.mark.parametrize("G, m, M, expect", [(cyclic(2), 2, 4, []), (cyclic(3), 3, 9, []),
                                             (klein_four(), 2, 8, [2])])
def test_h2_over_C_matches_enumeration(G, m, M, expect):
    assert h2_over_C(G).invariant_factors == expect
    assert brute_h2_order_over_C(G, m, M) == max(1, int(np.prod(expect)))


@pytest.mark.parametrize("G, expect", [(cyclic(4), []), (cyclic(5), []), (cyclic(6), []),
                                       (symmetric(3), []), (dihedral(4), [2]),
                                       (quaternion(), [])])
def test_h2_over_C_values(G, expect):
    H = h2_over_C(G)
    assert H.invariant_factors == expect
    for rep in H.representatives:
        assert is_coboundary_over_C(rep) is None


def test_group_size_bound():
    with pytest.raises(BoundExceeded):
        h2_over_C(cyclic(7), limit=6)
    assert h2_over_C(cyclic(7), limit=7).invariant_factors == []


def test_coboundary_examples():
    G = cyclic(2)
    gamma = is_coboundary_over_C(RootCocycle(G, 2, np.zeros((2, 2))))
    assert np.allclose(gamma.values(), 1)
    alpha = RootCocycle(G, 2, np.array([[0, 0], [0, 1]]))
    gamma = is_coboundary_over_C(alpha)
    assert gamma.m == 4 and np.isclose(gamma.values()[1] ** 2, -1)
    assert np.isclose(gamma.values()[1], 1j)
    assert is_coboundary_mod(alpha) is None
    _, k4 = klein_twisted()
    assert is_coboundary_over_C(k4) is None


def test_klein_not_a_coboundary_over_mu8():
    G, alpha = klein_twisted()
    target = tuple((4 * alpha.k).ravel() % 8)
    assert target not in all_coboundaries(G, 8)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2 ** 32 - 1))
def test_coboundaries_are_detected(seed):
    rng = np.random.default_rng(seed)
    G = [cyclic(4), klein_four(), symmetric(3), dihedral(4)][seed % 4]
    M = 2 * G.order
    gamma = RootCochain(G, M, rng.integers(0, M, G.order))
    alpha = coboundary(gamma)
    back = is_coboundary_over_C(alpha)
    assert back is not None and coboundary(back).same_function(alpha)
    assert is_coboundary_mod(alpha) is not None


def test_cohomologous_reps_and_coboundary_twists():
    G = dihedral(4)
    rep = h2_over_C(G).representatives[0]
    gamma = RootCochain(G, 8, np.arange(8) % 8)
    assert cohomologous(rep, rep * coboundary(gamma))
    assert not cohomologous(rep, RootCocycle(G, 1, np.zeros((8, 8))))


# ---------------------------------------------------------------- normalization

def test_normalize_examples():
    G = cyclic(2)
    one = RootCocycle(G, 2, np.zeros((2, 2)))
    beta, _ = normalize_cocycle(one)
    assert beta.m == 2 and not beta.k.any()
    beta, gamma = normalize_cocycle(RootCocycle(G, 2, np.array([[0, 0], [0, 1]])))
    assert beta.m == 4 and not beta.k.any()
    assert np.isclose(gamma.values()[1], 1j)


def normalized(beta):
    G = beta.G
    k = beta.k
    return all(k[g, 0] == 0 and k[0, g] == 0 and k[g, G.inv(g)] == 0 and k[G.inv(g), g] == 0
               for g in range(G.order))


def test_normalize_complex_input(rng):
    G = symmetric(3)
    rho = rng.uniform(0.1, 10, 6)
    phase = np.exp(2j * np.pi * rng.uniform(size=6))
    alpha = ComplexCocycle(G, complex_coboundary(G, rho * phase) * 3.0)
    beta, gamma = normalize_cocycle(alpha)
    v = beta.values()
    assert np.allclose(np.abs(v), 1)
    for g in range(6):
        for val in (v[g, 0], v[0, g], v[g, G.inv(g)], v[G.inv(g), g]):
            assert abs(val - 1) < 1e-9
    assert np.allclose(alpha.values() * complex_coboundary(G, gamma), v)


# ---------------------------------------------------------------- make_unimodular

def test_make_unimodular_examples():
    G = cyclic(2)
    beta, gamma = make_unimodular(ComplexCocycle(G, 4 * np.ones((2, 2))))
    assert np.allclose(gamma, 4) and np.allclose(beta.values(), 1)
    _, k4 = klein_twisted()
    beta, gamma = make_unimodular(ComplexCocycle(k4.G, k4.values()))
    assert np.allclose(gamma, 1) and np.allclose(beta.values(), k4.values())


# ---------------------------------------------------------------- weights and cocycles

def test_weight_from_cocycle_examples():
    G = cyclic(2)
    W = weight_from_cocycle(RootCocycle(G, 2, np.zeros((2, 2))))
    assert np.array_equal(W.entries, np.ones((2, 2)))
    W = weight_from_cocycle(RootCocycle(G, 2, np.array([[0, 0], [0, 1]])))
    assert np.allclose(W.entries, TWISTED)


def test_weight_formula_direct():
    G = symmetric(3)
    rep = RootCocycle(G, 3, np.random.default_rng(1).integers(0, 3, (6, 6)))
    W = weight_from_cocycle(rep)
    v = rep.values()
    for x in range(6):
        for y in range(6):
            assert W.entries[x, y] == v[x, G.mul(G.inv(x), y)]


def test_cocycle_from_weight_examples():
    cc = thin_scheme(cyclic(2))
    alpha = cocycle_from_weight(cc, np.ones((2, 2)))
    assert isinstance(alpha, RootCocycle) and not alpha.k.any()
    alpha = cocycle_from_weight(cc, TWISTED)
    assert np.isclose(alpha.values()[1, 1], -1)
    with pytest.raises(CocycleError):
        cocycle_from_weight(cc, np.eye(2))


def test_h_weight_gives_unit_cocycle(rng):
    G, alpha = klein_twisted()
    beta, _ = normalize_cocycle(alpha)
    cc = thin_scheme(G)
    W = weight_from_cocycle(beta)
    verify_h_weight(cc, W)
    back = cocycle_from_weight(cc, W, exact=False)
    assert np.allclose(np.abs(back.values()), 1)


def test_twisted_constants_are_the_cocycle(rng):
    G = dihedral(4)
    cc = thin_scheme(G)
    rep = h2_over_C(G).representatives[0]
    gam = rng.uniform(0.5, 2, 8) * np.exp(2j * np.pi * rng.uniform(size=8))
    alpha = ComplexCocycle(G, rep.values() * complex_coboundary(G, gam))
    W = weight_from_cocycle(alpha)
    beta = verify_weight(cc, W).twisted_constants
    aw = cocycle_from_weight(cc, W, exact=False).values()
    for g in range(8):
        for h in range(8):
            row = beta[g, h]
            assert np.isclose(row[G.mul(g, h)], aw[g, h])
            assert np.count_nonzero(row) == 1


def test_scaling_takes_weight_to_its_cocycle_weight(rng):
    G = symmetric(3)
    cc = thin_scheme(G)
    a = rng.uniform(0.5, 2, 6) * np.exp(2j * np.pi * rng.uniform(size=6))
    g = rng.uniform(0.5, 2, 6) * np.exp(2j * np.pi * rng.uniform(size=6))
    g[0] = 1
    W = WeightMatrix(EquivalenceWitness(tuple(range(6)), a, g).apply(cc, standard_weight(cc)))
    alpha = cocycle_from_weight(cc, W, exact=False)
    s = cocycle_scaling(cc, W)
    scaled = EquivalenceWitness(tuple(range(6)), s, np.ones(6)).apply(cc, W)
    assert np.allclose(scaled, weight_from_cocycle(alpha).entries)


def test_cohomologous_cocycles_give_equivalent_weights(rng):
    for G in [klein_four(), dihedral(4), cyclic(4)]:
        cc = thin_scheme(G)
        H = h2_over_C(G)
        elements = H.elements()
        for _, alpha in elements:
            gam = rng.uniform(0.5, 2, G.order) * np.exp(2j * np.pi * rng.uniform(size=G.order))
            twin = ComplexCocycle(G, alpha.values() * complex_coboundary(G, gam))
            assert weight_equivalent(cc, weight_from_cocycle(alpha),
                                     weight_from_cocycle(twin)) is not None
        for (_, a), (_, b) in itertools.combinations(elements, 2):
            assert weight_equivalent(cc, weight_from_cocycle(a), weight_from_cocycle(b)) is None


# ---------------------------------------------------------------- support decomposition

def test_support_decomposition_examples():
    G = cyclic(4)
    cc = thin_scheme(G)
    dec = support_subgroup_and_blocks(cc, trivial_weight(cc))
    assert dec.subgroup == (0,) and len(dec.blocks) == 4
    dec = support_subgroup_and_blocks(cc, standard_weight(cc))
    assert dec.subgroup == (0, 1, 2, 3) and len(dec.blocks) == 1


def test_block_diagonal_weight_on_z4():
    G = cyclic(4)
    cc = thin_scheme(G)
    W = np.zeros((4, 4), dtype=complex)
    W[np.ix_([0, 2], [0, 2])] = TWISTED
    W[np.ix_([1, 3], [1, 3])] = TWISTED
    dec = support_subgroup_and_blocks(cc, W)
    assert dec.subgroup == (0, 2)
    assert [set(b) for b in dec.blocks] == [{0, 2}, {1, 3}]
    cocycles = dec.cocycles()
    for c in cocycles:
        assert np.isclose(c.values()[1, 1], -1)
    assert cohomologous(cocycles[0], cocycles[1])


def test_support_must_be_a_subgroup():
    G = symmetric(3)
    cc = thin_scheme(G)
    with pytest.raises(Exception):
        support_subgroup_and_blocks(cc, np.where(np.isin(cc.color, [0, 3]), 1.0, 0.0))


# ---------------------------------------------------------------- H-weights and classification

def test_to_h_weight_examples():
    cc = thin_scheme(cyclic(2))
    Wb, wit, _ = to_h_weight(cc, np.ones((2, 2)))
    assert np.allclose(Wb.entries, 1) and np.allclose(wit.a, 1) and np.allclose(wit.gamma, 1)
    Wb, wit, _ = to_h_weight(cc, TWISTED)
    assert np.allclose(Wb.entries, 1)
    assert np.isclose(wit.gamma[1], 1j)
    G, alpha = klein_twisted()
    cc = thin_scheme(G)
    Wb, wit, beta = to_h_weight(cc, weight_from_cocycle(alpha))
    verify_h_weight(cc, Wb)
    assert 4 % beta.m == 0
    assert np.allclose(wit.apply(cc, weight_from_cocycle(alpha)), Wb.entries)


@pytest.mark.parametrize("G, count", [(cyclic(4), 1), (symmetric(3), 1), (klein_four(), 2)])
def test_classify_counts(G, count):
    res = classify_weights(G)
    assert len(res) == count
    assert np.array_equal(res.equivalent, np.eye(count, dtype=bool))


def test_classify_klein_profiles():
    res = classify_weights(klein_four())
    assert sorted(p["center_dimension"] for p in res.profiles) == [1, 4]
