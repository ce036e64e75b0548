import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ccweights.intlinalg import (MultiplicativeSystem, abelian_quotient, kernel_mod,
                                 smith_normal_form, solve_mod)


def test_textbook_smith_form():
    A = [[2, 4, 4], [-6, 6, 12], [10, -4, -16]]
    d, U, V, Vinv = smith_normal_form(A, want_u=True)
    assert d == [2, 6, 12]
    D = U.dot(np.array(A, dtype=object)).dot(V)
    assert np.array_equal(D.astype(np.int64), np.diag(d))
    assert np.array_equal(V.dot(Vinv).astype(np.int64), np.eye(3, dtype=np.int64))


matrices = st.integers(1, 4).flatmap(lambda r: st.integers(1, 4).flatmap(
    lambda c: st.lists(st.lists(st.integers(-9, 9), min_size=c, max_size=c),
                       min_size=r, max_size=r)))


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_smith_form_properties(A):
    d, U, V, Vinv = smith_normal_form(A, want_u=True)
    A = np.array(A, dtype=object)
    D = U.dot(A).dot(V)
    expect = np.zeros(A.shape, dtype=object)
    for i, di in enumerate(d):
        expect[i, i] = di
    assert (D == expect).all()
    assert all(di > 0 for di in d)
    assert all(d[i + 1] % d[i] == 0 for i in range(len(d) - 1))
    assert round(abs(np.linalg.det(U.astype(float)))) == 1
    assert (V.dot(Vinv) == np.eye(A.shape[1], dtype=np.int64)).all()
    assert len(d) == np.linalg.matrix_rank(A.astype(float))


def brute_kernel(A, m):
    A = np.asarray(A, dtype=np.int64)
    return {x for x in itertools.product(range(m), repeat=A.shape[1])
            if not np.any(A.dot(np.array(x)) % m)}


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(st.integers(-5, 5), min_size=3, max_size=3), min_size=1, max_size=3),
       st.integers(2, 6))
def test_kernel_mod_matches_brute_force(A, m):
    K = kernel_mod(np.array(A), m)
    size = int(np.prod(K.orders)) if K.orders else 1
    brute = brute_kernel(A, m)
    assert size == len(brute)
    spanned = {tuple(np.zeros(3, dtype=np.int64))}
    for g in K.gens:
        spanned = {tuple((np.array(s) + t * g) % m) for s in spanned for t in range(m)}
    assert spanned == brute
    for x in brute:
        c = K.coords(x)
        y = sum((t * g for t, g in zip(c, K.gens)), np.zeros(3, dtype=np.int64)) % m
        assert tuple(y) == x


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(st.integers(-5, 5), min_size=2, max_size=2), min_size=1, max_size=3),
       st.lists(st.integers(0, 7), min_size=3, max_size=3), st.integers(2, 8))
def test_solve_mod_matches_brute_force(A, b, M):
    A = np.array(A)
    b = np.array(b[:len(A)])
    sol = solve_mod(A, b, M)
    feasible = any(not np.any((A.dot(np.array(x)) - b) % M)
                   for x in itertools.product(range(M), repeat=2))
    assert (sol is not None) == feasible
    if sol is not None:
        assert not np.any((A.dot(sol) - b) % M)


def test_abelian_quotient():
    assert abelian_quotient([4], [[2]]) == ([2], [[1]])
    factors, _ = abelian_quotient([2, 2, 4], [[0, 1, 2]])
    assert factors == [2, 4]
    assert abelian_quotient([6], [[1]]) == ([], [])
    factors, combos = abelian_quotient([2, 3], [])
    assert factors == [6]


def test_multiplicative_system_recovers_solution(rng):
    M = np.array([[1, -1, 0], [0, 1, 1], [1, 0, 1], [2, 0, 0]])
    x = rng.uniform(0.5, 2, 3) * np.exp(2j * np.pi * rng.uniform(size=3))
    vals = np.prod(x[None, :] ** M, axis=1)
    sol = MultiplicativeSystem(M).solve(vals)
    assert sol is not None
    assert np.allclose(np.prod(sol[None, :] ** M, axis=1), vals, atol=1e-12)


def test_multiplicative_system_torsion_obstruction():
    # x^2 = 1 and x = -1 together force x = -1; x^2 = 1, x = i is infeasible
    M = np.array([[2], [1]])
    assert MultiplicativeSystem(M).solve([1, -1]) is not None
    assert MultiplicativeSystem(M).solve([1, 1j]) is None
    assert MultiplicativeSystem(np.array([[1]])).solve([2.0], unit=True) is None
