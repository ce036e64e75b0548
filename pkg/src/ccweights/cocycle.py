"""Factor sets (2-cocycles with trivial action on the nonzero complex numbers),
their cohomology, and the dictionary between factor sets and weights on thin
configurations.

Root-of-unity valued cocycles are kept exact as exponent tables modulo ``m``:
``alpha(g, h) = exp(2 pi i k[g, h] / m)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from math import gcd

import numpy as np

from .config import DEFAULT_AUT_BOUND, blocks, thin_scheme
from .errors import BoundExceeded, CocycleError
from .intlinalg import MultiplicativeSystem, abelian_quotient, kernel_mod, solve_mod
from .weights import (DEFAULT_EPS, EquivalenceWitness, WeightMatrix, algebra_profile,
                      as_weight, verify_weight, weight_equivalent, _check_witness)

DEFAULT_GROUP_LIMIT = 12


def _roots(k, m):
    return np.exp(2j * np.pi * (np.asarray(k) % m) / m)


@dataclass(frozen=True, eq=False)
class RootCocycle:
    G: object
    m: int
    k: np.ndarray

    def __post_init__(self):
        k = np.array(self.k, dtype=np.int64) % self.m
        n = self.G.order
        if k.shape != (n, n):
            raise CocycleError("shape", f"table must be {n}x{n}", list(k.shape))
        k.setflags(write=False)
        object.__setattr__(self, "k", k)

    def values(self):
        return _roots(self.k, self.m)

    def with_order(self, m2):
        """The same function written over ``m2``, a multiple of ``m``."""
        if m2 % self.m:
            raise ValueError(f"{m2} is not a multiple of {self.m}")
        return RootCocycle(self.G, m2, self.k * (m2 // self.m))

    def reduced(self):
        """The same function over the smallest possible root order."""
        g = gcd(self.m, *[int(v) for v in self.k.ravel()])
        return RootCocycle(self.G, self.m // g, self.k // g)

    def __mul__(self, other):
        m = self.m * other.m // gcd(self.m, other.m)
        return RootCocycle(self.G, m, self.with_order(m).k + other.with_order(m).k)

    def __pow__(self, e):
        return RootCocycle(self.G, self.m, self.k * e)

    def inverse(self):
        return RootCocycle(self.G, self.m, -self.k)

    def same_function(self, other):
        m = self.m * other.m // gcd(self.m, other.m)
        return bool(np.array_equal(self.with_order(m).k, other.with_order(m).k))

    def __eq__(self, other):
        return isinstance(other, RootCocycle) and self.G is other.G and self.same_function(other)

    __hash__ = None


@dataclass(frozen=True, eq=False)
class ComplexCocycle:
    G: object
    table: np.ndarray
    eps: float = DEFAULT_EPS

    def __post_init__(self):
        t = np.array(self.table, dtype=complex)
        n = self.G.order
        if t.shape != (n, n):
            raise CocycleError("shape", f"table must be {n}x{n}", list(t.shape))
        t.setflags(write=False)
        object.__setattr__(self, "table", t)

    def values(self):
        return self.table


@dataclass(frozen=True, eq=False)
class RootCochain:
    """A function ``G -> mu_m`` stored as exponents."""
    G: object
    m: int
    c: np.ndarray

    def values(self):
        return _roots(self.c, self.m)


def _index_arrays(n):
    g = np.arange(n)[:, None, None]
    h = np.arange(n)[None, :, None]
    t = np.arange(n)[None, None, :]
    return g, h, t


def verify_cocycle(alpha):
    """Check ``alpha(g,h) alpha(gh,t) = alpha(g,ht) alpha(h,t)`` on every triple.

    Returns ``True``; raises :class:`CocycleError` with the first failing triple.
    """
    G = alpha.G
    n = G.order
    cay = G.cayley
    g, h, t = _index_arrays(n)
    if isinstance(alpha, RootCocycle):
        k, m = alpha.k, alpha.m
        lhs = (k[g, h] + k[cay[g, h], t]) % m
        rhs = (k[g, cay[h, t]] + k[h, t]) % m
        bad = np.argwhere(lhs != rhs)
        if len(bad):
            i, j, l = (int(v) for v in bad[0])
            raise CocycleError("cocycle", "factor set identity fails",
                               {"triple": [i, j, l], "lhs": {"root": [int(lhs[i, j, l]), m]},
                                "rhs": {"root": [int(rhs[i, j, l]), m]}})
        return True
    v = alpha.values()
    if np.any(v == 0):
        i, j = (int(x) for x in np.argwhere(v == 0)[0])
        raise CocycleError("cocycle", "factor sets take nonzero values", {"pair": [i, j]})
    lhs = v[g, h] * v[cay[g, h], t]
    rhs = v[g, cay[h, t]] * v[h, t]
    dev = np.abs(lhs / rhs - 1)
    if dev.max() >= alpha.eps:
        i, j, l = (int(x) for x in np.unravel_index(np.argmax(dev), dev.shape))
        raise CocycleError("cocycle", "factor set identity fails",
                           {"triple": [i, j, l], "lhs": _c(lhs[i, j, l]), "rhs": _c(rhs[i, j, l])})
    return True


def _c(z):
    return [float(np.real(z)), float(np.imag(z))]


def coboundary_matrix_1(G):
    """Rows ``(g, h)``: ``c(g) + c(h) - c(gh)``."""
    n = G.order
    D = np.zeros((n * n, n), dtype=np.int64)
    for g, h in product(range(n), repeat=2):
        row = g * n + h
        D[row, g] += 1
        D[row, h] += 1
        D[row, G.mul(g, h)] -= 1
    return D


def cocycle_matrix(G):
    """Rows ``(g, h, t)``: ``k(g,h) + k(gh,t) - k(g,ht) - k(h,t)``."""
    n = G.order
    D = np.zeros((n ** 3, n * n), dtype=np.int64)
    for g, h, t in product(range(n), repeat=3):
        row = (g * n + h) * n + t
        D[row, g * n + h] += 1
        D[row, G.mul(g, h) * n + t] += 1
        D[row, g * n + G.mul(h, t)] -= 1
        D[row, h * n + t] -= 1
    return D


def coboundary(gamma):
    """``delta gamma (g, h) = gamma(g) gamma(h) / gamma(gh)``, exact for root cochains."""
    if not isinstance(gamma, RootCochain):
        raise TypeError("use complex_coboundary for complex cochains")
    c = np.asarray(gamma.c)
    return RootCocycle(gamma.G, gamma.m, c[:, None] + c[None, :] - c[gamma.G.cayley])


def complex_coboundary(G, gamma):
    gamma = np.asarray(gamma, dtype=complex)
    return gamma[:, None] * gamma[None, :] / gamma[G.cayley]


@dataclass(frozen=True, eq=False)
class CohomologyGroup:
    G: object
    coefficients: str
    invariant_factors: list
    representatives: list

    @property
    def order(self):
        out = 1
        for d in self.invariant_factors:
            out *= d
        return out

    def elements(self):
        """One representative cocycle per class, as products of the generators."""
        out = []
        N = self.representatives[0].m if self.representatives else max(1, self.G.order)
        for exps in product(*[range(d) for d in self.invariant_factors]):
            k = np.zeros((self.G.order, self.G.order), dtype=np.int64)
            for e, rep in zip(exps, self.representatives):
                k = k + e * rep.with_order(N).k
            out.append((exps, RootCocycle(self.G, N, k)))
        return out


def _check_limit(G, limit):
    if G.order > limit:
        raise BoundExceeded("|G|", G.order, limit)


def _quotient(G, N, kernel, extra_relations):
    rels = [kernel.coords(v) for v in extra_relations]
    factors, combos = abelian_quotient(kernel.orders, rels)
    reps = []
    for combo in combos:
        k = np.zeros(G.order * G.order, dtype=np.int64)
        for t, gen in zip(combo, kernel.gens):
            k = (k + t * gen) % N
        reps.append(RootCocycle(G, N, k.reshape(G.order, G.order)))
    return factors, reps


def cocycle_group_Zn(G, m, limit=DEFAULT_GROUP_LIMIT):
    """``H^2(G, Z/m)`` with trivial action, via Smith normal forms."""
    _check_limit(G, limit)
    if m < 1:
        raise ValueError("m must be positive")
    Z = kernel_mod(cocycle_matrix(G), m)
    D1 = coboundary_matrix_1(G)
    factors, reps = _quotient(G, m, Z, [D1[:, g] % m for g in range(G.order)])
    H = CohomologyGroup(G, f"Z_{m}", factors, reps)
    _check_orders(H, lambda a: is_coboundary_mod(a) is not None)
    return H


def h2_over_C(G, limit=DEFAULT_GROUP_LIMIT):
    """``H^2(G, C^x)`` with representatives valued in the ``|G|``-th roots of unity.

    A ``mu_N`` cocycle is a coboundary over C^x iff it is ``delta gamma`` with
    ``gamma`` valued in ``mu_{N e}``, ``e`` the exponent of G; those coboundaries
    are generated by ``delta`` of point masses and by ``delta c / e`` for lifts
    ``c`` of homomorphisms ``G -> Z/e``.
    """
    _check_limit(G, limit)
    N, e = G.order, G.exponent()
    Z = kernel_mod(cocycle_matrix(G), N)
    D1 = coboundary_matrix_1(G)
    rels = [D1[:, g] % N for g in range(G.order)]
    homs = kernel_mod(D1, e)
    for c in homs.gens:
        dc = D1 @ c
        assert np.all(dc % e == 0)
        rels.append((dc // e) % N)
    factors, reps = _quotient(G, N, Z, rels)
    H = CohomologyGroup(G, "C*", factors, reps)
    _check_orders(H, lambda a: is_coboundary_over_C(a) is not None)
    return H


def _prime_factors(d):
    out, p = [], 2
    while p * p <= d:
        if d % p == 0:
            out.append(p)
            while d % p == 0:
                d //= p
        p += 1
    if d > 1:
        out.append(d)
    return out


def _check_orders(H, trivial):
    for d, rep in zip(H.invariant_factors, H.representatives):
        verify_cocycle(rep)
        assert trivial(rep ** d), "representative power is not a coboundary"
        for p in _prime_factors(d):
            assert not trivial(rep ** (d // p)), "representative has smaller order than its factor"


def is_coboundary_mod(alpha):
    """``gamma`` with ``delta gamma = alpha`` inside ``Z/m`` coefficients, or ``None``."""
    sol = solve_mod(coboundary_matrix_1(alpha.G), alpha.k.ravel(), alpha.m)
    if sol is None:
        return None
    gamma = RootCochain(alpha.G, alpha.m, sol)
    assert coboundary(gamma).same_function(alpha)
    return gamma


def is_coboundary_over_C(alpha, eps=None):
    """``gamma`` with ``delta gamma = alpha`` over C^x, or ``None``.

    Root cocycles are decided exactly over ``mu_{m e}``; complex ones through
    the multiplicative solver.
    """
    G = alpha.G
    if isinstance(alpha, RootCocycle):
        e = G.exponent()
        M = alpha.m * e
        sol = solve_mod(coboundary_matrix_1(G), (e * alpha.k).ravel(), M)
        if sol is None:
            return None
        gamma = RootCochain(G, M, sol)
        assert coboundary(gamma).same_function(alpha)
        return gamma
    eps = alpha.eps if eps is None else eps
    system = MultiplicativeSystem(coboundary_matrix_1(G))
    gamma = system.solve(alpha.values().ravel(), tol=eps)
    if gamma is None:
        return None
    assert np.max(np.abs(complex_coboundary(G, gamma) - alpha.values())) < eps * max(
        1.0, np.abs(alpha.values()).max())
    return gamma


def cohomologous(alpha, beta):
    """Whether ``alpha / beta`` is a coboundary over C^x."""
    if isinstance(alpha, RootCocycle) and isinstance(beta, RootCocycle):
        return is_coboundary_over_C(alpha * beta.inverse()) is not None
    eps = max(getattr(alpha, "eps", DEFAULT_EPS), getattr(beta, "eps", DEFAULT_EPS))
    ratio = ComplexCocycle(alpha.G, np.asarray(alpha.values()) / np.asarray(beta.values()), eps)
    return is_coboundary_over_C(ratio) is not None


def normalize_cocycle(alpha):
    """An equivalent cocycle with identity and inverse normalization and unit values.

    Returns ``(beta, gamma)`` with ``beta = alpha * delta(gamma)`` and
    ``beta(g,1) = beta(1,g) = beta(g,g^-1) = beta(g^-1,g) = 1``. Root input stays
    exact; the root order may double when an involution needs a square root.
    Complex input is first made unimodular.
    """
    G = alpha.G
    n, one = G.order, G.identity
    inv = G.inverse
    if isinstance(alpha, RootCocycle):
        m = alpha.m
        k = alpha.k
        k0 = int(k[one, one])
        # constant gamma = alpha(1,1)^-1 has coboundary alpha(1,1)^-1
        k1 = (k - k0) % m
        odd = [g for g in range(n) if g != one and inv[g] == g and (k1[g, g] % 2) and m % 2 == 0]
        m2 = 2 * m if odd else m
        K = k1 * (m2 // m)
        c = np.zeros(n, dtype=np.int64)
        for g in range(n):
            if g == one:
                continue
            ig = inv[g]
            if ig == g:
                # 2 c = -K[g,g] mod m2, take the root with exponent in [0, m2/2)
                sols = [x for x in range(m2) if (2 * x + K[g, g]) % m2 == 0]
                small = [x for x in sols if x < m2 / 2]
                c[g] = (small or sols)[0]
            elif g < ig:
                c[ig] = (-K[g, ig]) % m2
        gamma = RootCochain(G, m2, (c - k0 * (m2 // m)) % m2)
        beta = RootCocycle(G, m2, K + coboundary(RootCochain(G, m2, c)).k)
        assert (alpha.with_order(m2) * coboundary(gamma)).same_function(beta)
        _assert_normalized(beta)
        return beta, gamma

    unit, rho = make_unimodular(alpha)
    v = unit.values()
    c0 = v[one, one]
    v1 = v / c0
    gam = np.ones(n, dtype=complex)
    for g in range(n):
        if g == one:
            continue
        ig = inv[g]
        if ig == g:
            gam[g] = np.sqrt(1 / v1[g, g])
        elif g < ig:
            gam[ig] = 1 / v1[g, ig]
    beta = ComplexCocycle(G, v1 * complex_coboundary(G, gam), alpha.eps)
    # beta = alpha / delta(rho) / c0 * delta(gam) = alpha * delta(gam / (rho c0))
    gamma = gam / (rho * c0)
    assert np.max(np.abs(alpha.values() * complex_coboundary(G, gamma) - beta.values())) < \
        1e-8 * max(1.0, np.abs(alpha.values()).max())
    _assert_normalized(beta)
    return beta, gamma


def _assert_normalized(beta):
    G = beta.G
    one = G.identity
    if isinstance(beta, RootCocycle):
        k = beta.k
        for g in range(G.order):
            ig = G.inv(g)
            assert k[g, one] == 0 and k[one, g] == 0
            assert k[g, ig] == 0 and k[ig, g] == 0
        return
    v = beta.values()
    tol = 1e-9
    assert np.max(np.abs(np.abs(v) - 1)) < tol
    for g in range(G.order):
        ig = G.inv(g)
        for val in (v[g, one], v[one, g], v[g, ig], v[ig, g]):
            assert abs(val - 1) < tol


def make_unimodular(alpha):
    """Strip the positive part: ``(beta, gamma)`` with ``beta = alpha / delta(gamma)``,
    ``gamma`` positive real and ``|beta| = 1``."""
    G = alpha.G
    v = np.asarray(alpha.values(), dtype=complex)
    if np.any(v == 0):
        i, j = (int(x) for x in np.argwhere(v == 0)[0])
        raise CocycleError("cocycle", "zero value", {"pair": [i, j]})
    logmod = np.log(np.abs(v))
    # F(g) = prod_t |alpha(g, t)|; |alpha|^n = delta F
    gamma = np.exp(logmod.sum(axis=1) / G.order)
    beta = v / complex_coboundary(G, gamma)
    eps = getattr(alpha, "eps", DEFAULT_EPS)
    return ComplexCocycle(G, beta, eps), gamma


def exactify(alpha, m=None, max_order=360, tol=1e-9):
    """A :class:`RootCocycle` with the same values, or ``None``.

    With ``m`` given only that order is tried; otherwise the smallest order up
    to ``max_order`` is used.
    """
    if isinstance(alpha, RootCocycle):
        return alpha if m is None else alpha.with_order(m)
    v = alpha.values()
    if np.max(np.abs(np.abs(v) - 1)) > tol:
        return None
    ang = np.angle(v) / (2 * np.pi)
    for mm in ([m] if m else range(1, max_order + 1)):
        k = np.round(ang * mm).astype(np.int64)
        if np.max(np.abs(_roots(k, mm) - v)) < tol:
            return RootCocycle(alpha.G, mm, k % mm)
    return None


def weight_from_cocycle(alpha, eps=DEFAULT_EPS):
    """``W[x, y] = alpha(x, x^-1 y)`` on the thin configuration of ``alpha.G``."""
    G = alpha.G
    n = G.order
    xinv_y = G.cayley[np.array(G.inverse)[:, None], np.arange(n)[None, :]]
    return WeightMatrix(alpha.values()[np.arange(n)[:, None], xinv_y], eps)


def _group_of(cc):
    if cc.group is None:
        raise CocycleError("thin", "configuration carries no group; build it with thin_scheme",
                           None)
    return cc.group


def cocycle_from_weight(cc, W, m=None, exact=True):
    """``alpha_W(g, h) = W[x, xg] W[xg, xgh] / W[x, xgh]``, checked for every ``x``."""
    G = _group_of(cc)
    W = as_weight(W)
    w = W.entries
    if np.any(w == 0):
        x, y = (int(v) for v in np.argwhere(w == 0)[0])
        raise CocycleError("zero entry", "weight has zero entries; decompose it with "
                           "support_subgroup_and_blocks first", {"cell": [x, y]})
    n = G.order
    cay = G.cayley
    x, g, h = _index_arrays(n)
    xg = cay[x, g]
    xgh = cay[xg, h]
    a = w[x, xg] * w[xg, xgh] / w[x, xgh]
    base = a[G.identity]
    dev = np.abs(a - base[None]) / np.abs(base[None])
    if dev.max() >= W.eps:
        i, j, l = (int(v) for v in np.unravel_index(np.argmax(dev), dev.shape))
        raise CocycleError("W3", "factor set depends on the base point; input is not a weight",
                           {"x": i, "pair": [j, l]})
    alpha = ComplexCocycle(G, base, W.eps)
    verify_cocycle(alpha)
    if exact:
        root = exactify(alpha, m=m)
        if root is not None:
            verify_cocycle(root)
            return root
    return alpha


def cocycle_scaling(cc, W):
    """The diagonal ``a_g = 1 / W[1, g]`` taking ``W`` to ``W_{alpha_W}``."""
    G = _group_of(cc)
    return 1 / as_weight(W).entries[G.identity]


@dataclass(frozen=True, eq=False)
class SupportDecomposition:
    subgroup: tuple
    group: object
    blocks: list
    weights: list

    def cocycles(self, exact=True):
        thin = thin_scheme(self.group)
        return [cocycle_from_weight(thin, w, exact=exact) for w in self.weights]


def support_subgroup_and_blocks(cc, W):
    G = _group_of(cc)
    W = as_weight(W)
    verdict = verify_weight(cc, W)
    H = tuple(sorted(verdict.support_classes))
    if not G.is_subgroup(H):
        raise CocycleError("subgroup", "support classes do not form a subgroup", list(H))
    sub, embed = G.subgroup(H)
    parts = blocks(cc, list(H))
    weights = [WeightMatrix(W.entries[np.ix_(b, b)], W.eps) for b in parts]
    for b in parts:
        x0 = b[0]
        assert list(b) == [G.mul(x0, h) for h in embed]
    return SupportDecomposition(tuple(embed), sub, parts, weights)


def to_h_weight(cc, W):
    """An H-weight ``W_beta`` with ``beta`` normalized, and a witness for ``W ~ W_beta``.

    Returns ``(W_beta, witness, beta)``.
    """
    G = _group_of(cc)
    W = as_weight(W)
    alpha = cocycle_from_weight(cc, W)
    beta, gamma = normalize_cocycle(alpha)
    gvals = gamma.values() if isinstance(gamma, RootCochain) else np.asarray(gamma)
    Wb = weight_from_cocycle(beta, W.eps)
    a = 1 / (W.entries[G.identity] * gvals)
    wit = EquivalenceWitness(tuple(range(cc.n)), a, gvals.astype(complex))
    _check_witness(cc, W, Wb, wit)
    return Wb, wit, beta


@dataclass
class Classification:
    cohomology: CohomologyGroup
    classes: list = field(default_factory=list)
    equivalent: np.ndarray = None
    profiles: list = field(default_factory=list)

    def __len__(self):
        return len(self.classes)


def classify_weights(G, limit=DEFAULT_GROUP_LIMIT, bound=DEFAULT_AUT_BOUND, seed=0):
    """Weights with no zero entry on the thin configuration, one per cohomology class.

    Checks both directions of the correspondence: the representatives are
    pairwise inequivalent, and each is equivalent to a random cohomologous
    cocycle's weight.
    """
    H = h2_over_C(G, limit)
    cc = thin_scheme(G)
    rng = np.random.default_rng(seed)
    out = Classification(H)
    for _, alpha in H.elements():
        W = weight_from_cocycle(alpha)
        out.classes.append((alpha, W))
        out.profiles.append(algebra_profile(verify_weight(cc, W)))
        # alpha * delta(gamma) for random gamma must give an equivalent weight
        gam = rng.uniform(0.5, 2.0, G.order) * np.exp(2j * np.pi * rng.uniform(size=G.order))
        twin = weight_from_cocycle(
            ComplexCocycle(G, alpha.values() * complex_coboundary(G, gam)))
        if weight_equivalent(cc, W, twin, bound) is None:
            raise CocycleError("correspondence", "cohomologous cocycles gave inequivalent weights",
                               {"class": alpha.k.tolist()})
    k = len(out.classes)
    eq = np.eye(k, dtype=bool)
    for i in range(k):
        for j in range(i + 1, k):
            wit = weight_equivalent(cc, out.classes[i][1], out.classes[j][1], bound)
            eq[i, j] = eq[j, i] = wit is not None
    out.equivalent = eq
    if not np.array_equal(eq, np.eye(k, dtype=bool)):
        raise CocycleError("correspondence", "weights of distinct cohomology classes are equivalent",
                           {"pairs": np.argwhere(eq & ~np.eye(k, dtype=bool)).tolist()})
    return out
