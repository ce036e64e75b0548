"""Finite groups given by Cayley tables, with a few standard constructors.

Elements are indices ``0..order-1``. Every constructor here puts the
identity at index 0.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from math import gcd

import numpy as np

from .errors import Diagnostic


class GroupError(Diagnostic):
    pass


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    cayley: np.ndarray
    identity: int = 0
    inverse: tuple = ()
    labels: tuple = field(default=(), repr=False)

    def __post_init__(self):
        tab = np.asarray(self.cayley, dtype=np.int64)
        object.__setattr__(self, "cayley", tab)
        tab.setflags(write=False)
        validate_cayley(tab)
        n = tab.shape[0]
        ident = next(i for i in range(n) if all(tab[i, j] == j for j in range(n)))
        object.__setattr__(self, "identity", ident)
        inv = tuple(int(np.nonzero(tab[i] == ident)[0][0]) for i in range(n))
        object.__setattr__(self, "inverse", inv)
        if not self.labels:
            object.__setattr__(self, "labels", tuple(str(i) for i in range(n)))

    @property
    def order(self):
        return self.cayley.shape[0]

    def __len__(self):
        return self.order

    def mul(self, g, h):
        return int(self.cayley[g, h])

    def inv(self, g):
        return self.inverse[g]

    def element_order(self, g):
        k, x = 1, g
        while x != self.identity:
            x = self.mul(x, g)
            k += 1
        return k

    def exponent(self):
        e = 1
        for g in range(self.order):
            k = self.element_order(g)
            e = e * k // gcd(e, k)
        return e

    def is_abelian(self):
        return bool(np.array_equal(self.cayley, self.cayley.T))

    def closure(self, gens):
        """Sorted element list of the subgroup generated by ``gens``."""
        found = {self.identity}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.mul(x, g)
                    if y not in found:
                        found.add(y)
                        nxt.append(y)
            frontier = nxt
        return sorted(found)

    def is_subgroup(self, elements):
        s = set(elements)
        if self.identity not in s:
            return False
        return all(self.mul(a, self.inv(b)) in s for a in s for b in s)

    def subgroup(self, elements):
        """The subgroup on ``elements`` re-indexed in sorted order, identity first.

        Returns ``(H, embed)`` with ``embed[i]`` the G-index of H-element ``i``.
        """
        if not self.is_subgroup(elements):
            raise GroupError("subgroup", "elements are not closed under products and inverses",
                             sorted(elements))
        embed = [self.identity] + sorted(set(elements) - {self.identity})
        pos = {g: i for i, g in enumerate(embed)}
        tab = [[pos[self.mul(a, b)] for b in embed] for a in embed]
        return FiniteGroup(np.array(tab), labels=tuple(self.labels[g] for g in embed)), embed

    def subgroups(self):
        """All subgroups as sorted element lists, smallest first.

        Grows cyclic subgroups one generator at a time until nothing new appears.
        """
        subs = {tuple(self.closure([g])) for g in range(self.order)}
        changed = True
        while changed:
            changed = False
            current = list(subs)
            for s in current:
                for g in range(self.order):
                    if g in s:
                        continue
                    t = tuple(self.closure(list(s) + [g]))
                    if t not in subs:
                        subs.add(t)
                        changed = True
        return sorted(subs, key=lambda s: (len(s), s))


def validate_cayley(tab):
    tab = np.asarray(tab)
    if tab.ndim != 2 or tab.shape[0] != tab.shape[1] or tab.shape[0] == 0:
        raise GroupError("shape", "Cayley table must be a non-empty square array", list(tab.shape))
    n = tab.shape[0]
    if tab.min() < 0 or tab.max() >= n:
        raise GroupError("range", "entries must lie in [0, n)", None)
    full = np.arange(n)
    for i in range(n):
        if not np.array_equal(np.sort(tab[i]), full):
            raise GroupError("latin", f"row {i} is not a permutation", {"row": i})
        if not np.array_equal(np.sort(tab[:, i]), full):
            raise GroupError("latin", f"column {i} is not a permutation", {"column": i})
    # (gh)t = g(ht)
    left = tab[tab[:, :, None], np.arange(n)[None, None, :]]
    right = tab[np.arange(n)[:, None, None], tab[None, :, :]]
    bad = np.argwhere(left != right)
    if len(bad):
        g, h, t = (int(v) for v in bad[0])
        raise GroupError("associativity", "product is not associative", [g, h, t])
    idents = [i for i in range(n) if np.array_equal(tab[i], full) and np.array_equal(tab[:, i], full)]
    if not idents:
        raise GroupError("identity", "no two-sided identity", None)


def from_elements(elements, mul, labels=None):
    """Group from a list of hashable elements (identity first) and a product function."""
    pos = {x: i for i, x in enumerate(elements)}
    tab = np.array([[pos[mul(a, b)] for b in elements] for a in elements])
    return FiniteGroup(tab, labels=tuple(labels) if labels else tuple(str(x) for x in elements))


def from_permutations(gens):
    """The permutation group generated by ``gens`` (tuples in one-line notation).

    Elements are sorted lexicographically, so the identity comes first.
    Composition is ``(p*q)(x) = q(p(x))``: apply ``p`` first, matching right actions.
    """
    gens = [tuple(g) for g in gens]
    deg = len(gens[0])
    ident = tuple(range(deg))

    def compose(p, q):
        return tuple(q[p[x]] for x in range(deg))

    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = compose(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    elements = sorted(seen)
    return from_elements(elements, compose)


def cyclic(n):
    return FiniteGroup(np.add.outer(np.arange(n), np.arange(n)) % n,
                       labels=tuple(f"g^{i}" for i in range(n)))


def direct_product(G, H):
    """Pairs (g, h) indexed ``g*|H| + h``."""
    nh = H.order
    tab = np.empty((G.order * nh, G.order * nh), dtype=np.int64)
    for (g1, h1), (g2, h2) in product(product(range(G.order), range(nh)), repeat=2):
        tab[g1 * nh + h1, g2 * nh + h2] = G.mul(g1, g2) * nh + H.mul(h1, h2)
    labels = tuple(f"({a},{b})" for a in G.labels for b in H.labels)
    return FiniteGroup(tab, labels=labels)


def klein_four():
    return direct_product(cyclic(2), cyclic(2))


def symmetric(n):
    if n == 1:
        return cyclic(1)
    swap = tuple([1, 0] + list(range(2, n)))
    cycle = tuple(list(range(1, n)) + [0])
    return from_permutations([swap, cycle] if n > 2 else [swap])


def dihedral(k):
    """Symmetries of the k-gon, order 2k."""
    rot = tuple((i + 1) % k for i in range(k))
    ref = tuple((-i) % k for i in range(k))
    return from_permutations([rot, ref])


def quaternion():
    """Q8 as unit quaternions (a, b, c, d) with entries in {0, +-1}."""
    def qmul(p, q):
        a1, b1, c1, d1 = p
        a2, b2, c2, d2 = q
        return (a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
                a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
                a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
                a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2)

    units = [(1, 0, 0, 0), (-1, 0, 0, 0), (0, 1, 0, 0), (0, -1, 0, 0),
             (0, 0, 1, 0), (0, 0, -1, 0), (0, 0, 0, 1), (0, 0, 0, -1)]
    names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
    return from_elements(units, qmul, labels=names)
