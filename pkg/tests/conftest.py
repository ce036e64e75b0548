import itertools

import numpy as np
import pytest

from ccweights import schurian_scheme, thin_scheme
from ccweights.groups import (cyclic, dihedral, direct_product, klein_four, quaternion,
                              symmetric)


def small_groups():
    """Every group of order at most 8, up to isomorphism."""
    z2 = cyclic(2)
    out = {f"Z{n}": cyclic(n) for n in range(1, 9)}
    out.update({
        "V4": klein_four(),
        "Z2xZ4": direct_product(z2, cyclic(4)),
        "Z2^3": direct_product(z2, direct_product(z2, z2)),
        "S3": symmetric(3),
        "D4": dihedral(4),
        "Q8": quaternion(),
    })
    return out


def cycle(n):
    return tuple((i + 1) % n for i in range(n))


def reflection(n):
    return tuple((-i) % n for i in range(n))


def transposition(n):
    return (1, 0) + tuple(range(2, n))


def scheme_corpus():
    """Every scheme of order at most 6 built by the thin and orbital constructions here."""
    out = {f"thin {name}": thin_scheme(G) for name, G in small_groups().items()
           if G.order <= 6}
    for n in range(2, 7):
        out[f"C{n} on {n}"] = schurian_scheme(n, [cycle(n)])
        out[f"D{n} on {n}"] = schurian_scheme(n, [cycle(n), reflection(n)])
        out[f"S{n} on {n}"] = schurian_scheme(n, [cycle(n), transposition(n)])
    # S3 x Z2 on 6 points: triangle prism
    prism = [(1, 2, 0, 4, 5, 3), (1, 0, 2, 4, 3, 5), (3, 4, 5, 0, 1, 2)]
    out["S3xZ2 on 6"] = schurian_scheme(6, prism)
    # S3 on the 6 ordered pairs of distinct points of {0,1,2}
    pairs = [p for p in itertools.permutations(range(3), 2)]
    idx = {p: i for i, p in enumerate(pairs)}
    gens = []
    for g in [(1, 2, 0), (1, 0, 2)]:
        gens.append(tuple(idx[(g[a], g[b])] for a, b in pairs))
    out["S3 on pairs"] = schurian_scheme(6, gens)
    return out


def orbitals(degree, gens):
    """Independent orbital oracle: close the pair set under the full generated group."""
    group = {tuple(range(degree))}
    frontier = list(group)
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = tuple(g[p[i]] for i in range(degree))
                if q not in group:
                    group.add(q)
                    nxt.append(q)
        frontier = nxt
    seen, orbs = set(), []
    for x in range(degree):
        for y in range(degree):
            if (x, y) in seen:
                continue
            orb = {(p[x], p[y]) for p in group}
            seen |= orb
            orbs.append(frozenset(orb))
    return orbs


@pytest.fixture(scope="session")
def groups():
    return small_groups()


@pytest.fixture(scope="session")
def corpus():
    return scheme_corpus()


@pytest.fixture
def rng():
    return np.random.default_rng(20261016)
