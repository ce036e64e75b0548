"""Coherent configurations: construction, axiom checks, closed subsets,
sub- and factor configurations, automorphisms.

A configuration is stored as an ``n x n`` integer color matrix whose entry
``(x, y)`` is the index of the class containing ``(x, y)``. Everything in this
module is exact integer arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import BoundExceeded, ConfigurationError

DEFAULT_AUT_BOUND = 16


@dataclass(frozen=True, eq=False)
class Configuration:
    color: np.ndarray
    r: int

    def __post_init__(self):
        color = np.array(self.color, dtype=np.int64)
        if color.ndim != 2 or color.shape[0] != color.shape[1] or color.shape[0] == 0:
            raise ConfigurationError("C1", "color matrix must be non-empty and square", list(color.shape))
        if color.min() < 0 or color.max() >= self.r:
            raise ConfigurationError("C1", f"class indices must lie in [0, {self.r})", None)
        missing = sorted(set(range(self.r)) - set(np.unique(color).tolist()))
        if missing:
            raise ConfigurationError("C1", f"class {missing[0]} is empty", {"class": missing[0]})
        color.setflags(write=False)
        object.__setattr__(self, "color", color)

    @property
    def n(self):
        return self.color.shape[0]

    def adjacency(self, c):
        return (self.color == c).astype(np.int64)

    def cells(self, c):
        return [tuple(int(v) for v in xy) for xy in np.argwhere(self.color == c)]


@dataclass(frozen=True, eq=False)
class CoherentConfiguration:
    base: Configuration
    converse: tuple
    diagonal_classes: tuple
    p: np.ndarray
    group: object = field(default=None, repr=False)

    @property
    def n(self):
        return self.base.n

    @property
    def r(self):
        return self.base.r

    @property
    def color(self):
        return self.base.color

    @property
    def homogeneous(self):
        return len(self.diagonal_classes) == 1

    def adjacency(self, c):
        return self.base.adjacency(c)

    def adjacency_stack(self):
        return np.stack([self.adjacency(c) for c in range(self.r)])

    def valency(self, c):
        """Number of cells of class ``c`` in a row through which it passes."""
        rows = np.count_nonzero(self.color == c, axis=1)
        return int(rows.max())

    @property
    def thin(self):
        return self.homogeneous and all(self.valency(c) == 1 for c in range(self.r))


def canonical_relabel(color):
    """Relabel classes: diagonal classes first, each group by first row-major occurrence."""
    color = np.asarray(color)
    n = color.shape[0]
    order = []
    for x in range(n):
        c = int(color[x, x])
        if c not in order:
            order.append(c)
    for c in color.ravel().tolist():
        if c not in order:
            order.append(c)
    relabel = {c: i for i, c in enumerate(order)}
    out = np.vectorize(relabel.__getitem__, otypes=[np.int64])(color)
    return out, len(order)


def verify_coherent(cfg):
    """Check (C2)-(C4) for a configuration and compute its intersection numbers.

    Raises :class:`ConfigurationError` naming the first failed axiom.
    """
    if not isinstance(cfg, Configuration):
        color = np.asarray(cfg)
        cfg = Configuration(color, int(color.max()) + 1)
    color, r, n = cfg.color, cfg.r, cfg.n
    sizes = np.bincount(color.ravel(), minlength=r)

    converse = []
    for c in range(r):
        images = np.unique(color.T[color == c])
        if len(images) != 1 or sizes[images[0]] != sizes[c]:
            raise ConfigurationError(
                "C2", f"transpose of class {c} is not a class",
                {"class": c, "cells": cfg.cells(c), "transpose_meets": images.tolist()})
        converse.append(int(images[0]))

    diag = np.diag(color)
    diagonal = sorted(set(diag.tolist()))
    for c in range(r):
        on = np.count_nonzero(diag == c)
        if on and on != sizes[c]:
            raise ConfigurationError("C3", f"class {c} mixes diagonal and off-diagonal cells",
                                     {"class": c})

    A = np.stack([(color == c).astype(np.int64) for c in range(r)])
    # a representative cell per class to read p off
    reps = [tuple(np.argwhere(color == c)[0]) for c in range(r)]
    rx = np.array([xy[0] for xy in reps])
    ry = np.array([xy[1] for xy in reps])
    p = np.zeros((r, r, r), dtype=np.int64)
    for i in range(r):
        prod = np.einsum("xz,jzy->jxy", A[i], A)
        p[i] = prod[:, rx, ry]
        recon = np.einsum("jk,kxy->jxy", p[i], A)
        bad = np.argwhere(prod != recon)
        if len(bad):
            j, x, y = (int(v) for v in bad[0])
            k = int(color[x, y])
            raise ConfigurationError(
                "C4", f"A_{i} A_{j} is not constant on class {k}",
                {"triple": [i, j, k], "cell": [x, y], "value": int(prod[j, x, y]),
                 "expected": int(p[i, j, k])})
    p.setflags(write=False)
    return CoherentConfiguration(cfg, tuple(converse), tuple(diagonal), p)


def thin_scheme(G):
    """The configuration of a group: class ``c_g = {(x, y) : x g = y}``, indexed by g.

    Classes are indexed by element index, so with the identity at 0 the
    diagonal class comes first.
    """
    n = G.order
    # color[x, y] = x^{-1} y
    inv = np.array(G.inverse)
    color = G.cayley[inv[:, None], np.arange(n)[None, :]]
    if G.identity != 0:
        raise ConfigurationError("C3", "thin schemes require the identity at index 0", None)
    cc = verify_coherent(Configuration(color, n))
    return CoherentConfiguration(cc.base, cc.converse, cc.diagonal_classes, cc.p, group=G)


def _orbit(points, gens):
    seen = {points[0]}
    frontier = [points[0]]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = g[x]
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def schurian_scheme(degree, generators):
    """Orbitals of the permutation group generated by ``generators`` on ``degree`` points."""
    gens = [tuple(int(v) for v in g) for g in generators]
    for g in gens:
        if sorted(g) != list(range(degree)):
            raise ConfigurationError("C1", "generator is not a permutation of the points", list(g))
    if len(_orbit(list(range(degree)), gens)) != degree:
        raise ConfigurationError("transitive", "group is not transitive on the points", None)
    color = -np.ones((degree, degree), dtype=np.int64)
    label = 0
    for x in range(degree):
        for y in range(degree):
            if color[x, y] >= 0:
                continue
            color[x, y] = label
            frontier = [(x, y)]
            while frontier:
                nxt = []
                for a, b in frontier:
                    for g in gens:
                        ga, gb = g[a], g[b]
                        if color[ga, gb] < 0:
                            color[ga, gb] = label
                            nxt.append((ga, gb))
                frontier = nxt
            label += 1
    color, r = canonical_relabel(color)
    return verify_coherent(Configuration(color, r))


@dataclass(frozen=True)
class ClosedSubset:
    classes: tuple


def closed_subset_check(cc, D):
    D = tuple(sorted(set(int(d) for d in D)))
    if not D:
        raise ConfigurationError("closed", "closed subsets are non-empty", None)
    if any(d < 0 or d >= cc.r for d in D):
        raise ConfigurationError("closed", "class index out of range", list(D))
    inD = set(D)
    for d in D:
        for e in D:
            for c in np.nonzero(cc.p[d, e])[0]:
                if int(c) not in inD:
                    raise ConfigurationError(
                        "closed", f"p[{d}][{e}][{int(c)}] > 0 but {int(c)} is not in D",
                        {"triple": [d, e, int(c)]})
    for d in D:
        if cc.converse[d] not in inD:
            raise ConfigurationError("closed", f"converse of class {d} is missing",
                                     {"class": d, "converse": cc.converse[d]})
    missing = [c for c in cc.diagonal_classes if c not in inD]
    if missing:
        raise ConfigurationError("closed", f"diagonal class {missing[0]} is missing",
                                 {"class": missing[0]})
    return ClosedSubset(D)


def _closed(cc, D):
    return D if isinstance(D, ClosedSubset) else closed_subset_check(cc, D)


def blocks(cc, D):
    """Blocks ``xD`` ordered by smallest point; inside a block, the smallest point
    comes first and the others follow by (linking class, point)."""
    D = _closed(cc, D)
    mask = np.isin(cc.color, D.classes)
    out = []
    assigned = set()
    for x in range(cc.n):
        if x in assigned:
            continue
        members = [int(y) for y in np.nonzero(mask[x])[0]]
        members.sort(key=lambda y: (int(cc.color[x, y]) if y != x else -1, y))
        out.append(tuple(members))
        assigned.update(members)
    sizes = {len(b) for b in out}
    if len(sizes) != 1:
        raise ConfigurationError("closed", "blocks have different sizes", [len(b) for b in out])
    return out


def blocks_and_subconfigurations(cc, D):
    """Partition into blocks and the induced configuration on each block.

    Classes of a sub-configuration are numbered by position in ``D.classes``.
    """
    D = _closed(cc, D)
    pos = {d: i for i, d in enumerate(D.classes)}
    parts = blocks(cc, D)
    subs = []
    for b in parts:
        sub = cc.color[np.ix_(b, b)]
        sub = np.vectorize(pos.__getitem__, otypes=[np.int64])(sub)
        subs.append(verify_coherent(Configuration(sub, len(D.classes))))
    return parts, subs


@dataclass(frozen=True, eq=False)
class FactorData:
    blocks: list
    block_of: tuple
    class_quotient: tuple
    quotient: CoherentConfiguration

    @property
    def m(self):
        return len(self.blocks)


def factor_configuration(cc, D):
    D = _closed(cc, D)
    parts = blocks(cc, D)
    m = len(parts)
    block_of = [0] * cc.n
    for i, b in enumerate(parts):
        for x in b:
            block_of[x] = i
    bo = np.array(block_of)
    incid = []
    for c in range(cc.r):
        xs, ys = np.nonzero(cc.color == c)
        incid.append(frozenset(zip(bo[xs].tolist(), bo[ys].tolist())))
    distinct = []
    for s in incid:
        if s not in distinct:
            distinct.append(s)
    qcolor = -np.ones((m, m), dtype=np.int64)
    for k, s in enumerate(distinct):
        for i, j in s:
            if qcolor[i, j] >= 0:
                raise ConfigurationError(
                    "factor", "quotient classes overlap; C//D is not a partition",
                    {"cell": [i, j], "classes": [int(qcolor[i, j]), k]})
            qcolor[i, j] = k
    if qcolor.min() < 0:
        raise ConfigurationError("factor", "quotient classes do not cover X/D", None)
    qcolor, qr = canonical_relabel(qcolor)
    # canonical_relabel preserves the identity of classes, recover the map
    class_quotient = tuple(int(qcolor[next(iter(s))]) for s in incid)
    quotient = verify_coherent(Configuration(qcolor, qr))
    return FactorData(parts, tuple(block_of), class_quotient, quotient)


def automorphisms(cc, bound=DEFAULT_AUT_BOUND):
    """All color-preserving permutations, in lexicographic order of image tuples."""
    n = cc.n
    if n > bound:
        raise BoundExceeded("n", n, bound)
    color = cc.color
    rowsig = [tuple(sorted(color[x].tolist())) for x in range(n)]
    found = []
    img = [-1] * n
    used = [False] * n

    def extend(x):
        if x == n:
            found.append(tuple(img))
            return
        for y in range(n):
            if used[y] or rowsig[y] != rowsig[x] or color[y, y] != color[x, x]:
                continue
            ok = True
            for z in range(x):
                w = img[z]
                if color[w, y] != color[z, x] or color[y, w] != color[x, z]:
                    ok = False
                    break
            if ok:
                img[x] = y
                used[y] = True
                extend(x + 1)
                used[y] = False
        img[x] = -1

    extend(0)
    return found
