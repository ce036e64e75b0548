"""Weights on coherent configurations: axiom checks, twisted structure
constants, and constructive equivalence tests with witnesses."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_AUT_BOUND, automorphisms
from .errors import WeightError
from .intlinalg import MultiplicativeSystem

DEFAULT_EPS = 1e-9


@dataclass(frozen=True, eq=False)
class WeightMatrix:
    entries: np.ndarray
    eps: float = DEFAULT_EPS

    def __post_init__(self):
        w = np.array(self.entries, dtype=complex)
        if w.ndim != 2 or w.shape[0] != w.shape[1]:
            raise WeightError("shape", "weight must be a square matrix", list(w.shape))
        mod = np.abs(w)
        amb = np.argwhere((mod >= self.eps) & (mod < 10 * self.eps))
        if len(amb):
            x, y = (int(v) for v in amb[0])
            raise WeightError("support", "entry modulus lies in the guard band [eps, 10 eps)",
                              {"cell": [x, y], "modulus": float(mod[x, y])})
        w[mod < self.eps] = 0
        w.setflags(write=False)
        object.__setattr__(self, "entries", w)

    @property
    def n(self):
        return self.entries.shape[0]

    @property
    def support(self):
        return self.entries != 0

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.entries, dtype=dtype)


def as_weight(W, eps=DEFAULT_EPS):
    return W if isinstance(W, WeightMatrix) else WeightMatrix(W, eps)


@dataclass(frozen=True, eq=False)
class WeightVerdict:
    support_classes: tuple
    twisted_constants: np.ndarray
    flags: dict
    eps: float = DEFAULT_EPS

    @property
    def dimension(self):
        return len(self.support_classes)


@dataclass(frozen=True, eq=False)
class EquivalenceWitness:
    sigma: tuple
    a: np.ndarray
    gamma: np.ndarray

    def apply(self, cc, W):
        """``W'[x, y] = a[x]^-1 gamma[c(x, y)] W[sigma x, sigma y] a[y]``."""
        w = np.asarray(as_weight(W).entries)
        s = np.array(self.sigma)
        moved = w[np.ix_(s, s)]
        return moved * self.gamma[cc.color] * self.a[None, :] / self.a[:, None]


def standard_weight(cc, eps=DEFAULT_EPS):
    return WeightMatrix(np.ones((cc.n, cc.n)), eps)


def trivial_weight(cc, eps=DEFAULT_EPS):
    return WeightMatrix(np.eye(cc.n), eps)


def hadamard_basis(cc, W):
    w = as_weight(W).entries
    return np.stack([w * (cc.color == c) for c in range(cc.r)])


def support_classes(cc, W):
    """Classes inside spt(W); raises a (W1) diagnostic on a split class."""
    W = as_weight(W)
    if W.n != cc.n:
        raise WeightError("shape", f"weight has size {W.n}, configuration has {cc.n} points",
                          None)
    sup = W.support
    inside = []
    for c in range(cc.r):
        cells = np.argwhere(cc.color == c)
        on = sup[cells[:, 0], cells[:, 1]]
        if on.all():
            inside.append(c)
        elif on.any():
            yes = [int(v) for v in cells[np.argmax(on)]]
            no = [int(v) for v in cells[np.argmin(on)]]
            raise WeightError("W1", f"class {c} is split by the support",
                              {"class": c, "cells": [yes, no]})
    return tuple(inside)


def verify_weight(cc, W):
    """Check (W1)-(W3); return the twisted structure constants.

    ``beta[i, j, k]`` satisfies ``A_i^W A_j^W = sum_k beta[i, j, k] A_k^W``.
    """
    W = as_weight(W)
    eps = W.eps
    sup = support_classes(cc, W)
    for c in sup:
        if cc.converse[c] not in sup:
            raise WeightError("W1", f"class {c} is in the support but its converse is not",
                              {"class": c, "converse": cc.converse[c]})
    diag = np.diag(W.entries)
    if np.any(diag == 0):
        x = int(np.argmax(diag == 0))
        raise WeightError("W2", f"diagonal entry at point {x} is zero", {"point": x})

    r = cc.r
    AW = hadamard_basis(cc, W)
    onehot = np.stack([(cc.color == c) for c in range(r)]).astype(float)
    norms = np.einsum("kxy,xy->k", onehot, np.abs(W.entries) ** 2)
    proj = np.conj(AW)
    live = norms > 0
    beta = np.zeros((r, r, r), dtype=complex)
    for i in sup:
        prod = np.einsum("xz,jzy->jxy", AW[i], AW)
        coef = np.zeros((r, r), dtype=complex)
        coef[:, live] = np.einsum("jxy,kxy->jk", prod, proj[live]) / norms[live]
        resid = prod - np.einsum("jk,kxy->jxy", coef, AW)
        worst = np.unravel_index(np.argmax(np.abs(resid)), resid.shape)
        if abs(resid[worst]) >= eps:
            j, x, y = (int(v) for v in worst)
            raise WeightError("W3", f"A_{i}^W A_{j}^W is not in the span of the Hadamard basis",
                              {"pair": [i, j], "cell": [x, y], "residual": float(abs(resid[worst]))})
        coef[np.abs(coef) < eps] = 0
        beta[i] = coef
    flags = {"W1": True, "W2": True, "W3": True}
    return WeightVerdict(sup, beta, flags, eps)


def verify_h_weight(cc, W):
    W = as_weight(W)
    verdict = verify_weight(cc, W)
    w, eps = W.entries, W.eps
    herm = np.abs(w - w.conj().T)
    if herm.max() >= eps:
        x, y = (int(v) for v in np.unravel_index(np.argmax(herm), herm.shape))
        raise WeightError("W4", "not hermitian",
                          {"condition": "hermitian", "cell": [x, y],
                           "values": [_c(w[x, y]), _c(w[y, x])]})
    mod = np.abs(w)
    off = np.where(w != 0, np.abs(mod - 1), 0)
    if off.max() >= eps:
        x, y = (int(v) for v in np.unravel_index(np.argmax(off), off.shape))
        raise WeightError("W4", "nonzero entry without unit modulus",
                          {"condition": "modulus", "cell": [x, y], "modulus": float(mod[x, y])})
    d = np.abs(np.diag(w) - 1)
    if d.max() >= eps:
        x = int(np.argmax(d))
        raise WeightError("W4", "diagonal entry differs from 1",
                          {"condition": "unit diagonal", "cell": [x, x], "value": _c(w[x, x])})
    flags = dict(verdict.flags, W4=True)
    return WeightVerdict(verdict.support_classes, verdict.twisted_constants, flags, verdict.eps)


def _c(z):
    return [float(np.real(z)), float(np.imag(z))]


def algebra_profile(verdict, eps=None):
    """Dimension and center dimension of the twisted adjacency algebra."""
    eps = verdict.eps if eps is None else eps
    sup = list(verdict.support_classes)
    beta = verdict.twisted_constants[np.ix_(sup, sup, sup)]
    # sum_k z_k (beta[k, j, l] - beta[j, k, l]) = 0 for all j, l
    comm = beta - beta.transpose(1, 0, 2)
    system = comm.transpose(1, 2, 0).reshape(-1, len(sup))
    if not sup:
        return {"dimension": 0, "center_dimension": 0}
    # absolute threshold: a commutative algebra gives a system that is zero up to rounding
    sv = np.linalg.svd(system, compute_uv=False)
    tol = max(eps, 1e-12) * max(1.0, np.abs(beta).max())
    return {"dimension": len(sup), "center_dimension": len(sup) - int(np.sum(sv > tol))}


class _EquivalenceSystem:
    """Unknowns: a_1..a_{n-1} (a_0 = 1), then gamma per support class."""

    def __init__(self, cc, sup, unit):
        self.cc = cc
        self.sup = list(sup)
        col = {c: cc.n - 1 + i for i, c in enumerate(self.sup)}
        supset = set(self.sup)
        self.cells = [(x, y) for x in range(cc.n) for y in range(cc.n)
                      if int(cc.color[x, y]) in supset]
        rows = []
        for x, y in self.cells:
            row = np.zeros(cc.n - 1 + len(self.sup), dtype=np.int64)
            row[col[int(cc.color[x, y])]] += 1
            if y:
                row[y - 1] += 1
            if x:
                row[x - 1] -= 1
            rows.append(row)
        self.extra = 0
        if unit:
            # gamma(c*) gamma(c) = 1
            for c in self.sup:
                c2 = cc.converse[c]
                if c2 < c:
                    continue
                row = np.zeros(cc.n - 1 + len(self.sup), dtype=np.int64)
                row[col[c]] += 1
                row[col[c2]] += 1
                rows.append(row)
                self.extra += 1
        self.col = col
        self.unit = unit
        self.system = MultiplicativeSystem(np.array(rows).reshape(len(rows), -1))

    def solve(self, w, w2, sigma, tol):
        s = np.array(sigma)
        moved = w[np.ix_(s, s)]
        xs = np.array([xy[0] for xy in self.cells])
        ys = np.array([xy[1] for xy in self.cells])
        ratio = w2[xs, ys] / moved[xs, ys]
        ratio = np.concatenate([ratio, np.ones(self.extra)])
        sol = self.system.solve(ratio, tol=tol, unit=self.unit)
        if sol is None:
            return None
        a = np.concatenate([[1.0 + 0j], sol[:self.cc.n - 1]])
        gamma = np.ones(self.cc.r, dtype=complex)
        for c, j in self.col.items():
            gamma[c] = sol[j]
        return EquivalenceWitness(tuple(int(v) for v in sigma), a, gamma)


def _equivalent(cc, W, W2, unit, bound):
    W, W2 = as_weight(W), as_weight(W2)
    eps = max(W.eps, W2.eps)
    sup, sup2 = support_classes(cc, W), support_classes(cc, W2)
    if sup != sup2:
        return None
    eq = _EquivalenceSystem(cc, sup, unit)
    w, w2 = W.entries, W2.entries
    for sigma in automorphisms(cc, bound):
        wit = eq.solve(w, w2, sigma, eps)
        if wit is None:
            continue
        if np.max(np.abs(wit.apply(cc, W) - w2)) < eps:
            return wit
    return None


def weight_equivalent(cc, W, W2, bound=DEFAULT_AUT_BOUND):
    """A witness ``(sigma, a, gamma)`` for ``W ~ W2``, or ``None`` if inequivalent."""
    wit = _equivalent(cc, W, W2, False, bound)
    if wit is not None:
        _check_witness(cc, W, W2, wit)
    return wit


def h_weight_equivalent(cc, W, W2, bound=DEFAULT_AUT_BOUND):
    """As :func:`weight_equivalent` with unit-modulus scalars and gamma(c*) = 1/gamma(c)."""
    wit = _equivalent(cc, W, W2, True, bound)
    if wit is not None:
        _check_witness(cc, W, W2, wit)
        eps = as_weight(W).eps
        assert np.max(np.abs(np.abs(wit.a) - 1)) < eps
        sup = list(support_classes(cc, W))
        conv = [cc.converse[c] for c in sup]
        assert np.max(np.abs(wit.gamma[sup] * wit.gamma[conv] - 1), initial=0) < eps
    return wit


def _check_witness(cc, W, W2, wit):
    W, W2 = as_weight(W), as_weight(W2)
    err = np.max(np.abs(wit.apply(cc, W) - W2.entries))
    assert err < max(W.eps, W2.eps), f"witness reproduces W' only to {err}"
    assert support_classes(cc, W) == support_classes(cc, W2)


def perturb(cc, W, sigma, a, gamma):
    """Apply a transformation ``(sigma, a, gamma)`` to ``W``; the result is ``~ W``."""
    wit = EquivalenceWitness(tuple(sigma), np.asarray(a, dtype=complex),
                             np.asarray(gamma, dtype=complex))
    return WeightMatrix(wit.apply(cc, W), as_weight(W).eps)
