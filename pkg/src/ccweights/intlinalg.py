"""Integer linear algebra: Smith normal form, kernels and linear systems over Z/m,
finite abelian quotients, and multiplicative systems over the nonzero complex numbers.

All integer work uses numpy object arrays of Python ints, so there is no overflow.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

import numpy as np


def _eye(n):
    out = np.zeros((n, n), dtype=object)
    for i in range(n):
        out[i, i] = 1
    return out


def _as_int_matrix(A):
    A = np.asarray(A)
    out = np.empty(A.shape, dtype=object)
    for idx in np.ndindex(A.shape):
        out[idx] = int(A[idx])
    return out


def smith_normal_form(A, want_u=False, want_v=True):
    """Diagonalize an integer matrix by unimodular row and column operations.

    Returns ``(d, U, V, Vinv)`` where ``d`` lists the nonzero invariant factors
    ``d[0] | d[1] | ...`` and ``U @ A @ V`` is the rectangular matrix with ``d``
    on its diagonal. ``U`` is ``None`` unless ``want_u``; ``V`` and ``Vinv`` are
    ``None`` unless ``want_v``.
    """
    A = _as_int_matrix(A).copy()
    R, C = A.shape
    U = _eye(R) if want_u else None
    V = _eye(C) if want_v else None
    Vinv = _eye(C) if want_v else None

    def swap_rows(i, j):
        if i != j:
            A[[i, j], :] = A[[j, i], :]
            if U is not None:
                U[[i, j], :] = U[[j, i], :]

    def swap_cols(i, j):
        if i != j:
            A[:, [i, j]] = A[:, [j, i]]
            if V is not None:
                V[:, [i, j]] = V[:, [j, i]]
                Vinv[[i, j], :] = Vinv[[j, i], :]

    d = []
    t = 0
    while t < min(R, C):
        nz = np.argwhere(A[t:, t:] != 0)
        if len(nz) == 0:
            break
        k = min(range(len(nz)), key=lambda idx: abs(A[t + nz[idx][0], t + nz[idx][1]]))
        swap_rows(t, t + int(nz[k][0]))
        swap_cols(t, t + int(nz[k][1]))
        while True:
            p = A[t, t]
            col = A[t + 1:, t]
            if np.any(col != 0):
                q = col // p
                A[t + 1:, t:] -= np.outer(q, A[t, t:])
                if U is not None:
                    U[t + 1:, :] -= np.outer(q, U[t, :])
            row = A[t, t + 1:]
            if np.any(row != 0):
                q = row // p
                A[t:, t + 1:] -= np.outer(A[t:, t], q)
                if V is not None:
                    V[:, t + 1:] -= np.outer(V[:, t], q)
                    Vinv[t, :] += q.dot(Vinv[t + 1:, :])
            rest = [(i, t) for i in range(t + 1, R) if A[i, t] != 0]
            rest += [(t, j) for j in range(t + 1, C) if A[t, j] != 0]
            if rest:
                i, j = min(rest, key=lambda ij: abs(A[ij]))
                if j == t:
                    swap_rows(t, i)
                else:
                    swap_cols(t, j)
                continue
            bad = np.argwhere(A[t + 1:, t + 1:] % p != 0)
            if len(bad):
                i = t + 1 + int(bad[0][0])
                A[t, :] += A[i, :]
                if U is not None:
                    U[t, :] += U[i, :]
                continue
            break
        if A[t, t] < 0:
            A[t, :] = -A[t, :]
            if U is not None:
                U[t, :] = -U[t, :]
        d.append(int(A[t, t]))
        t += 1
    return d, U, V, Vinv


def dedup_rows(A):
    """Drop zero rows and repeated rows (row operations do not change kernels)."""
    A = np.asarray(A, dtype=np.int64)
    A = A[np.any(A != 0, axis=1)]
    if len(A) == 0:
        return A
    return np.unique(A, axis=0)


@dataclass
class ModKernel:
    """``ker(A mod m)`` as a direct sum of cyclic groups.

    ``gens[i]`` has order ``orders[i]``; :meth:`coords` expresses a kernel
    element in these generators.
    """
    m: int
    gens: list
    orders: list
    _rows: np.ndarray
    _scale: list

    def coords(self, x):
        x = np.asarray([int(v) % self.m for v in x], dtype=object)
        out = []
        for row, s, o in zip(self._rows, self._scale, self.orders):
            y = int(row.dot(x)) % self.m
            if y % s:
                raise ValueError("vector is not in the kernel")
            out.append((y // s) % o)
        return out


def kernel_mod(A, m):
    A = dedup_rows(A)
    ncols = A.shape[1]
    d, _, V, Vinv = smith_normal_form(A)
    gens, orders, rows, scale = [], [], [], []
    for i in range(ncols):
        s = d[i] if i < len(d) else 0
        g = gcd(s, m)
        if g == 1:
            continue
        sc = m // g
        gens.append(np.array([int(v) * sc % m for v in V[:, i]], dtype=np.int64))
        orders.append(g)
        rows.append(Vinv[i, :])
        scale.append(sc)
    return ModKernel(m, gens, orders, np.array(rows, dtype=object).reshape(len(rows), ncols), scale)


def solve_mod(A, b, M):
    """One solution of ``A x = b (mod M)`` as int64 array, or ``None``."""
    A = _as_int_matrix(A)
    R, C = A.shape
    d, U, V, _ = smith_normal_form(A, want_u=True)
    rhs = U.dot(_as_int_matrix(np.asarray(b).reshape(-1, 1)).reshape(-1))
    y = [0] * C
    for i in range(R):
        bi = int(rhs[i]) % M
        if i < len(d):
            g = gcd(d[i], M)
            if bi % g:
                return None
            mm = M // g
            y[i] = (bi // g) * pow(d[i] // g, -1, mm) % mm if mm > 1 else 0
        elif bi:
            return None
    x = V.dot(np.array(y, dtype=object))
    return np.array([int(v) % M for v in x], dtype=np.int64)


def abelian_quotient(orders, relations):
    """Structure of ``(Z/o_1 + ... + Z/o_k) / <relations>``.

    Returns ``(factors, combos)``: invariant factors > 1 in divisibility order and,
    for each, an integer vector of generator exponents giving an element of that
    exact order that together with the others decomposes the quotient.
    """
    k = len(orders)
    if k == 0:
        return [], []
    rows = [[o if j == i else 0 for j in range(k)] for i, o in enumerate(orders)]
    rows += [[int(v) for v in r] for r in relations]
    d, _, _, Vinv = smith_normal_form(np.array(rows, dtype=object))
    factors, combos = [], []
    for j in range(k):
        dj = d[j] if j < len(d) else 0
        if dj == 1:
            continue
        if dj == 0:
            raise ValueError("quotient is infinite")
        factors.append(dj)
        combos.append([int(v) % o for v, o in zip(Vinv[j, :], orders)])
    return factors, combos


class MultiplicativeSystem:
    """Solve ``prod_j x_j ** M[i, j] = v_i`` for nonzero complex ``x``.

    ``M`` is a fixed small integer matrix; the right-hand side may change between
    calls. Moduli are solved as a real linear system and phases as a linear
    system over R/Z, both through one Smith normal form of ``M``.
    """

    def __init__(self, M):
        self.M = np.asarray(M, dtype=np.int64)
        self.d, self.U, self.V, _ = smith_normal_form(self.M, want_u=True)
        self._Uf = np.array(self.U, dtype=float)
        self._Vf = np.array(self.V, dtype=float)

    def _particular(self, rhs):
        z = self._Uf @ rhs
        y = np.zeros(self.M.shape[1])
        r = len(self.d)
        y[:r] = z[:r] / np.array(self.d, dtype=float)
        return self._Vf @ y

    def solve(self, values, tol=1e-9, unit=False):
        """Return ``x`` or ``None``. With ``unit`` every ``|x_j| = 1`` is enforced."""
        values = np.asarray(values, dtype=complex)
        if np.any(np.abs(values) == 0):
            return None
        logmod = np.log(np.abs(values))
        phase = np.angle(values) / (2 * np.pi)
        if unit:
            if np.max(np.abs(logmod), initial=0.0) > tol:
                return None
            u = np.zeros(self.M.shape[1])
        else:
            u = self._particular(logmod)
            if np.max(np.abs(self.M @ u - logmod), initial=0.0) > tol:
                return None
        theta = self._particular(phase)
        res = self.M @ theta - phase
        res -= np.round(res)
        if np.max(np.abs(res), initial=0.0) > tol:
            return None
        return np.exp(u + 2j * np.pi * theta)
