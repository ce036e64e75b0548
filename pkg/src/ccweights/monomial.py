"""Weights on factor configurations from multiplicity-one characters of a
closed subset.

Given a closed subset D and a rank-one central idempotent e of the adjacency
algebra of D (one copy per block), the compressed algebra e_phi CC e_phi is
identified with matrices on the blocks by reading each block of
e_phi A e_phi against e. Summing one compressed class per factor class gives
the weight.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import eigh, null_space

from .config import (ClosedSubset, blocks, blocks_and_subconfigurations, closed_subset_check,
                     factor_configuration, thin_scheme)
from .errors import BoundExceeded, MonomialError
from .intlinalg import MultiplicativeSystem
from .weights import (DEFAULT_EPS, WeightMatrix, support_classes, verify_h_weight,
                      verify_weight, weight_equivalent)

DEFAULT_BLOCK_BOUND = 64
ALIGN_BOUND = 8


@dataclass(frozen=True, eq=False)
class SemisimpleDecomposition:
    idempotents: list
    coefficients: list
    ranks: list
    degrees: list
    multiplicities: list


def _span_coefficients(sub, P):
    """Cellwise mean of ``P`` on each class; exact for elements of the span."""
    return np.array([P[sub.color == k].mean() for k in range(sub.r)])


def _from_coefficients(sub, coef):
    return np.asarray(coef)[sub.color]


def subalgebra_idempotents(sub, seed=0, eps=DEFAULT_EPS, bound=DEFAULT_BLOCK_BOUND, retries=8):
    """Central primitive idempotents of the adjacency algebra of ``sub``.

    A random hermitian element of the center is diagonalized; its spectral
    projectors are pulled back into the span of the adjacency matrices and
    accepted once each is idempotent, central, and primitive in the center.
    """
    ell = sub.n
    if ell > bound:
        raise BoundExceeded("block size", ell, bound)
    A = sub.adjacency_stack().astype(float)
    comm = sub.p - sub.p.transpose(1, 0, 2)
    center = null_space(comm.transpose(1, 2, 0).reshape(-1, sub.r).astype(float))
    zmats = np.einsum("kb,kxy->bxy", center, A)
    for attempt in range(retries):
        rng = np.random.default_rng(seed + attempt)
        t = rng.normal(size=center.shape[1]) + 1j * rng.normal(size=center.shape[1])
        Z = np.einsum("b,bxy->xy", t, zmats)
        evals, evecs = eigh(Z + Z.conj().T)
        groups, start = [], 0
        scale = max(1.0, np.abs(evals).max())
        for i in range(1, ell + 1):
            if i == ell or evals[i] - evals[i - 1] > 1e-6 * scale:
                groups.append(slice(start, i))
                start = i
        found = []
        ok = True
        for g in groups:
            V = evecs[:, g]
            coef = _span_coefficients(sub, V @ V.conj().T)
            P = _from_coefficients(sub, coef)
            if (np.abs(P @ P - P).max() > eps
                    or max(np.abs(P @ a - a @ P).max() for a in A) > eps
                    or not _primitive_in_center(P, zmats, eps)):
                ok = False
                break
            found.append((coef, P))
        if ok and np.abs(sum(P for _, P in found) - np.eye(ell)).max() < eps:
            break
    else:
        raise MonomialError("idempotents", "eigenvalue clustering stayed ambiguous after "
                            f"{retries} seeds", {"seed": seed})
    out = []
    for coef, P in found:
        rank = int(round(np.trace(P).real))
        span = np.stack([(P @ a).ravel() for a in A])
        deg2 = np.linalg.matrix_rank(span, tol=1e-7)
        deg = int(round(np.sqrt(deg2)))
        out.append((rank, tuple(np.round(coef.real, 9)), tuple(np.round(coef.imag, 9)),
                    coef, P, deg))
    out.sort(key=lambda t: t[:3])
    return SemisimpleDecomposition(
        idempotents=[t[4] for t in out],
        coefficients=[t[3] for t in out],
        ranks=[t[0] for t in out],
        degrees=[t[5] for t in out],
        multiplicities=[t[0] // t[5] for t in out])


def _primitive_in_center(P, zmats, eps):
    for z in zmats:
        Q = P @ z
        lam = np.trace(Q) / max(np.trace(P).real, 1e-300)
        if np.abs(Q - lam * P).max() > max(eps, 1e-7):
            return False
    return True


@dataclass(frozen=True, eq=False)
class AlignedIdempotent:
    e: np.ndarray
    blocks: list
    e_phi: np.ndarray
    D: ClosedSubset
    coefficients: dict = field(default_factory=dict)
    exact: dict = None


def _check_aligned(cc, D, e, parts, eps):
    ell = e.shape[0]
    if np.abs(e @ e - e).max() > eps:
        raise MonomialError("idempotent", "e is not idempotent", None)
    if abs(np.trace(e) - 1) > eps or np.linalg.matrix_rank(e, tol=1e-7) != 1:
        raise MonomialError("multiplicity", "block idempotent does not have rank 1",
                            {"trace": [float(np.trace(e).real), float(np.trace(e).imag)]})
    if np.abs(e - e.conj().T).max() > eps:
        raise MonomialError("hermitian", "block idempotent is not hermitian", None)
    e_phi = np.zeros((cc.n, cc.n), dtype=complex)
    for b in parts:
        if len(b) != ell:
            raise MonomialError("blocks", "block sizes differ from the idempotent size", None)
        e_phi[np.ix_(b, b)] = e
    coef = {}
    recon = np.zeros_like(e_phi)
    for d in D.classes:
        mask = cc.color == d
        coef[d] = complex(e_phi[mask].mean())
        recon[mask] = coef[d]
    if np.abs(recon - e_phi).max() > eps:
        raise MonomialError("span", "e_phi is not in the span of the adjacency matrices of D",
                            {"residual": float(np.abs(recon - e_phi).max())})
    return e_phi, coef


def linear_character_idempotent(cc, H, phi, m, eps=DEFAULT_EPS):
    """Exact ``e = |H|^-1 sum_h phi(h)^-1 A_h`` for a linear character of a subgroup.

    ``cc`` is the thin configuration of G, ``H`` the subgroup's elements and
    ``phi[i]`` the exponent of ``phi(h_i) = exp(2 pi i phi[i] / m)`` for the
    i-th smallest element of ``H``.
    """
    G = cc.group
    if G is None:
        raise MonomialError("thin", "configuration carries no group", None)
    H = sorted(int(h) for h in H)
    if not G.is_subgroup(H):
        raise MonomialError("subgroup", "H is not a subgroup", H)
    if len(phi) != len(H):
        raise MonomialError("character", f"need {len(H)} exponents, got {len(phi)}", None)
    val = {h: int(k) % m for h, k in zip(H, phi)}
    for a in H:
        for b in H:
            if (val[a] + val[b] - val[G.mul(a, b)]) % m:
                raise MonomialError("character", "phi is not a homomorphism",
                                    {"pair": [a, b]})
    D = closed_subset_check(cc, H)
    exact = {h: ((-val[h]) % m, m) for h in H}
    parts = blocks(cc, D)
    e_phi = np.zeros((cc.n, cc.n), dtype=complex)
    for h in H:
        e_phi += np.exp(-2j * np.pi * val[h] / m) / len(H) * (cc.color == h)
    b0 = parts[0]
    e = e_phi[np.ix_(b0, b0)]
    for b in parts:
        if np.abs(e_phi[np.ix_(b, b)] - e).max() > eps:
            raise MonomialError("align", "coset blocks are not aligned", {"block": list(b)})
    e_phi2, coef = _check_aligned(cc, D, e, parts, eps)
    assert np.abs(e_phi2 - e_phi).max() < eps
    return AlignedIdempotent(e, parts, e_phi, D, coef, exact)


def multiplicity_one_idempotents(cc, D, seed=0, eps=DEFAULT_EPS):
    """Per-block restrictions of the rank-one central idempotents of CD.

    Returns a list of ``(blocks, per_block_idempotents)`` choices, one per
    irreducible character of D of multiplicity one and degree one.
    """
    D = D if isinstance(D, ClosedSubset) else closed_subset_check(cc, D)
    parts, subs = blocks_and_subconfigurations(cc, D)
    dec = subalgebra_idempotents(subs[0], seed=seed, eps=eps)
    out = []
    for rank, coef in zip(dec.ranks, dec.coefficients):
        if rank != 1:
            continue
        full = np.zeros((cc.n, cc.n), dtype=complex)
        for i, d in enumerate(D.classes):
            full[cc.color == d] = coef[i]
        out.append((parts, [full[np.ix_(b, b)] for b in parts]))
    return out


def _match_permutation(target, e, eps):
    """pi with ``e[pi[a], pi[b]] = target[a, b]``, by backtracking."""
    ell = target.shape[0]
    pi = [-1] * ell
    used = [False] * ell

    def extend(a):
        if a == ell:
            return True
        for y in range(ell):
            if used[y] or abs(e[y, y] - target[a, a]) > eps:
                continue
            if any(abs(e[pi[b], y] - target[b, a]) > eps or abs(e[y, pi[b]] - target[a, b]) > eps
                   for b in range(a)):
                continue
            pi[a] = y
            used[y] = True
            if extend(a + 1):
                return True
            used[y] = False
        pi[a] = -1
        return False

    return pi if extend(0) else None


def align_blocks(cc, D, parts, idempotents, eps=DEFAULT_EPS):
    """Reorder points inside blocks 2..m so every block idempotent equals block 1's."""
    D = D if isinstance(D, ClosedSubset) else closed_subset_check(cc, D)
    e = np.asarray(idempotents[0], dtype=complex)
    aligned = [tuple(parts[0])]
    for b, ei in zip(parts[1:], idempotents[1:]):
        ei = np.asarray(ei, dtype=complex)
        if np.abs(ei - e).max() <= eps:
            aligned.append(tuple(b))
            continue
        if len(b) > ALIGN_BOUND:
            raise BoundExceeded("block size for alignment", len(b), ALIGN_BOUND)
        pi = _match_permutation(e, ei, eps)
        if pi is None:
            raise MonomialError(
                "align", "no reordering inside the block makes its idempotent equal to the "
                "first block's; the character does not behave as a character of a cyclic "
                "group here", {"block": list(b)})
        aligned.append(tuple(b[i] for i in pi))
    e_phi, coef = _check_aligned(cc, D, e, aligned, eps)
    return AlignedIdempotent(e, aligned, e_phi, D, coef)


def gamma_compress(aligned, A, eps=DEFAULT_EPS):
    """Scalars ``a_ij`` with ``e A_ij e = a_ij e`` on every pair of blocks."""
    e = aligned.e
    A = np.asarray(A)
    m = len(aligned.blocks)
    out = np.zeros((m, m), dtype=complex)
    for i, bi in enumerate(aligned.blocks):
        for j, bj in enumerate(aligned.blocks):
            C = e @ A[np.ix_(bi, bj)] @ e
            a = np.trace(C)
            if np.abs(C - a * e).max() > eps:
                raise MonomialError("compress", "compressed block is not a multiple of e",
                                    {"blocks": [i, j],
                                     "residual": float(np.abs(C - a * e).max())})
            out[i, j] = a
    return out


@dataclass(frozen=True, eq=False)
class MonomialWeightResult:
    W: WeightMatrix
    factor: object
    representatives: list
    scalar_table: dict
    ratios: dict
    verdict: object
    residuals: dict


def _zero_threshold(ell):
    return 100 * np.finfo(float).eps * ell


def monomial_weight(cc, D, aligned, eps=DEFAULT_EPS):
    """The weight ``sum_lambda Gamma(e_phi A_{c_lambda} e_phi)`` on the factor configuration."""
    if not cc.homogeneous:
        raise MonomialError("homogeneous", "configuration must be homogeneous", None)
    D = D if isinstance(D, ClosedSubset) else closed_subset_check(cc, D)
    fac = factor_configuration(cc, D)
    if [set(b) for b in fac.blocks] != [set(b) for b in aligned.blocks]:
        raise MonomialError("blocks", "idempotent blocks do not match the factor blocks", None)
    ep = aligned.e_phi
    ell = aligned.e.shape[0]
    zero = _zero_threshold(ell)
    E = [ep @ cc.adjacency(c) @ ep for c in range(cc.r)]
    nonzero = [np.abs(x).max() >= zero for x in E]

    herm = max(np.abs(E[cc.converse[c]] - E[c].conj().T).max() for c in range(cc.r))
    if herm > eps:
        raise MonomialError("hermitian", "e_phi A_c* e_phi differs from (e_phi A_c e_phi)*",
                            {"residual": float(herm)})

    qr = fac.quotient.r
    reps, ratios, prop = [None] * qr, {}, 0.0
    for q in range(qr):
        members = [c for c in range(cc.r) if fac.class_quotient[c] == q]
        for c in members:
            if nonzero[c]:
                reps[q] = c
                break
        if reps[q] is None:
            for c in members:
                ratios[c] = 0j
            continue
        base = E[reps[q]]
        for c in members:
            mu = np.vdot(base, E[c]) / np.vdot(base, base)
            res = np.abs(E[c] - mu * base).max()
            prop = max(prop, res)
            if res > eps:
                raise MonomialError("proportionality", "compressed classes in one factor class are not "
                                    "proportional", {"classes": [reps[q], c],
                                                     "residual": float(res)})
            ratios[c] = complex(mu)

    tables = {}
    W = np.zeros((fac.m, fac.m), dtype=complex)
    for q, c in enumerate(reps):
        if c is None:
            continue
        tables[c] = gamma_compress(aligned, cc.adjacency(c), eps)
        W += tables[c]
    W[np.abs(W) < zero] = 0
    Wm = WeightMatrix(W, eps)
    verdict = verify_weight(fac.quotient, Wm)

    live = [c for c in reps if c is not None]
    stacked = np.stack([x.ravel() for x in E])
    basis_rank = int(np.linalg.matrix_rank(stacked, tol=1e-7))
    if basis_rank != len(live):
        raise MonomialError("basis", "representatives do not form a basis of e_phi CC e_phi",
                            {"rank": basis_rank, "representatives": len(live)})
    hom = 0.0
    for a in live:
        for b in live:
            lhs = tables[a] @ tables[b]
            rhs = gamma_compress(aligned, cc.adjacency(a) @ ep @ cc.adjacency(b), eps)
            hom = max(hom, np.abs(lhs - rhs).max())
    residuals = {"proportionality": float(prop), "hermitian_transport": float(herm),
                 "homomorphism": float(hom), "basis_rank": basis_rank}
    return MonomialWeightResult(Wm, fac, reps, tables, ratios, verdict, residuals)


def _unit_rescale(qcc, W, eps):
    """Per-class (then diagonal) scalars making ``W`` an H-weight, or ``None``."""
    w = W.entries
    sup = list(support_classes(qcc, W))
    gamma = np.ones(qcc.r, dtype=complex)
    per_class = True
    for q in sup:
        mods = np.abs(w[qcc.color == q])
        if mods.max() - mods.min() > eps:
            per_class = False
            break
        gamma[q] = 1 / mods[0]
    a = np.ones(qcc.n, dtype=complex)
    if not per_class:
        cells = [(x, y) for x in range(qcc.n) for y in range(qcc.n) if w[x, y] != 0]
        col = {c: qcc.n - 1 + i for i, c in enumerate(sup)}
        rows = []
        for x, y in cells:
            row = np.zeros(qcc.n - 1 + len(sup), dtype=np.int64)
            row[col[int(qcc.color[x, y])]] += 1
            if y:
                row[y - 1] += 1
            if x:
                row[x - 1] -= 1
            rows.append(row)
        sol = MultiplicativeSystem(np.array(rows)).solve(
            [1 / abs(w[x, y]) for x, y in cells], tol=eps)
        if sol is None:
            return None
        sol = np.abs(sol)
        a = np.concatenate([[1.0], sol[:qcc.n - 1]]).astype(complex)
        for c, j in col.items():
            gamma[c] = sol[j]
    w1 = w * gamma[qcc.color] * a[None, :] / a[:, None]
    for q in sup:
        q2 = qcc.converse[q]
        if q2 < q:
            continue
        xs, ys = np.nonzero(qcc.color == q)
        mu = w1[ys, xs] / np.conj(w1[xs, ys])
        if np.abs(mu - mu[0]).max() > eps:
            return None
        if q2 == q:
            s = 1 / np.sqrt(mu[0])
            gamma[q] *= s
            w1[qcc.color == q] *= s
        else:
            gamma[q2] /= mu[0]
            w1[qcc.color == q2] /= mu[0]
    return w1


@dataclass(frozen=True, eq=False)
class Example24Result:
    monomial: MonomialWeightResult
    W: WeightMatrix
    witness: object
    verdict: object

    @property
    def factor(self):
        return self.monomial.factor


def example24_weight(G, H, phi, m, eps=DEFAULT_EPS):
    """H-weight on the configuration of G acting on cosets of H, from a linear
    character ``phi`` of H (exponents over ``m``, elements of H in sorted order)."""
    cc = thin_scheme(G)
    aligned = linear_character_idempotent(cc, H, phi, m, eps)
    res = monomial_weight(cc, aligned.D, aligned, eps)
    qcc = res.factor.quotient
    w1 = _unit_rescale(qcc, res.W, eps)
    if w1 is None:
        raise MonomialError("H-weight", "the monomial weight cannot be rescaled to unit "
                            "modulus within its equivalence class", None)
    Wh = WeightMatrix(w1, eps)
    verdict = verify_h_weight(qcc, Wh)
    wit = weight_equivalent(qcc, res.W, Wh)
    if wit is None:
        raise MonomialError("H-weight", "rescaled weight is not equivalent to the original", None)
    return Example24Result(res, Wh, wit, verdict)
