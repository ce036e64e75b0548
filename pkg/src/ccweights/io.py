"""Text file formats and JSON encoding.

scheme     ``n r`` then n rows of n class indices
group      ``n`` then n rows of the Cayley table (element 0 is the identity)
permgroup  ``n k`` then k permutations in 0-based one-line notation
weight     ``n`` then n rows of n tokens: ``0``, ``a+bi`` or ``R:k/m``
cocycle    ``n m`` then n rows of n exponents modulo m
character  ``h m`` then h exponents
"""

from __future__ import annotations

import re
from fractions import Fraction

import numpy as np

from .cocycle import RootCochain, RootCocycle
from .config import Configuration, verify_coherent
from .errors import Diagnostic
from .groups import FiniteGroup
from .weights import DEFAULT_EPS, WeightMatrix

FORMAT_VERSION = 1
ROOT_ORDER_LIMIT = 360


class ParseError(Diagnostic):
    def __init__(self, message, line=None, column=None):
        super().__init__("parse", message, {"line": line, "column": column})


def _lines(text):
    out = []
    for i, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append((i, line.split()))
    if not out:
        raise ParseError("empty input", 1, 1)
    return out


def _ints(tokens, lineno, expected=None):
    if expected is not None and len(tokens) != expected:
        raise ParseError(f"expected {expected} values, found {len(tokens)}", lineno, 1)
    out = []
    for col, tok in enumerate(tokens, start=1):
        try:
            out.append(int(tok))
        except ValueError:
            raise ParseError(f"not an integer: {tok!r}", lineno, col) from None
    return out


def _table(lines, n, ncols):
    if len(lines) != n:
        last = lines[-1][0] if lines else 1
        raise ParseError(f"expected {n} rows, found {len(lines)}", last, 1)
    return [_ints(toks, ln, ncols) for ln, toks in lines]


def parse_scheme(text):
    lines = _lines(text)
    n, r = _ints(lines[0][1], lines[0][0], 2)
    color = np.array(_table(lines[1:], n, n)).reshape(n, n)
    return verify_coherent(Configuration(color, r))


def parse_group(text):
    lines = _lines(text)
    (n,) = _ints(lines[0][1], lines[0][0], 1)
    G = FiniteGroup(np.array(_table(lines[1:], n, n)).reshape(n, n))
    if G.identity != 0:
        raise ParseError("element 0 must be the identity", lines[1][0], 1)
    return G


def parse_permgroup(text):
    lines = _lines(text)
    n, k = _ints(lines[0][1], lines[0][0], 2)
    gens = _table(lines[1:], k, n)
    for (ln, _), g in zip(lines[1:], gens):
        if sorted(g) != list(range(n)):
            raise ParseError("not a permutation of 0..n-1", ln, 1)
    return n, [tuple(g) for g in gens]


_ROOT = re.compile(r"^R:(-?\d+)/(\d+)$")


def parse_entry(tok):
    m = _ROOT.match(tok)
    if m:
        k, mm = int(m.group(1)), int(m.group(2))
        if mm <= 0:
            raise ValueError(tok)
        return np.exp(2j * np.pi * (k % mm) / mm)
    if tok == "0":
        return 0j
    return complex(tok.replace("i", "j"))


def parse_weight(text, eps=DEFAULT_EPS):
    lines = _lines(text)
    (n,) = _ints(lines[0][1], lines[0][0], 1)
    if len(lines) - 1 != n:
        raise ParseError(f"expected {n} rows, found {len(lines) - 1}", lines[-1][0], 1)
    w = np.zeros((n, n), dtype=complex)
    for i, (ln, toks) in enumerate(lines[1:]):
        if len(toks) != n:
            raise ParseError(f"expected {n} entries, found {len(toks)}", ln, 1)
        for j, tok in enumerate(toks):
            try:
                w[i, j] = parse_entry(tok)
            except ValueError:
                raise ParseError(f"bad weight entry {tok!r}", ln, j + 1) from None
    return WeightMatrix(w, eps)


def parse_cocycle(text, G):
    lines = _lines(text)
    n, m = _ints(lines[0][1], lines[0][0], 2)
    if n != G.order:
        raise ParseError(f"cocycle is for order {n}, group has order {G.order}", lines[0][0], 1)
    if m < 1:
        raise ParseError("root order must be positive", lines[0][0], 2)
    return RootCocycle(G, m, np.array(_table(lines[1:], n, n)).reshape(n, n))


def parse_character(text):
    lines = _lines(text)
    h, m = _ints(lines[0][1], lines[0][0], 2)
    if len(lines) < 2:
        raise ParseError("missing exponent line", lines[0][0] + 1, 1)
    exps = _ints(lines[1][1], lines[1][0], h)
    return h, m, exps


LOADERS = {
    "scheme": parse_scheme,
    "group": parse_group,
    "permgroup": parse_permgroup,
    "weight": parse_weight,
    "character": parse_character,
}


def load(path, kind, **kw):
    with open(path) as fh:
        text = fh.read()
    if kind == "cocycle":
        return parse_cocycle(text, kw["group"])
    if kind == "weight":
        return parse_weight(text, kw.get("eps", DEFAULT_EPS))
    return LOADERS[kind](text)


def as_root(z, tol=1e-12, limit=ROOT_ORDER_LIMIT):
    """``(k, m)`` with ``z = exp(2 pi i k / m)`` if ``z`` is a root of unity of order <= limit."""
    if abs(abs(z) - 1) > tol:
        return None
    f = Fraction(float(np.angle(z) / (2 * np.pi))).limit_denominator(limit)
    k, m = f.numerator % f.denominator, f.denominator
    if abs(np.exp(2j * np.pi * k / m) - z) < tol:
        return k, m
    return None


def format_entry(z, eps=DEFAULT_EPS):
    z = complex(z)
    if abs(z) < eps:
        return "0"
    root = as_root(z)
    if root is not None:
        return "1" if root[1] == 1 else f"R:{root[0]}/{root[1]}"
    return f"{z.real!r}{z.imag:+.17g}i"


def format_weight(W):
    w = np.asarray(W.entries if isinstance(W, WeightMatrix) else W)
    eps = W.eps if isinstance(W, WeightMatrix) else DEFAULT_EPS
    rows = [" ".join(format_entry(z, eps) for z in row) for row in w]
    return "\n".join([str(w.shape[0])] + rows) + "\n"


def format_scheme(cc):
    color = cc.color
    return "\n".join([f"{cc.n} {cc.r}"] + [" ".join(map(str, row)) for row in color.tolist()]) + "\n"


def format_group(G):
    return "\n".join([str(G.order)] + [" ".join(map(str, r)) for r in G.cayley.tolist()]) + "\n"


def format_cocycle(alpha):
    return "\n".join([f"{alpha.G.order} {alpha.m}"] +
                     [" ".join(map(str, r)) for r in alpha.k.tolist()]) + "\n"


def format_permgroup(n, gens):
    return "\n".join([f"{n} {len(gens)}"] + [" ".join(map(str, g)) for g in gens]) + "\n"


def format_character(m, exps):
    return f"{len(exps)} {m}\n" + " ".join(map(str, exps)) + "\n"


def scalar_json(z):
    z = complex(z)
    root = as_root(z)
    if root is not None:
        return {"root": list(root)}
    return [z.real, z.imag]


def matrix_json(M):
    return [[scalar_json(z) for z in row] for row in np.asarray(M)]


def cocycle_json(alpha):
    if isinstance(alpha, RootCocycle):
        return {"m": alpha.m, "exponents": alpha.k.tolist()}
    return {"values": matrix_json(alpha.values())}


def cochain_json(gamma):
    if isinstance(gamma, RootCochain):
        return {"m": gamma.m, "exponents": [int(v) for v in gamma.c]}
    return {"values": [scalar_json(z) for z in gamma]}


def witness_json(wit):
    if wit is None:
        return None
    return {"sigma": list(wit.sigma), "a": [scalar_json(z) for z in wit.a],
            "gamma": [scalar_json(z) for z in wit.gamma]}


def verdict_json(verdict):
    beta = verdict.twisted_constants
    triples = [[int(i), int(j), int(k), scalar_json(beta[i, j, k])]
               for i, j, k in np.argwhere(beta != 0)]
    return {"support_classes": list(verdict.support_classes), "flags": verdict.flags,
            "beta": triples}


def scheme_json(cc):
    return {"n": cc.n, "r": cc.r, "color": cc.color.tolist(), "converse": list(cc.converse),
            "diagonal_classes": list(cc.diagonal_classes), "homogeneous": cc.homogeneous}
