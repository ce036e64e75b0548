"""Coherent configurations: construction, closed subsets and factors."""

# %%
import numpy as np

from ccweights import (ConfigurationError, automorphisms, blocks, closed_subset_check, factor_configuration,
                       schurian_scheme, thin_scheme)
from ccweights.groups import symmetric

# %% The thin scheme of S3: one class per group element, color[x, y] = x^-1 y.
G = symmetric(3)
thin = thin_scheme(G)
print("thin S3:", thin.n, "points,", thin.r, "classes")
print(thin.color)

# %% Orbitals of the prism group give a Schurian scheme on 6 points.
rot = (1, 2, 0, 4, 5, 3)
flip = (3, 5, 4, 0, 2, 1)
prism = schurian_scheme(6, [rot, flip])
print("prism:", prism.r, "classes, valencies", [prism.valency(c) for c in range(prism.r)])
print("regular action, so the scheme is thin:", prism.thin)

# %% A closed subset splits the points into blocks; the factor scheme lives on the blocks.
closed = []
for c in range(1, prism.r):
    try:
        closed_subset_check(prism, (0, c))
        closed.append((0, c))
    except ConfigurationError:
        pass
print("closed subsets of size two:", closed)
D = closed[0]
print("blocks of", D, ":", blocks(prism, D))
fac = factor_configuration(prism, D).quotient
print("factor:", fac.n, "points,", fac.r, "classes")

# %% Not every subset is closed; the diagnostic names an offending triple.
try:
    closed_subset_check(thin, (0, 3))
except ConfigurationError as err:
    print(type(err).__name__, err)

# %% Automorphisms preserve every class.
print("|Aut(prism)| =", len(automorphisms(prism)))
