"""Weights from multiplicity-one characters of a closed subset."""

# %%
import numpy as np

from ccweights import (example24_weight, linear_character_idempotent, monomial_weight,
                       thin_scheme, verify_weight, weight_equivalent)
from ccweights.groups import symmetric

# %% Thin S3, the closed subset of a transposition, and its sign character.
G = symmetric(3)
cc = thin_scheme(G)
al = linear_character_idempotent(cc, [0, 1], [0, 1], 2)
res = monomial_weight(cc, al.D, al)
fac = res.factor.quotient
print("factor scheme:", fac.n, "points,", fac.r, "classes")
print(np.round(res.W.entries, 3))
print("residuals:", res.residuals)
print("dimension:", verify_weight(fac, res.W).dimension)

# %% The induced-character construction gives an equivalent weight.
ex = example24_weight(G, [0, 1], [0, 1], 2)
print(np.round(ex.W.entries, 3))
print("equivalent:", weight_equivalent(fac, res.W, ex.W) is not None)
