"""Classifying weights on thin schemes and passing to hermitian form."""

# %%
import numpy as np

from ccweights import (classify_weights, support_subgroup_and_blocks, thin_scheme,
                       to_h_weight, verify_h_weight)
from ccweights.groups import cyclic, klein_four

# %% One weight class per cohomology class, each with its algebra profile.
for name, G in [("Z4", cyclic(4)), ("V4", klein_four())]:
    res = classify_weights(G)
    print(name, len(res), "classes, profiles:", res.profiles)

# %% Every class has a hermitian representative.
G = klein_four()
cc = thin_scheme(G)
for _, W in classify_weights(G).classes:
    Wh, wit, _ = to_h_weight(cc, W)
    verify_h_weight(cc, Wh)
    print(np.round(Wh.entries, 3))

# %% A weight supported on a subgroup splits into cohomologous coset blocks.
W = np.zeros((4, 4), dtype=complex)
for block in ([0, 2], [1, 3]):
    W[np.ix_(block, block)] = 1
dec = support_subgroup_and_blocks(thin_scheme(cyclic(4)), W)
print("subgroup:", dec.subgroup, "blocks:", dec.blocks)
