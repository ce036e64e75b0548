"""Second cohomology with coefficients in C*, and cocycle hygiene."""

# %%
import numpy as np

from ccweights import (ComplexCocycle, complex_coboundary, h2_over_C, make_unimodular,
                       normalize_cocycle)
from ccweights.cocycle import exactify
from ccweights.groups import cyclic, dihedral, klein_four, quaternion, symmetric

# %% Schur multipliers of a few small groups.
for name, G in [("Z4", cyclic(4)), ("V4", klein_four()), ("S3", symmetric(3)),
                ("D4", dihedral(4)), ("Q8", quaternion())]:
    print(f"H^2({name}, C*) invariant factors:", h2_over_C(G).invariant_factors)

# %% Each class has a root-of-unity representative; normalization makes it exact and tidy.
G = klein_four()
for label, alpha in h2_over_C(G).elements():
    beta, _ = normalize_cocycle(alpha)
    print(label, "m =", beta.m)
    print(beta.k)

# %% Positive coboundaries are stripped off exactly.
rng = np.random.default_rng(2)
_, rep = list(h2_over_C(G).elements())[-1]
noisy = ComplexCocycle(G, rep.values() * complex_coboundary(G, rng.uniform(0.1, 10, G.order)))
unit, _ = make_unimodular(noisy)
print("max | |beta| - 1 |:", np.abs(np.abs(unit.values()) - 1).max())
print("exact form:", exactify(unit, m=rep.m).k.tolist())
