"""Weights: axioms, twisted structure constants and equivalence."""

# %%
import numpy as np

from ccweights import (algebra_profile, perturb, standard_weight, thin_scheme, verify_weight,
                       weight_equivalent, weight_from_cocycle)
from ccweights.cocycle import h2_over_C
from ccweights.groups import klein_four

# %% The standard weight is all ones; its twisted constants are the intersection numbers.
G = klein_four()
cc = thin_scheme(G)
W1 = standard_weight(cc)
v = verify_weight(cc, W1)
print("beta == p:", np.array_equal(v.twisted_constants, cc.p.astype(complex)))
print("profile:", algebra_profile(v))

# %% The nontrivial class of H^2(V4, C*) twists the algebra into a noncommutative one.
_, alpha = list(h2_over_C(G).elements())[1]
Wt = weight_from_cocycle(alpha)
print(np.round(Wt.entries, 3))
print("profile:", algebra_profile(verify_weight(cc, Wt)))

# %% Rescale points, relabel by an automorphism, twist classes: equivalence recovers a witness.
rng = np.random.default_rng(1)
a = rng.uniform(0.5, 2, cc.n) * np.exp(2j * np.pi * rng.uniform(size=cc.n))
gamma = np.exp(2j * np.pi * rng.uniform(size=cc.r))
W2 = perturb(cc, Wt, (0, 2, 1, 3), a, gamma)
wit = weight_equivalent(cc, Wt, W2)
print("witness found:", wit is not None)
print("residual:", np.abs(wit.apply(cc, Wt) - W2.entries).max())
print("standard ~ twisted:", weight_equivalent(cc, W1, Wt) is not None)
