"""Weights on homogeneous coherent configurations."""

from .cocycle import (ComplexCocycle, RootCochain, RootCocycle, classify_weights, coboundary,
                      cocycle_from_weight, cocycle_group_Zn, cocycle_scaling, cohomologous,
                      complex_coboundary, exactify, h2_over_C, is_coboundary_mod,
                      is_coboundary_over_C, make_unimodular, normalize_cocycle,
                      support_subgroup_and_blocks, to_h_weight, verify_cocycle,
                      weight_from_cocycle)
from .config import (Configuration, CoherentConfiguration, automorphisms, blocks,
                     blocks_and_subconfigurations, closed_subset_check, factor_configuration,
                     schurian_scheme, thin_scheme, verify_coherent)
from .errors import (BoundExceeded, CocycleError, ConfigurationError, Diagnostic, MonomialError,
                     WeightError)
from .groups import FiniteGroup
from .monomial import (align_blocks, example24_weight, gamma_compress,
                       linear_character_idempotent, monomial_weight,
                       multiplicity_one_idempotents, subalgebra_idempotents)
from .weights import (WeightMatrix, algebra_profile, h_weight_equivalent, perturb,
                      standard_weight, trivial_weight, verify_h_weight, verify_weight,
                      weight_equivalent)

__version__ = "0.1.0"
