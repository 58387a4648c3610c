"""Weighted Cauchy products on truncated weighted sequence spaces.

The product ``f * g`` has coefficients
``sum_k delta(n) / (delta(k) delta(n-k)) f(k) g(n-k)``; the package provides
it together with its inverse, the multiplication and shift operators it
induces on weighted lp spaces, the scalar constants that make those spaces
Banach algebras, and exact finite checks of the cyclic-vector and ideal
structure.
"""
from .algebra import (diamond, diamond_i, diamond_power, gelfand, invert, invert_i, solve,
                      spectrum_membership, unity)
from .exceptions import ConvergenceError, KernelInconsistency, NotInvertible, SupportError
from .lattice import (check_unicellularity_conditions, ideal_closure_index, is_cyclic,
                      krylov_profile)
from .operators import (NormBounds, OperatorMatrix, compactness_profile, induced_norm_bounds,
                        k_m_matrix, mult_matrix, shift_apply, shift_matrix)
from .series import FormalSeries, SpaceConfig, lp_norm, min_support, tail
from .weights import (ConditionReport, ScanPolicy, WeightSequence, beta_tilde, diamond_ratio,
                      holder_constant, make_weight_family, p1_product_bound, p1_tail_sum,
                      shift_norm_constant, tail_constant)

__version__ = "0.1.0"
