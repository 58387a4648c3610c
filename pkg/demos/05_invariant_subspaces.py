"""
Invariant subspaces of the weighted shift
=========================================

Iterating the shift on f produces columns whose leading degrees climb one at
a time from the first nonzero coefficient of f.  On a truncation that echelon
shape says exactly which subspace f generates.
"""
import numpy as np

from wcauchy import (FormalSeries, ScanPolicy, SpaceConfig, ideal_closure_index, is_cyclic,
                     krylov_profile, make_weight_family)
from wcauchy.lattice import check_unicellularity_conditions

D = 8
cfg = SpaceConfig.build(2.0, "invfactorial", "one", D)

# %%
f = FormalSeries.from_list([0, 0, 1, 1], D)
prof = krylov_profile(f, D - 2, cfg)
print(prof.leading_indices, prof.rank)
print(np.abs(prof.matrix).round(3))
print(is_cyclic(f, cfg), ideal_closure_index(f, cfg))

# %%
# a nonzero constant term makes f cyclic
print(is_cyclic(f + 1, cfg), ideal_closure_index(f + 1, cfg))

# %%
# numerical evidence for the hypotheses behind the classification
one = make_weight_family("one", 2048)
for family in ("invfactorial", "poly:2"):
    rows = check_unicellularity_conditions(make_weight_family(family, 2048), one, 1,
                                           ScanPolicy(), k_max=2)
    for row in rows:
        print(family, row.i, row.verdict, [(t.k, t.trend, round(t.last, 6)) for t in row.tails])
