"""
Multiplication operators and their finite-rank approximants
===========================================================

Multiplication by f is a lower-triangular matrix in the monomial basis.  When
f(0) = 0 and the weights decay fast enough it is a norm limit of finite-rank
pieces, i.e. compact.
"""
from wcauchy import FormalSeries, SpaceConfig
from wcauchy.operators import (compactness_profile, induced_norm_bounds, mult_matrix,
                               shift_matrix)

cfg = SpaceConfig.build(2.0, "invfactorial", "one", 64, n_max=2048)
z = FormalSeries.monomial(1, 64)

# %%
A = mult_matrix(z, cfg)
print(A.entries[:5, :5].real)
print(induced_norm_bounds(A, cfg))

# %%
# powers of the shift have norm given by a sup over single-coefficient gains
for N in (1, 2, 3):
    print(N, induced_norm_bounds(shift_matrix(N, cfg), cfg))

# %%
# distance to the rank-(M+1) approximant is 1/(M+2) for f = z, under the a-priori bound
for row in compactness_profile(z, 0, [1, 2, 4, 8, 16], cfg):
    print(row.M, row.measured.upper, 1 / (row.M + 2), row.lemma_bound)
