"""
Weighted products of power series
=================================

Two choices of the weight sequence delta recover familiar products: delta = 1
is the ordinary Cauchy product, delta(n) = n! the binomial convolution.
"""
import numpy as np

from wcauchy import FormalSeries, SpaceConfig, diamond, diamond_i, unity
from wcauchy.oracle import binomial_convolution

# %%
# (1 + z)^2 under the plain product
D = 6
plain = SpaceConfig.build(2.0, "one", "one", D)
f = FormalSeries.from_list([1, 1], D)
print(diamond(f, f, plain).coeffs.real)

# %%
# the same square with factorial weights picks up binomial coefficients
fac = SpaceConfig.build(2.0, "one", "factorial", D)
print(diamond(f, f, fac).coeffs.real)

# random series agree with the binomial formula
rng = np.random.default_rng(7)
g = FormalSeries(rng.standard_normal(D + 1))
h = FormalSeries(rng.standard_normal(D + 1))
print(np.max(np.abs(diamond(g, h, fac).coeffs - binomial_convolution(g, h, D).coeffs)))

# %%
# the restricted product on series starting at z^2 has unity delta(2) z^2
e = unity(2, fac.delta, D)
k = FormalSeries.from_list([0, 0, 3, -1, 4], D)
print(e.coeffs.real)
print(diamond_i(e, k, 2, fac).coeffs.real)
