"""
Inversion and the spectrum
==========================

A series is invertible exactly when its constant term is nonzero, so the
spectrum of f is the single point f(0).
"""
from wcauchy import (FormalSeries, SpaceConfig, diamond, gelfand, invert, lp_norm,
                     spectrum_membership)
from wcauchy.exceptions import NotInvertible

D = 10
cfg = SpaceConfig.build(2.0, "invfactorial", "factorial", D)

# %%
# 1 - z inverts to the series of factorials when delta(n) = n!
f = FormalSeries.from_list([1, -1], D)
g = invert(f, cfg)
print(g.coeffs.real)
print(lp_norm(diamond(f, g, cfg) - FormalSeries.one(D), cfg))

# %%
try:
    invert(FormalSeries.monomial(1, D), cfg)
except NotInvertible as exc:
    print("z is not invertible:", exc)

# %%
# the only character is evaluation at 0
f = FormalSeries.from_list([0.5, 1], D)
print(gelfand(f))
for lam in (0.5, 0.0, 1.0):
    print(lam, spectrum_membership(f, lam, cfg))
