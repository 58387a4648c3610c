"""
Spectral radius from powers
===========================

The spectrum of f = 0.5 + z is {0.5}, so ||f^(n+1)|| / ||f^n|| must tend to
0.5.  It gets there slowly: the gap shrinks roughly like 1/sqrt(n).
"""
from wcauchy import FormalSeries, SpaceConfig, diamond, lp_norm

D = 400
cfg = SpaceConfig.build(2.0, "invfactorial", "one", D)
f = FormalSeries.from_list([0.5, 1.0], D)

# %%
# power holds f^n; print ||f^(n+1)|| / ||f^n||
power = FormalSeries.one(D)
for n in range(385):
    nxt = diamond(power, f, cfg)
    if n in (12, 24, 48, 96, 192, 384):
        print(n, lp_norm(nxt, cfg) / lp_norm(power, cfg))
    power = nxt
