"""
Condition constants
===================

Whether a weighted lp space is an algebra under the product comes down to a
few sequence constants.  They are suprema and sums over all n, so the library
scans a finite range and reports whether the value has settled.
"""
from wcauchy import (ScanPolicy, holder_constant, make_weight_family, p1_product_bound,
                     p1_tail_sum, shift_norm_constant, tail_constant)

scan = ScanPolicy(n_max=2048)
one = make_weight_family("one", 2048)
inv = make_weight_family("invfactorial", 2048)

# %%
# the Hoelder constant for beta(n) = 1/n! peaks at n = 2
print(holder_constant(inv, one, 2.0, 0, scan))

# constant weights give (n+1) at every n, which never settles
print(holder_constant(make_weight_family("geometric:2", 2048), one, 2.0, 0, scan))

# %%
# tail constants decay like 1/(M+2) for k = 1
for M in (1, 4, 16, 64):
    print(M, tail_constant(inv, one, M, 1, 0, scan).value)

# %%
# for p = 1 the double tail is harmonic at N = 0 and summable from N = 1
print(p1_tail_sum(inv, one, 0, 0, scan))
print(p1_tail_sum(inv, one, 1, 0, scan))
print(shift_norm_constant(inv, one, 1, scan).value)
print(p1_product_bound(inv, one, 1, scan))
