import math
from fractions import Fraction

import numpy as np
import pytest

from wcauchy import (ScanPolicy, beta_tilde, diamond_ratio, holder_constant,
                     make_weight_family, p1_product_bound, p1_tail_sum,
                     shift_norm_constant, tail_constant)
from wcauchy.exceptions import ConvergenceError
from wcauchy.weights import WeightSequence, diamond_ratio_table

FAMILIES = ["one", "poly:2", "poly:0.5", "geometric:2", "geometric:0.5",
            "factorial", "invfactorial"]


def exact_weight(family, n):
    tag, _, arg = family.partition(":")
    if tag == "one":
        return Fraction(1)
    if tag == "factorial":
        return Fraction(math.factorial(n))
    if tag == "invfactorial":
        return Fraction(1, math.factorial(n))
    if tag == "geometric":
        return Fraction(arg) ** n
    if tag == "poly" and float(arg).is_integer():
        return Fraction(n + 1) ** int(float(arg))
    raise KeyError(family)


def test_family_examples():
    assert np.all(make_weight_family("one", 8).values == 1.0)
    assert make_weight_family("poly:2", 8).values[3] == pytest.approx(16.0, rel=1e-15)
    assert make_weight_family("invfactorial", 8).values[4] == pytest.approx(1 / 24, rel=1e-15)


@pytest.mark.parametrize("family", FAMILIES)
def test_family_invariants(family):
    w = make_weight_family(family, 400)
    assert w.values[0] == 1.0 and w.logcum[0] == 0.0
    ok = np.isfinite(w.values) & (w.values > 0)
    assert ok[:170].all()
    np.testing.assert_allclose(np.exp(w.logcum[ok]), w.values[ok], rtol=1e-14)


@pytest.mark.parametrize("family", ["factorial", "invfactorial", "poly:2", "geometric:0.5"])
def test_log_ratios_match_direct_products(family):
    w = make_weight_family(family, 160)
    L = w.logcum
    for n, k in [(5, 2), (40, 17), (120, 60), (160, 1)]:
        direct = exact_weight(family, n) / (exact_weight(family, k) * exact_weight(family, n - k))
        assert math.exp(L[n] - L[k] - L[n - k]) == pytest.approx(float(direct), rel=1e-12)


def test_factorial_logs_do_not_overflow():
    w = make_weight_family("factorial", 2048)
    assert np.isinf(w.values[200])
    assert w.logcum[2048] == pytest.approx(math.lgamma(2049), rel=1e-15)


@pytest.mark.parametrize("bad", ["nope", "geometric:0", "geometric:-1", "poly"])
def test_unknown_or_invalid_family(bad):
    with pytest.raises(ValueError):
        make_weight_family(bad, 8)


def test_custom_family(tmp_path):
    path = tmp_path / "w.txt"
    path.write_text("1.0\n0.5\n0.25\n0.125\n", encoding="utf-8")
    w = make_weight_family(f"custom:{path}", 3)
    np.testing.assert_array_equal(w.values, [1, 0.5, 0.25, 0.125])

    path.write_text("1.0\n0.5\n0\n0.125\n", encoding="utf-8")
    with pytest.raises(ValueError, match="nonpositive"):
        make_weight_family(f"custom:{path}", 3)
    path.write_text("2.0\n0.5\n0.1\n0.125\n", encoding="utf-8")
    with pytest.raises(ValueError, match="line 0"):
        make_weight_family(f"custom:{path}", 3)
    with pytest.raises(ValueError, match="need"):
        make_weight_family(f"custom:{path}", 10)


def test_diamond_ratio_examples():
    one, fac = make_weight_family("one", 8), make_weight_family("factorial", 8)
    assert diamond_ratio(one, 5, 2, 0) == 1.0
    assert diamond_ratio(fac, 4, 2, 0) == pytest.approx(6.0, rel=1e-15)
    exact = Fraction(math.factorial(4), math.factorial(2) * math.factorial(3))
    assert diamond_ratio(fac, 4, 2, 1) == pytest.approx(float(exact), rel=1e-15)
    assert float(exact) == 2.0


def test_diamond_ratio_edges_are_exact():
    fac = make_weight_family("factorial", 64)
    for n in range(65):
        assert diamond_ratio(fac, n, 0, 0) == 1.0
        assert diamond_ratio(fac, n, n, 0) == 1.0
    for i in (1, 3):
        assert diamond_ratio(fac, 10, i, i) == diamond_ratio(fac, 10, 10, i)
        assert diamond_ratio(fac, 10, i, i) == pytest.approx(1 / math.factorial(i), rel=1e-15)
    with pytest.raises(IndexError):
        diamond_ratio(fac, 65, 1, 0)
    with pytest.raises(IndexError):
        diamond_ratio(fac, 5, 1, 2)


@pytest.mark.parametrize("i", [0, 1, 3])
def test_ratio_table_matches_scalar(i):
    fac = make_weight_family("factorial", 40)
    T = diamond_ratio_table(fac, 20, i)
    for n in range(21):
        for k in range(21):
            if i <= k <= n:
                assert T[n, k] == pytest.approx(diamond_ratio(fac, n, k, i), rel=1e-14)
            else:
                assert T[n, k] == 0.0


def test_beta_tilde_examples():
    one, fac = make_weight_family("one", 16), make_weight_family("factorial", 16)
    inv, p2 = make_weight_family("invfactorial", 16), make_weight_family("poly:2", 16)
    np.testing.assert_array_equal(beta_tilde(p2, one).logcum, p2.logcum[:-1])
    np.testing.assert_allclose(beta_tilde(one, fac).values, np.arange(1, 17), rtol=1e-14)
    assert beta_tilde(inv, one).values[3] == pytest.approx(1 / 6, rel=1e-15)
    assert beta_tilde(inv, fac).values[0] == 1.0


# -- holder constant -------------------------------------------------------

def test_holder_invfactorial_against_rationals(fam, scan):
    # inner sums are sum_k 1/C(n,k)^2
    exact = [sum(Fraction(1, math.comb(n, k) ** 2) for k in range(n + 1)) for n in range(6)]
    assert [float(x) for x in exact] == pytest.approx([1, 2, 2.25, 20 / 9, 2.1527777777777777, 2.1])
    rep = holder_constant(fam("invfactorial"), fam("one"), 2.0, 0, scan)
    assert rep.converged and not rep.diverged
    assert rep.witness == 2
    assert rep.value == pytest.approx(float(max(exact)), abs=1e-12)


def test_holder_poly2_regression(fam, scan):
    # max over n of sum_k ((n+1)/((k+1)(n-k+1)))^4, attained at n = 4
    exact = max(sum(Fraction(n + 1, (k + 1) * (n - k + 1)) ** 4 for k in range(n + 1))
                for n in range(60))
    assert exact == Fraction(32254481, 13436928)
    rep = holder_constant(fam("poly:2"), fam("one"), 2.0, 0, scan)
    assert rep.converged and rep.witness == 4
    assert rep.value == pytest.approx(float(exact), rel=1e-13)


@pytest.mark.parametrize("beta", ["geometric:2", "one"])
def test_holder_diverges_when_ratio_is_one(fam, scan, beta):
    rep = holder_constant(fam(beta), fam("one"), 2.0, 0, scan)
    assert not rep.converged and rep.diverged
    assert rep.value == pytest.approx(scan.n_max + 1, rel=1e-12)


def test_holder_threshold_stops_scan(fam):
    rep = holder_constant(fam("one"), fam("one"), 2.0, 0,
                          ScanPolicy(n_max=2048, divergence_threshold=100))
    assert rep.diverged and rep.witness == 100 and rep.scanned == (0, 100)


def test_holder_rejects_q_at_most_one(fam, scan):
    with pytest.raises(ValueError):
        holder_constant(fam("one"), fam("one"), 1.0, 0, scan)


def test_holder_restricted_matches_bruteforce(fam):
    beta, delta = fam("invfactorial", 64), fam("factorial", 64)
    scan = ScanPolicy(n_max=64)
    for i in (1, 2):
        best = 0.0
        for n in range(i, 65):
            s = 0.0
            for k in range(i, n + 1):
                num = exact_weight("factorial", n) * exact_weight("invfactorial", n)
                den = (exact_weight("factorial", k) * exact_weight("invfactorial", k) *
                       exact_weight("factorial", n - k + i) *
                       exact_weight("invfactorial", n - k + i))
                s += float(num / den) ** 2
            best = max(best, s)
        assert holder_constant(beta, delta, 2.0, i, scan).value == pytest.approx(best, rel=1e-12)


# -- tail constant ---------------------------------------------------------

def test_tail_constant_examples(fam, scan):
    one = fam("one")
    rep = tail_constant(fam("invfactorial"), one, 1, 1, 0, scan)
    assert rep.converged and rep.witness == 2
    assert rep.value == pytest.approx(1 / 3, rel=1e-14)

    rep = tail_constant(fam("poly:2"), one, 0, 1, 0, scan)
    assert rep.witness == 1 and rep.value == pytest.approx(((0 + 1 + 2) / (2 * 2)) ** 2, rel=1e-14)
    assert rep.value == pytest.approx(0.5625, rel=1e-14)

    # geometric weights cancel completely: the ratio is 1 for every n and k
    for M, k in [(0, 1), (3, 2), (10, 5)]:
        rep = tail_constant(fam("geometric:0.5"), one, M, k, 0, scan)
        assert rep.converged and rep.value == pytest.approx(1.0, rel=1e-11)


@pytest.mark.parametrize("beta", ["poly:2", "invfactorial"])
@pytest.mark.parametrize("k", [1, 2, 5])
def test_tail_constant_nonincreasing_in_M(fam, scan, beta, k):
    vals = [tail_constant(fam(beta), fam("one"), M, k, 0, scan).value for M in range(40)]
    assert all(b <= a for a, b in zip(vals, vals[1:]))


def test_tail_constant_restricted_closed_form(fam, scan):
    # invfactorial, delta = 1: ratio n!(k+i)!/(n+k)!, largest at n = M+i+1
    for i, M, k in [(1, 2, 1), (2, 0, 3), (3, 5, 2)]:
        n = M + i + 1
        expect = Fraction(math.factorial(n) * math.factorial(k + i), math.factorial(n + k))
        rep = tail_constant(fam("invfactorial"), fam("one"), M, k, i, scan)
        assert rep.witness == n and rep.value == pytest.approx(float(expect), rel=1e-13)


def test_tail_constant_errors(fam):
    with pytest.raises(ValueError):
        tail_constant(fam("one"), fam("one"), 0, 0)
    with pytest.raises(ValueError):
        tail_constant(fam("one", 8), fam("one", 8), 7, 2, 0, ScanPolicy(n_max=8, window=4))


# -- p = 1 double tail ------------------------------------------------------

def exact_p1_tail(N, ceiling):
    # invfactorial, delta = 1: terms n! m! / (n+m)! = 1 / C(n+m, n)
    return sum(Fraction(1, math.comb(s, n))
               for s in range(2 * N + 2, ceiling + 1) for n in range(N + 1, s - N))


def test_p1_tail_sum_against_rationals(fam):
    scan = ScanPolicy(n_max=64)
    inv, one = fam("invfactorial", 64), fam("one", 64)
    for N in (0, 1, 3):
        rep = p1_tail_sum(inv, one, N, 0, scan)
        assert rep.value == pytest.approx(float(exact_p1_tail(N, 64)), rel=1e-13)


def test_p1_tail_sum_dichotomy(fam, scan):
    inv, one = fam("invfactorial"), fam("one")
    harmonic = p1_tail_sum(inv, one, 0, 0, scan)
    assert not harmonic.converged and harmonic.diverged
    # the n = 1 row alone is sum_m 1/(m+1), so the partial sum beats a harmonic number
    assert harmonic.value > math.fsum(1 / (m + 1) for m in range(1, 2048))

    fine = p1_tail_sum(inv, one, 1, 0, scan)
    assert fine.converged
    assert fine.value == pytest.approx(1.4980454419208873, rel=1e-12)

    flat = p1_tail_sum(fam("geometric:2"), one, 0, 0, scan)
    assert not flat.converged and flat.diverged


def test_p1_tail_sum_monotone_in_ceiling(fam):
    inv, one = fam("invfactorial"), fam("one")
    vals = [p1_tail_sum(inv, one, 1, 0, ScanPolicy(n_max=c)).value for c in (32, 64, 256, 1024)]
    assert vals == sorted(vals)


def test_p1_tail_sum_restricted_needs_N_at_least_i(fam):
    with pytest.raises(ValueError):
        p1_tail_sum(fam("invfactorial"), fam("one"), 1, 2)


# -- shift norm and the p = 1 product constant -----------------------------

def test_shift_norm_examples(fam, scan):
    one = fam("one")
    rep = shift_norm_constant(fam("invfactorial"), one, 1, scan)
    assert rep.converged and rep.witness == 0 and rep.value == 1.0
    rep = shift_norm_constant(fam("poly:2"), one, 1, scan)
    assert rep.witness == 0 and rep.value == pytest.approx(4.0, rel=1e-15)
    for N in (1, 4, 9):
        assert shift_norm_constant(one, one, N, scan).value == 1.0
    assert shift_norm_constant(one, one, 0, scan).value == 1.0


def test_shift_norm_uses_delta(fam, scan):
    # beta = 1, delta = n!: ratio (n+N)!/n! grows without bound
    rep = shift_norm_constant(fam("one"), fam("factorial"), 1, scan)
    assert not rep.converged
    assert rep.value == pytest.approx(scan.n_max, rel=1e-12)


def test_p1_product_bound_constant_weights_fail(fam, scan):
    with pytest.raises(ConvergenceError):
        p1_product_bound(fam("one"), fam("one"), 0, scan)


def test_p1_product_bound_values(fam, scan):
    inv, one = fam("invfactorial"), fam("one")
    # each head term is k! * (1/k!) = 1, so K = 2(N+1) + B(N)
    K1 = p1_product_bound(inv, one, 1, scan)
    K2 = p1_product_bound(inv, one, 2, scan)
    assert K1 == pytest.approx(4 + p1_tail_sum(inv, one, 1, 0, scan).value, rel=1e-14)
    assert K2 == pytest.approx(6 + p1_tail_sum(inv, one, 2, 0, scan).value, rel=1e-14)
    assert K1 != K2


def test_weight_sequence_rejects_bad_input():
    with pytest.raises(ValueError):
        WeightSequence.from_values([2.0, 1.0])
    with pytest.raises(ValueError):
        WeightSequence.from_values([1.0, -1.0])
    with pytest.raises(ValueError):
        ScanPolicy(n_max=4, window=8)
