"""Block averaging and k-dilation with their eigenvalue estimates.

Averaging a sequence over k-adic blocks and then dilating it k-fold is
the engine behind the classification of singularly traceable sequences:
when the doubling ratios stay below 1/3 the averaged sequence dominates
its own dilation by a factor 2, which forces every trace to vanish on it.
The two estimates are recorded per index, never assumed.

Run:  python demos/04_averaging_dilation.py
"""

from singtrace import averaged_operator, k_dilation_with_checks, make_family

print("Averaged sequence over dyadic blocks (source: harmonic):")
avg_h = averaged_operator(make_family("harmonic"), 2, 1 << 13)
for n in (1, 2, 3, 4, 5, 8, 9):
    print(f"  mu_{n} = {avg_h.mu(n):.9f}")
print("  (constant on each block (2^(L-1), 2^L], the block's mean of mu)")

print("\ngeometric(1/4) satisfies the small-ratio hypothesis: S_2n/S_n = 4^-n")
for k in (2, 3):
    avg = averaged_operator(make_family("geometric:r=0.25"), k, 2000)
    pair, report = k_dilation_with_checks(avg, k, 1000)
    print(f"  k = {k}: estimate one holds: {report.estimate_one_holds}, "
          f"estimate two holds: {report.estimate_two_holds}, "
          f"first underflowed block index: {report.first_underflow_n}")

print("\nharmonic violates the hypothesis (its doubling ratios approach 1):")
pair, report = k_dilation_with_checks(avg_h, 2, 1000)
n = report.estimate_one_violations[0]
print(f"  first violation of estimate one at n = {n}: "
      f"mu_n = {avg_h.mu(n):.6f} < 2k mu_(k(n-1)+1) = {4 * avg_h.mu(2 * (n - 1) + 1):.6f}")

print("\nThe dilation relation itself is exact by construction:")
m = 2 * (6 - 1) + 1
print(f"  mu_{m}(S~) = {pair.S_tilde.mu(m):.9f} = mu_6(S)/2 = {pair.S.mu(6) / 2:.9f}")
