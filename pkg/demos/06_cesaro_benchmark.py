"""The closed-form Cesaro benchmark for the block-constant aq family.

The sequence aq(q) is constant on dyadic blocks (2^n_k, 2^(n_{k+1})]
with n_k = 2^(kq); its Cesaro-averaged partial-sum ratios at cutoff
p = 2^(sq+r) converge to the exact value 2^(-r) (q/(2^q - 1) + r).
Two independent evaluation paths are compared: term-by-term summation
and block closed forms whose cost does not grow with p.

Run:  python demos/06_cesaro_benchmark.py
"""

import time

from singtrace import AqParams, cesaro_block, cesaro_direct, reference_dyadic, reproduce

print("Convergence toward the benchmark (q = 1, r = 1, target 1.0):")
print(f"  {'s':>3} {'p':>8} {'estimate':>15} {'error':>12}")
for s in (6, 8, 11, 14):
    rep = reproduce(AqParams(1), s, 1, "direct")
    print(f"  {s:>3} {rep.p:>8} {rep.estimate:>15.9f} {rep.error:>12.3e}")

print("\nAll three benchmark cases at sq >= 14:")
for q, r, s in [(1, 1, 14), (2, 1, 7), (2, 2, 7)]:
    rep = reproduce(AqParams(q), s, r, "direct")
    print(f"  q={q} r={r} s={s:>2}: estimate = {rep.estimate:.6f} "
          f"reference = {rep.reference:.6f} error = {rep.error:.2e} "
          f"({rep.runtime_ms:.0f} ms)")

print("\nPath equivalence (term-by-term vs block closed forms):")
for q, s, r in [(1, 9, 1), (2, 5, 2), (3, 3, 3)]:
    p = 1 << (s * q + r)
    direct = cesaro_direct(AqParams(q), p)
    block = cesaro_block(AqParams(q), s, r)
    print(f"  q={q} s={s} r={r}: |direct - block|/|direct| = "
          f"{abs(direct - block) / abs(direct):.2e}")

print("\nThe block path keeps going where term-by-term cannot follow:")
t0 = time.perf_counter()
value = cesaro_block(AqParams(1), 200, 1)
dt = (time.perf_counter() - t0) * 1e3
print(f"  q=1, s=200 (p = 2^201): estimate = {value:.12f} in {dt:.1f} ms "
      f"(reference {reference_dyadic(AqParams(1), 1)})")
