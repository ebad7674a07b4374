"""Finite-window invariant states on structured subsets of N.

Window means stand in for invariant means parameterized by infinite
cutoffs.  On the union of square-bounded blocks the means admit an exact
rational closed form, and the bijection (m, n) -> (2m-1) 2^(n-1) turns
dyadic windows into translation windows.

Run:  python demos/05_window_states.py
"""

from singtrace import (
    WindowState,
    ergodicity_probe,
    eta,
    eta_inv,
    eta_pullback,
    interval_split_check,
    structured_set,
    window_mean,
)

print("Structured sets with O(1) membership:")
C = structured_set("squares")        # union of [(2i-1)^2, (2i)^2]
A = structured_set("dyadicblocks")   # union of (2^(2q-1), 2^(2q)]
print("  squares:      ", [i for i in range(1, 30) if C(i)])
print("  dyadicblocks: ", [i for i in range(1, 30) if A(i)])

print("\nSquare-aligned windows k = (2r)^2 .. (2s)^2 have exact means:")
for r, s in [(2, 10), (2, 51), (5, 100)]:
    k = (2 * r) ** 2
    n = (2 * s) ** 2 - k
    rec = ergodicity_probe("squares", [WindowState("translation", k=k, n=n)])[0]
    print(f"  r={r:>2} s={s:>3}: mean = {rec.estimate.mean:.9f} "
          f"(= (s+r+1)/(2(s+r)) exactly: {rec.closed_form_exact}), "
          f"shift defect = {rec.translation_defect:.2e}")
print("  the means approach 1/2 like 1/(2(s+r)) while the shift defect")
print("  vanishes like 1/n: the set looks exactly half-dense to any")
print("  translation-invariant limit along these windows.")

print("\nA window buried inside one dyadic block sees density 1, not 1/2:")
rec = ergodicity_probe(
    "dyadicblocks", [WindowState("translation", k=4**10 - 2**18, n=2**18)]
)[0]
print(f"  window (4^10 - 2^18, 4^10]: mean = {rec.estimate.mean}, "
      f"single block = {rec.single_block}")

print("\nThe doubling <-> translation bijection and its transport identity:")
print("  eta(3, 2) =", eta(3, 2), "  eta_inv(12) =", eta_inv(12))

def a(i):
    return ((i * 2654435761) % 4294967296) / 4294967296

w_dyadic = WindowState("dyadic", k=4, n=12, m=7)
w_trans = WindowState("translation", k=4, n=12)
lhs = window_mean(a, w_dyadic).mean
rhs = window_mean(eta_pullback(a, 7), w_trans).mean
print(f"  dyadic mean = {lhs:.15f}")
print(f"  pulled-back translation mean = {rhs:.15f}  (equal: {lhs == rhs})")

print("\nWeighted interval splitting is an identity, residual at float dust:")
residual = interval_split_check((1, 1000), ((1, 300), (301, 700), (701, 1000)), C)
print(f"  residual over [1,1000] split at 300/700: {residual:.2e}")
