"""Classifying sequences by the doubling-ratio trajectory S_2n/S_n.

A sequence admits a finite nonzero singular trace exactly when 1 is a
limit point of S_2n/S_n; at a finite horizon the verdict is necessarily
horizon-qualified, so the report carries the full trajectory.

Run:  python demos/02_eccentricity.py
"""

from singtrace import analyze_eccentricity, extract_pk, make_family

HORIZON = 1 << 20
EPS = 0.05

print(f"horizon = 2**20, eps = {EPS}")
print(f"{'family':<18} {'verdict':<26} {'best dev':>10} {'at n':>9}")
print("-" * 68)
for spec in ["harmonic", "powlog:alpha=-2", "aq:q=1",
             "geometric:r=0.5", "power:alpha=-2"]:
    rep = analyze_eccentricity(make_family(spec), HORIZON, EPS)
    print(f"{spec:<18} {rep.verdict:<26} {rep.best_deviation:>10.6f} {rep.best_n:>9}")

print("""
A 'no-witness-found' verdict is a statement about this horizon only:
finitely many terms can never disprove a limit point.  The trajectory
shows the trend; here is the harmonic one on the top dyadic indices:""")

rep = analyze_eccentricity(make_family("harmonic"), HORIZON, EPS)
for n, ratio in rep.trajectory[-5:]:
    print(f"  n = {n:>8}: S_2n/S_n = {ratio:.6f}")

print("\nWitness indices p_k (smallest p with |1 - S_2p/S_p| <= 1/k^2):")
for w in extract_pk(make_family("harmonic"), 4, 1 << 16):
    print(f"  k = {w.k}: p_k = {w.p:>6}   |1 - S_2p/S_p| = {w.deviation_2:.5f}"
          f"   |1 - S_kp/S_p| = {w.deviation_k:.5f} <= (k-1)/k^2 = {w.derived_bound:.5f}")
