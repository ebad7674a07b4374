"""Tour of the eigenvalue-sequence families and their partial sums.

Run:  python demos/01_sequence_families.py
"""

from singtrace import make_family, sigma_and_S, trace_value

print("=" * 70)
print("Families, partial sums sigma_n, and integral sequences S_n")
print("=" * 70)

for spec in ["harmonic", "power:alpha=-2", "powlog:alpha=1",
             "geometric:r=0.5", "logstep", "aq:q=1"]:
    seq = make_family(spec)
    info = trace_value(seq)
    head = [f"{seq.mu(n):.6g}" for n in range(1, 7)]
    print(f"\n{spec}")
    print(f"  mu_1..mu_6      : {', '.join(head)}")
    print(f"  summability     : {info.classification}", end="")
    if info.summable:
        print(f"  (trace = {info.trace:.12g}, bracket width = {info.trace_error_bound:.3g})")
    else:
        print()
    for n in (4, 1024):
        sigma, s_val = sigma_and_S(seq, n)
        print(f"  n = {n:>5}: sigma_n = {sigma:.9g}   S_n = {s_val:.9g}")

print("\nS_n carries the whole story: it grows without bound exactly when")
print("the sequence is not summable, and climbs to 0 from below when it is.")

# the evaluators switch to closed forms / asymptotics far beyond any
# range a term-by-term sum could reach
h = make_family("harmonic")
n = 1 << 4000
print(f"\nsigma of harmonic at n = 2**4000: {h.sigma(n):.9g}")
print("(log n + gamma to machine precision, no 2**4000-term loop involved)")
