"""Acceptance suite: one test per criterion, at the stated tolerances.

Each test prints a single pass/fail line (run with ``pytest -s`` to see
them on success; failures always show the line in the captured output).
Expected values were computed from independent oracles in the sibling
test modules; here they are pinned at the acceptance tolerances.
"""

import time
from fractions import Fraction

import numpy as np

from singtrace import eccentric as ec
from singtrace import example4 as ex
from singtrace import seqcore as sc
from singtrace import states as st
from singtrace import traces as tr


def _report(number, description, body):
    try:
        body()
    except BaseException:
        print(f"[criterion {number:2d}] FAIL - {description}")
        raise
    print(f"[criterion {number:2d}] PASS - {description}")


# ---------------------------------------------------------------------------


def test_criterion_01_benchmark_reproduction():
    def body():
        cases = [(1, 1, 14, 1.0), (2, 1, 7, 5 / 6), (2, 2, 7, 2 / 3)]
        for q, r, s, reference in cases:
            start = time.perf_counter()
            rep = ex.reproduce(ex.AqParams(q), s, r, "direct")
            elapsed = time.perf_counter() - start
            assert s * q >= 14 and rep.p <= 1 << 22
            assert rep.reference == float(reference) or abs(rep.reference - reference) < 1e-15
            assert rep.error <= 0.05, (q, r, s, rep.error)
            assert elapsed <= 10.0, (q, r, s, elapsed)

    _report(1, "cesaro_direct matches the closed-form benchmark within 0.05", body)


def test_criterion_02_convergence_trend():
    def body():
        errors = [ex.reproduce(ex.AqParams(1), s, 1, "direct").error for s in (8, 11, 14)]
        assert errors[0] >= errors[1] >= errors[2], errors

    _report(2, "error non-increasing over s in {8, 11, 14} for q=1, r=1", body)


def test_criterion_03_path_equivalence():
    def body():
        for q in (1, 2, 3):
            params = ex.AqParams(q)
            for s in range(1, 13):
                for r in range(1, q + 1):
                    if s * q + r > 12:
                        continue
                    direct = ex.cesaro_direct(params, 1 << (s * q + r))
                    block = ex.cesaro_block(params, s, r)
                    assert abs(block - direct) <= 1e-9 * abs(direct), (q, s, r)

    _report(3, "cesaro_block vs cesaro_direct within 1e-9 relative, p <= 2^12", body)


def test_criterion_04_sigma_closed_form_oracle():
    def body():
        for q in (1, 2, 3):
            params = ex.AqParams(q)
            exps = [2 ** (k * q) for k in range(0, 14)]
            for m in range(2, 13):
                # enumeration oracle, exact rationals
                total = Fraction(0)
                for j in range(3, 2**m + 1):
                    k = 0
                    while not (2 ** exps[k] < j <= 2 ** exps[k + 1]):
                        k += 1
                    total += Fraction(exps[k + 1] - exps[k], 2 ** exps[k + 1] - 2 ** exps[k])
                assert ex.aq_sigma_pow2_exact(params, m) == total, (q, m)

    _report(4, "sigma(2^m) closed form equals block enumeration exactly", body)


def test_criterion_05_eccentricity_classification():
    def body():
        horizon, eps = 1 << 20, 0.05
        failures = []
        for spec in ["harmonic", "powlog:alpha=1", "powlog:alpha=-2", "aq:q=1"]:
            rep = ec.analyze_eccentricity(sc.make_family(spec), horizon, eps)
            if rep.verdict != "eccentric-within-horizon":
                failures.append((spec, rep.verdict, rep.best_deviation))
        for spec in ["geometric:r=0.5", "power:alpha=-2"]:
            rep = ec.analyze_eccentricity(sc.make_family(spec), horizon, eps)
            if rep.verdict != "no-witness-found" or rep.best_deviation < 0.2:
                failures.append((spec, rep.verdict, rep.best_deviation))
        assert not failures, failures

    _report(5, "classification at horizon 2^20, eps 0.05 for all six families", body)


def test_criterion_06_witness_extraction():
    def body():
        h = sc.make_family("harmonic")
        witnesses = ec.extract_pk(h, 4, 1 << 16)
        by_k = {w.k: w for w in witnesses}
        assert by_k[2].p == 8
        for w in witnesses:
            assert w.k <= 4
            devk = abs(1.0 - h.S(w.k * w.p) / h.S(w.p))
            assert devk <= (w.k - 1) / (w.k * w.k), (w.k, w.p, devk)

    _report(6, "harmonic p_2 = 8 exactly; all witnesses meet the k-step bound", body)


def test_criterion_07_concavity_property_suite():
    def body():
        rng = np.random.default_rng(20_240_507)
        violations = 0
        for _ in range(1000):
            length = int(rng.integers(8, 257))
            values = np.sort(rng.exponential(scale=1.0, size=length) + 1e-9)[::-1]
            seq = sc.from_values(values, summable=False)
            n = int(rng.integers(1, max(2, length // 9)))
            k = int(rng.integers(2, 9))
            if k * n > length:
                k = max(2, length // max(n, 1))
                if k * n > length or k < 2:
                    n, k = 1, min(8, length)
            holds, residual = ec.concavity_interpolation_check(seq, n, k)
            if not holds:
                violations += 1
        assert violations == 0

    _report(7, "concavity interpolation holds on 1000 seeded sequences", body)


def test_criterion_08_doubling_property_suite():
    def body():
        rng = np.random.default_rng(8_161_423)
        for _ in range(1000):
            d = int(rng.integers(2, 65))
            a = np.sort(rng.exponential(size=d))[::-1]
            b = np.sort(rng.exponential(size=d))[::-1]
            n = int(rng.integers(1, d // 2 + 1))
            left, right = ec.doubling_inequality_check(a, b, n)
            assert left and right

        rng = np.random.default_rng(27_182_818)
        for _ in range(1000):
            d = int(rng.integers(2, 33))
            a = rng.normal(size=(d, d))
            b = rng.normal(size=(d, d))
            a = a @ a.T
            b = b @ b.T
            n = int(rng.integers(1, d // 2 + 1))
            left, right = ec.doubling_inequality_check(a, b, n, mode="matrix")
            assert left and right

    _report(8, "doubling inequalities on 1000 commuting and 1000 matrix pairs", body)


def test_criterion_09_dilation_pipeline():
    def body():
        for k in (2, 3):
            averaged = tr.averaged_operator(sc.make_family("geometric:r=0.25"), k, 2000)
            _, report = tr.k_dilation_with_checks(averaged, k, 1000)
            assert report.estimate_one_holds, (k, report.estimate_one_violations[:5])
            assert report.estimate_two_holds, (k, report.estimate_two_violations[:5])
        averaged_h = tr.averaged_operator(sc.make_family("harmonic"), 2, 1 << 13)
        _, report_h = tr.k_dilation_with_checks(averaged_h, 2, 1000)
        assert report_h.estimate_one_violations, "expected a violation for harmonic"
        n = report_h.estimate_one_violations[0]
        assert averaged_h.mu(n) < 4.0 * averaged_h.mu(2 * (n - 1) + 1)

    _report(9, "dilation estimates hold for geometric(1/4), fail for harmonic", body)


def test_criterion_10_telescoping_identity():
    def body():
        rng = np.random.default_rng(1_618_033)
        for trial in range(100):
            table = rng.uniform(-1.0, 1.0, size=97)
            amp = float(rng.uniform(0.1, 3.0))

            def accessor(n, table=table, amp=amp):
                return amp * float(table[n % 97]) + 0.25 * ((n.bit_length() % 7) / 7.0)

            for omega in (100, 1000):
                defect, telescoped = tr.dilation_invariance_defect(accessor, omega)
                assert abs(defect - telescoped) <= 1e-12, trial
                sup = max(abs(accessor(1 << k)) for k in range(1, omega + 2))
                assert abs(defect) <= 2.0 * sup / omega + 1e-15, trial

    _report(10, "telescoping agreement to 1e-12 and the 2 sup/omega bound", body)


def test_criterion_11_states():
    def body():
        # exact square-window means
        for r, s in [(2, 10), (2, 51), (5, 100)]:
            k = (2 * r) ** 2
            n = (2 * s) ** 2 - k
            rec = st.ergodicity_probe(
                "squares", [st.WindowState("translation", k=k, n=n)]
            )[0]
            cf = Fraction(s + r + 1, 2 * (s + r))
            assert rec.estimate.hits * cf.denominator == cf.numerator * n, (r, s)
            assert rec.closed_form_exact
            if s >= 51:
                assert abs(rec.estimate.mean - 0.5) <= 0.01

        # eta transport and interval split on seeded cases
        rng = np.random.default_rng(42_042)
        for _ in range(100):
            seed = int(rng.integers(1 << 30))

            def a(i, seed=seed):
                return ((i * 2654435761 + seed) % 4294967296) / 4294967296

            m = int(rng.integers(1, 200))
            k = int(rng.integers(0, 20))
            n = int(rng.integers(1, 30))
            dyadic = st.window_mean(a, st.WindowState("dyadic", k=k, n=n, m=m)).mean
            pulled = st.window_mean(
                st.eta_pullback(a, m), st.WindowState("translation", k=k, n=n)
            ).mean
            assert abs(dyadic - pulled) <= 1e-12

            lo = int(rng.integers(1, 500))
            hi = lo + int(rng.integers(3, 300))
            cut1 = int(rng.integers(lo, hi - 1))
            cut2 = int(rng.integers(cut1 + 1, hi))
            residual = st.interval_split_check(
                (lo, hi), ((lo, cut1), (cut1 + 1, cut2), (cut2 + 1, hi)), a
            )
            assert abs(residual) <= 1e-12

    _report(11, "square-window means exact; eta transport and splits to 1e-12", body)


def test_criterion_12_trace_estimate_properties():
    def body():
        h = sc.make_family("harmonic")
        ls = sc.make_family("logstep")
        p2 = sc.make_family("power:alpha=-2")
        for omega in (10, 1000):
            assert tr.dixmier_estimate(h, h, omega).value == 1.0
        base = tr.dixmier_estimate(h, ls, 300).value
        for c in (0.5, 2.0, 7.5):
            scaled = tr.dixmier_estimate(
                sc.make_family(f"scale:c={c},(harmonic)"), ls, 300
            ).value
            assert abs(scaled - c * base) <= 1e-12 * abs(c * base)
        rows = [tr.additivity_defect(h, p2, ls, omega) for omega in (100, 1000, 10_000)]
        for defect, bound in rows:
            assert defect <= bound + 1e-10
        assert rows[0][0] > rows[1][0] > rows[2][0]
        assert rows[0][1] > rows[1][1] > rows[2][1]

    _report(12, "self-trace exact, homogeneity 1e-12, additivity defect bounded", body)
