"""Eigenvalue-sequence families, partial sums and summability.

A :class:`SpectralSequence` stands for a positive compact operator through
the non-increasing sequence mu_1 >= mu_2 >= ... > 0 of its singular values.
Partial sums sigma_n are accumulated with compensated summation up to
``DIRECT_CAP`` and switch to closed forms or anchored Euler-Maclaurin
expansions beyond, so that dyadic windows at indices like 2**10000 stay
evaluable in 64-bit floats.  The integral sequence S_n equals sigma_n for
non-summable sequences and sigma_n - trace for summable ones, so S_n <= 0
and S_n -> 0 monotonically in the summable case.

Index arguments are Python ints and may exceed 2**64; each family raises
:class:`IndexRangeError` where a value would leave its float-safe domain
(mu underflowing to zero, or sigma overflowing).
"""

from __future__ import annotations

import math
import threading
from bisect import bisect_right
from dataclasses import dataclass

from .errors import (
    IndexRangeError,
    MonotonicityError,
    ParameterError,
    SequenceSpecError,
    UndeterminedSummabilityError,
)
from .summation import NeumaierSum

EULER_GAMMA = 0.5772156649015328606
LOG2 = math.log(2.0)

DIRECT_CAP = 1 << 16        # compensated direct summation up to this index
PROBE_PREFIX = 10_000       # monotonicity probe length at construction
_BIG_FLOAT_INT = 1 << 1020  # ints beyond this cannot be converted to float
_EM_PLAIN_X = 1e150         # beyond this the EM correction terms are dropped

SUMMABLE = "summable"
NON_SUMMABLE = "non-summable"
UNDETERMINED = "undetermined"


@dataclass(frozen=True)
class SummabilityInfo:
    """Summability class of a sequence with its trace when it has one.

    ``trace_error_bound`` is the width of the integral-test bracket used
    for the tail, 0.0 when the trace is a closed form.
    """

    classification: str
    trace: float | None = None
    trace_error_bound: float | None = None

    @property
    def summable(self) -> bool:
        return self.classification == SUMMABLE


def _log_big(n) -> float:
    # math.log accepts ints of any magnitude
    return math.log(n)


def _pow_big(n, e: float) -> float:
    """n**e for a positive integer n of any size and float e <= small."""
    if n <= _BIG_FLOAT_INT:
        return float(n) ** e
    return math.exp(e * math.log(n))


class SpectralSequence:
    """Lazily evaluable non-increasing positive sequence with partial sums."""

    family = "abstract"

    def __init__(self):
        self._lock = threading.Lock()
        self._checkpoints: dict[int, tuple[float, float]] = {0: (0.0, 0.0)}
        self._ckpt_keys: list[int] = [0]
        # several resume states so interleaved ascending cursors stay O(1)
        self._tips: list[tuple[int, float, float]] = []
        self._info: SummabilityInfo | None = None

    # ---- hooks implemented by the families --------------------------------
    def _mu(self, n) -> float:
        raise NotImplementedError

    def _sigma_large(self, n) -> float:
        """sigma_n for n > DIRECT_CAP; families without a closed/EM form raise."""
        raise IndexRangeError(
            f"{self.descriptor}: sigma beyond index {DIRECT_CAP} is not supported"
        )

    def _summability_info(self) -> SummabilityInfo:
        raise NotImplementedError

    def _S_summable_large(self, n) -> float:
        """S_n for summable families at n > DIRECT_CAP (tail form)."""
        raise IndexRangeError(
            f"{self.descriptor}: S beyond index {DIRECT_CAP} is not supported"
        )

    @property
    def descriptor(self) -> str:
        raise NotImplementedError

    def safe_mu_horizon(self):
        """Largest index at which mu is representable as a positive float."""
        return 1 << 62

    # ---- public surface ----------------------------------------------------
    def mu(self, n) -> float:
        if n < 1:
            raise ParameterError(f"mu index must be >= 1, got {n}")
        if n > self.safe_mu_horizon():
            raise IndexRangeError(
                f"{self.descriptor}: index {n} exceeds the float-safe domain"
            )
        v = self._mu(n)
        if not v > 0.0 or math.isinf(v):
            raise IndexRangeError(
                f"{self.descriptor}: mu_{n} not representable as a positive float"
            )
        return v

    def sigma(self, n) -> float:
        if n < 0:
            raise ParameterError(f"sigma index must be >= 0, got {n}")
        if n == 0:
            return 0.0
        if n <= DIRECT_CAP:
            return self._sigma_direct(n)
        return self._sigma_large(n)

    def S(self, n) -> float:
        info = self.summability()
        if info.classification == UNDETERMINED:
            raise UndeterminedSummabilityError(
                f"{self.descriptor}: summability class unknown; sigma is still available"
            )
        if info.classification == NON_SUMMABLE:
            return self.sigma(n)
        if n == 0:
            return -info.trace
        if n <= DIRECT_CAP:
            return self.sigma(n) - info.trace
        return self._S_summable_large(n)

    def sigma_and_S(self, n) -> tuple[float, float]:
        return self.sigma(n), self.S(n)

    def summability(self) -> SummabilityInfo:
        if self._info is None:
            self._info = self._summability_info()
        return self._info

    def values(self, n_first: int, n_last: int) -> list:
        return [self.mu(i) for i in range(n_first, n_last + 1)]

    def __repr__(self):
        return f"<SpectralSequence {self.descriptor}>"

    # ---- cached direct summation -------------------------------------------
    def _sigma_direct(self, n: int) -> float:
        # Checkpointed Neumaier chain: resuming from a saved (partial, carry)
        # state is bitwise identical to a fresh pass from index 1.
        with self._lock:
            start, s, c = 0, 0.0, 0.0
            key = self._ckpt_keys[bisect_right(self._ckpt_keys, n) - 1]
            if key >= start:
                start = key
                s, c = self._checkpoints[key]
            best_tip = -1
            for idx, (tn, ts, tc) in enumerate(self._tips):
                if start < tn <= n:
                    start, s, c = tn, ts, tc
                    best_tip = idx
            acc = NeumaierSum(s, c)
            for i in range(start + 1, n + 1):
                acc.add(self._mu(i))
                if i & (i - 1) == 0 and i not in self._checkpoints:
                    self._checkpoints[i] = acc.state()
                    self._ckpt_keys.insert(bisect_right(self._ckpt_keys, i), i)
            value = acc.value
            entry = (n, acc.partial, acc.carry)
            if best_tip >= 0:
                self._tips[best_tip] = entry
            else:
                self._tips.append(entry)
                if len(self._tips) > 8:
                    self._tips.pop(0)
            return value

    # ---- construction-time validation ---------------------------------------
    def _validate_prefix(self, limit: int | None = None) -> None:
        horizon = min(limit or PROBE_PREFIX, PROBE_PREFIX)
        safe = self.safe_mu_horizon()
        if safe < horizon:
            horizon = int(safe)
        prev = None
        for i in range(1, horizon + 1):
            v = self._mu(i)
            if not v > 0.0:
                raise MonotonicityError(
                    f"{self.descriptor}: mu_{i} = {v!r} is not positive"
                )
            if prev is not None and v > prev * (1.0 + 1e-15):
                raise MonotonicityError(
                    f"{self.descriptor}: mu_{i} = {v!r} exceeds mu_{i - 1} = {prev!r}"
                )
            prev = v


# ---------------------------------------------------------------------------
# Euler-Maclaurin helpers shared by the power / powlog families.
# Sum_{k=a+1}^{b} f(k) = int_a^b f + (f(b)-f(a))/2 + (f'(b)-f'(a))/12
#                        - (f'''(b)-f'''(a))/720 + R,  |R| ~ f^(5)
# Tail_{k>n} f(k)      = int_n^inf f - f(n)/2 - f'(n)/12 + f'''(n)/720
# ---------------------------------------------------------------------------


def _em_segment(fint, f, fp, f3, a, b) -> float:
    total = fint(a, b)
    fa = 0.0 if a > _EM_PLAIN_X else f(a)
    fb = 0.0 if b > _EM_PLAIN_X else f(b)
    pa = 0.0 if a > _EM_PLAIN_X else fp(a)
    pb = 0.0 if b > _EM_PLAIN_X else fp(b)
    ta = 0.0 if a > _EM_PLAIN_X else f3(a)
    tb = 0.0 if b > _EM_PLAIN_X else f3(b)
    return total + (fb - fa) / 2.0 + (pb - pa) / 12.0 - (tb - ta) / 720.0


def _em_tail(fint_inf, f, fp, f3, n) -> float:
    total = fint_inf(n)
    if n > _EM_PLAIN_X:
        return total
    return total - f(n) / 2.0 - fp(n) / 12.0 + f3(n) / 720.0


# ---------------------------------------------------------------------------
# Families
# ---------------------------------------------------------------------------


class HarmonicSequence(SpectralSequence):
    family = "harmonic"

    @property
    def descriptor(self):
        return "harmonic"

    def safe_mu_horizon(self):
        return (1 << 1073) - 1

    def _mu(self, n):
        return 1 / n  # int/int stays finite for huge n

    def _sigma_large(self, n):
        return _harmonic_asymptotic(n)

    def _summability_info(self):
        return SummabilityInfo(NON_SUMMABLE)


def _harmonic_asymptotic(n) -> float:
    ln = _log_big(n)
    inv = 1 / n  # int/int division is exact about huge n
    inv2 = inv * inv
    return ln + EULER_GAMMA + inv / 2.0 - inv2 / 12.0 + inv2 * inv2 / 120.0


_HARMONIC_SHARED = HarmonicSequence()


def harmonic_number(n) -> float:
    """H_n for any positive int; direct sum below DIRECT_CAP, expansion above."""
    if n <= 0:
        return 0.0
    return _HARMONIC_SHARED.sigma(n)


class PowerSequence(SpectralSequence):
    """mu_n = n**alpha with alpha <= 0; summable exactly when alpha < -1."""

    family = "power"

    def __init__(self, alpha: float):
        super().__init__()
        if not alpha <= 0.0:
            raise ParameterError(
                f"power family needs alpha <= 0 for a non-increasing sequence, got {alpha}"
            )
        self.alpha = float(alpha)
        self._validate_prefix()

    @property
    def descriptor(self):
        return f"power:alpha={self.alpha:g}"

    def safe_mu_horizon(self):
        if self.alpha == 0.0:
            return 1 << 62
        # keep n**alpha above the subnormal floor
        return int(math.exp(min(700.0, -744.0 / self.alpha)))

    def _mu(self, n):
        return _pow_big(n, self.alpha)

    # f(x) = x**alpha
    def _f(self, x):
        return _pow_big(x, self.alpha)

    def _fp(self, x):
        return self.alpha * _pow_big(x, self.alpha - 1.0)

    def _f3(self, x):
        a = self.alpha
        return a * (a - 1.0) * (a - 2.0) * _pow_big(x, a - 3.0)

    def _fint(self, a, b):
        ap1 = self.alpha + 1.0
        if ap1 == 0.0:
            return _log_big(b) - _log_big(a)
        if ap1 > 0.0 and ap1 * _log_big(b) > 709.0:
            raise IndexRangeError(f"{self.descriptor}: sigma_{b} overflows a float")
        return (_pow_big(b, ap1) - _pow_big(a, ap1)) / ap1

    def _fint_inf(self, x):
        ap1 = self.alpha + 1.0
        return -_pow_big(x, ap1) / ap1  # ap1 < 0 here

    def _tail(self, n) -> float:
        return _em_tail(self._fint_inf, self._f, self._fp, self._f3, n)

    def _sigma_large(self, n):
        info = self.summability()
        if info.summable:
            return info.trace - self._tail(n)
        anchor = self._sigma_direct(DIRECT_CAP)
        return anchor + _em_segment(
            self._fint, self._f, self._fp, self._f3, DIRECT_CAP, n
        )

    def _S_summable_large(self, n):
        return -self._tail(n)

    def _summability_info(self):
        if self.alpha >= -1.0:
            return SummabilityInfo(NON_SUMMABLE)
        trace = self._sigma_direct(DIRECT_CAP) + self._tail(DIRECT_CAP)
        # integral-test bracket [int_{N+1}^inf, int_N^inf]: width = int_N^{N+1}
        width = self._fint(DIRECT_CAP, DIRECT_CAP + 1)
        return SummabilityInfo(SUMMABLE, trace, abs(width))


class PowLogSequence(SpectralSequence):
    """mu_n = (log(n + n0))**alpha / (n + n0).

    n0 is the smallest shift that makes the sequence non-increasing from
    n = 1 (and keeps log positive); it changes nothing asymptotically.
    """

    family = "powlog"

    def __init__(self, alpha: float):
        super().__init__()
        self.alpha = float(alpha)
        shift = max(1, math.ceil(math.exp(self.alpha)) - 1)
        while not self._prefix_monotone(shift):
            shift += 1
        self.shift = shift
        self._validate_prefix()

    def _prefix_monotone(self, shift: int, probe: int = 64) -> bool:
        vals = [
            math.log(i + shift) ** self.alpha / (i + shift)
            for i in range(1, probe + 1)
        ]
        return all(b <= a * (1.0 + 1e-15) for a, b in zip(vals, vals[1:]))

    @property
    def descriptor(self):
        return f"powlog:alpha={self.alpha:g}"

    def safe_mu_horizon(self):
        return (1 << 1000) - 1

    def _mu(self, n):
        x = n + self.shift
        return self._f(x)

    # f(x) = (ln x)**alpha / x and derivatives, big-int safe
    def _f(self, x):
        lx = _log_big(x)
        if x <= _BIG_FLOAT_INT:
            return lx**self.alpha / x
        e = self.alpha * math.log(lx) - lx
        return math.exp(e) if e > -745.0 else 0.0

    def _fp(self, x):
        lx = _log_big(x)
        return lx ** (self.alpha - 1.0) * (self.alpha - lx) / (float(x) * float(x))

    def _f3(self, x):
        a = self.alpha
        lx = _log_big(x)
        g3 = lx ** (a - 3.0)
        num = (
            a * (a - 1.0) * (a - 2.0) * g3
            - 6.0 * a * (a - 1.0) * g3 * lx
            + 11.0 * a * g3 * lx * lx
            - 6.0 * g3 * lx * lx * lx
        )
        x2 = float(x) * float(x)
        return num / (x2 * x2)

    def _fint(self, a, b):
        ap1 = self.alpha + 1.0
        la, lb = _log_big(a), _log_big(b)
        if ap1 == 0.0:
            return math.log(lb) - math.log(la)
        return (lb**ap1 - la**ap1) / ap1

    def _fint_inf(self, x):
        ap1 = self.alpha + 1.0
        return -(_log_big(x) ** ap1) / ap1  # ap1 < 0 in the summable regime

    def _tail(self, n) -> float:
        x = n + self.shift
        return _em_tail(self._fint_inf, self._f, self._fp, self._f3, x)

    def _sigma_large(self, n):
        info = self.summability()
        if info.summable:
            return info.trace - self._tail(n)
        anchor = self._sigma_direct(DIRECT_CAP)
        return anchor + _em_segment(
            self._fint,
            self._f,
            self._fp,
            self._f3,
            DIRECT_CAP + self.shift,
            n + self.shift,
        )

    def _S_summable_large(self, n):
        return -self._tail(n)

    def _summability_info(self):
        if self.alpha >= -1.0:
            return SummabilityInfo(NON_SUMMABLE)
        trace = self._sigma_direct(DIRECT_CAP) + self._tail(DIRECT_CAP)
        a = DIRECT_CAP + self.shift
        width = self._fint(a, a + 1)
        return SummabilityInfo(SUMMABLE, trace, abs(width))


class GeometricSequence(SpectralSequence):
    """mu_n = r**n with 0 < r < 1; trace r/(1-r) in closed form."""

    family = "geometric"

    def __init__(self, r: float):
        super().__init__()
        if not 0.0 < r < 1.0:
            raise ParameterError(f"geometric ratio must lie in (0, 1), got {r}")
        self.r = float(r)
        self._trace = self.r / (1.0 - self.r)
        horizon = int(-744.0 / math.log(self.r))
        while horizon > 1 and self.r**horizon == 0.0:
            horizon -= 1
        self._safe_mu = horizon
        self._validate_prefix()

    @property
    def descriptor(self):
        return f"geometric:r={self.r:g}"

    def safe_mu_horizon(self):
        return self._safe_mu

    def _rpow(self, n) -> float:
        if n > _BIG_FLOAT_INT:
            return 0.0
        return self.r**n

    def _mu(self, n):
        return self._rpow(n)

    def sigma(self, n):
        if n < 0:
            raise ParameterError(f"sigma index must be >= 0, got {n}")
        return self._trace * (1.0 - self._rpow(n))

    def S(self, n):
        if n < 0:
            raise ParameterError(f"S index must be >= 0, got {n}")
        return -self._trace * self._rpow(n)

    def _summability_info(self):
        return SummabilityInfo(SUMMABLE, self._trace, 0.0)


class LogStepSequence(SpectralSequence):
    """mu_n = log(n + 1) - log(n), so that sigma_n = log(n + 1) exactly."""

    family = "logstep"

    @property
    def descriptor(self):
        return "logstep"

    def safe_mu_horizon(self):
        return (1 << 1073) - 1

    def _mu(self, n):
        return math.log1p(1 / n)

    def sigma(self, n):
        if n < 0:
            raise ParameterError(f"sigma index must be >= 0, got {n}")
        if n == 0:
            return 0.0
        return _log_big(n + 1)

    def _summability_info(self):
        return SummabilityInfo(NON_SUMMABLE)


class AqSequence(SpectralSequence):
    """Block-constant sequence with dyadic blocks (2**n_k, 2**n_{k+1}].

    Block exponents are n_k = 2**(k*q) with n_0 = 1; on its block the value
    is (n_{k+1} - n_k) / (2**n_{k+1} - 2**n_k).  The underlying definition
    starts at index 3; indices 1 and 2 are padded with the first block value
    so the library sequence is defined from 1 and stays non-increasing.
    All arithmetic runs on integer block exponents; ratios are evaluated as
    exact big-integer quotients rounded once to float, so no intermediate
    2**n_k is ever materialised as a float.
    """

    family = "aq"

    def __init__(self, q: int):
        super().__init__()
        if not isinstance(q, int) or q < 1:
            raise ParameterError(f"aq block parameter must be an integer >= 1, got {q}")
        if q > 10:
            raise ParameterError(
                f"aq:q={q} has no float-representable eigenvalues (first block underflows)"
            )
        self.q = q
        self._lambda0 = self._lam(0)
        safe_k = 0
        while self._lam(safe_k + 1) > 0.0:
            safe_k += 1
        self._safe_mu = 1 << self._exp(safe_k + 1)
        self._validate_prefix()

    def _exp(self, k: int) -> int:
        # block exponent n_k; cheap enough that no cache is needed
        return 2 ** (k * self.q)

    def _lam(self, k: int) -> float:
        a, b = self._exp(k), self._exp(k + 1)
        if b > 10_000_000:
            raise IndexRangeError(f"aq:q={self.q}: block exponent {b} too large")
        return (b - a) / ((1 << b) - (1 << a))

    def _block_of(self, n) -> int:
        # k with 2**n_k < n <= 2**n_{k+1}; comparisons via bit_length only
        bits = (n - 1).bit_length()  # smallest e with n <= 2**e
        k = 0
        while self._exp(k + 1) < bits:
            k += 1
        return k

    @property
    def descriptor(self):
        return f"aq:q={self.q}"

    def safe_mu_horizon(self):
        return self._safe_mu

    def _mu(self, n):
        if n <= 2:
            return self._lambda0
        return self._lam(self._block_of(n))

    def sigma(self, n):
        if n < 0:
            raise ParameterError(f"sigma index must be >= 0, got {n}")
        if n <= 2:
            return n * self._lambda0
        k = self._block_of(n)
        a, b = self._exp(k), self._exp(k + 1)
        if b > 10_000_000:
            raise IndexRangeError(f"aq:q={self.q}: sigma_{n} block exponent too large")
        part = ((n - (1 << a)) * (b - a)) / ((1 << b) - (1 << a))
        return 2.0 * self._lambda0 + (a - 1) + part

    def _summability_info(self):
        # each block contributes mass n_{k+1} - n_k; the total diverges
        return SummabilityInfo(NON_SUMMABLE)


class ScaledSequence(SpectralSequence):
    """c * inner, delegating all evaluations so homogeneity is exact."""

    family = "scaled"

    def __init__(self, c: float, inner: SpectralSequence):
        super().__init__()
        if not c > 0.0 or math.isinf(c):
            raise ParameterError(f"scale factor must be a positive float, got {c}")
        self.c = float(c)
        self.inner = inner

    @property
    def descriptor(self):
        return f"scale:c={self.c:g},({self.inner.descriptor})"

    def safe_mu_horizon(self):
        return self.inner.safe_mu_horizon()

    def _mu(self, n):
        return self.c * self.inner._mu(n)

    def sigma(self, n):
        return self.c * self.inner.sigma(n)

    def S(self, n):
        return self.c * self.inner.S(n)

    def _summability_info(self):
        info = self.inner.summability()
        if info.classification != SUMMABLE:
            return info
        return SummabilityInfo(
            SUMMABLE, self.c * info.trace, self.c * info.trace_error_bound
        )


class ExplicitSequence(SpectralSequence):
    """Finite explicit sequence, e.g. loaded from a file.

    The summability class is whatever the caller declares; without a
    declaration it stays undetermined and S_n refuses to evaluate while
    sigma_n remains available.
    """

    family = "explicit"

    def __init__(self, values, trace: float | None = None, summable: bool | None = None):
        super().__init__()
        vals = [float(v) for v in values]
        if not vals:
            raise ParameterError("explicit sequence must contain at least one value")
        for i, v in enumerate(vals):
            if not v > 0.0:
                raise MonotonicityError(f"explicit value #{i + 1} = {v!r} is not positive")
            if i and v > vals[i - 1] * (1.0 + 1e-15):
                raise MonotonicityError(
                    f"explicit values increase at position {i + 1}: {vals[i - 1]!r} -> {v!r}"
                )
        self._values = vals
        if trace is not None and summable is False:
            raise ParameterError("a declared trace contradicts summable=False")
        self._declared_trace = trace
        self._declared_summable = summable if trace is None else True
        self._source = "values"

    @property
    def descriptor(self):
        return f"file:<{self._source}>"

    def __len__(self):
        return len(self._values)

    def safe_mu_horizon(self):
        return len(self._values)

    def _mu(self, n):
        if n > len(self._values):
            raise IndexRangeError(
                f"explicit sequence has {len(self._values)} values, index {n} requested"
            )
        return self._values[n - 1]

    def _sigma_large(self, n):
        if n > len(self._values):
            raise IndexRangeError(
                f"explicit sequence has {len(self._values)} values, index {n} requested"
            )
        return self._sigma_direct(n)  # only reachable when len > DIRECT_CAP

    def sigma(self, n):
        if n < 0:
            raise ParameterError(f"sigma index must be >= 0, got {n}")
        if n > len(self._values):
            raise IndexRangeError(
                f"explicit sequence has {len(self._values)} values, index {n} requested"
            )
        if n == 0:
            return 0.0
        return self._sigma_direct(n)

    def _summability_info(self):
        if self._declared_trace is not None:
            return SummabilityInfo(SUMMABLE, float(self._declared_trace), 0.0)
        if self._declared_summable is False:
            return SummabilityInfo(NON_SUMMABLE)
        return SummabilityInfo(UNDETERMINED)


class SumSequence(SpectralSequence):
    """Pointwise sum of two simultaneously diagonal sequences.

    mu_n = mu_n(A) + mu_n(B) is non-increasing because both parts are, and
    sigma/S delegate additively.  A sum with one non-summable part is
    non-summable; note that in the mixed case S_n = S_n(A) + S_n(B) + tr(B)
    carries the trace of the summable part as a constant offset.
    """

    family = "sum"

    def __init__(self, a: SpectralSequence, b: SpectralSequence):
        super().__init__()
        ca = a.summability().classification
        cb = b.summability().classification
        if UNDETERMINED in (ca, cb):
            raise UndeterminedSummabilityError(
                "both parts of a pointwise sum need a certified summability class"
            )
        self.a = a
        self.b = b

    @property
    def descriptor(self):
        return f"sum({self.a.descriptor},{self.b.descriptor})"

    def safe_mu_horizon(self):
        return min(self.a.safe_mu_horizon(), self.b.safe_mu_horizon())

    def _mu(self, n):
        return self.a._mu(n) + self.b._mu(n)

    def sigma(self, n):
        return self.a.sigma(n) + self.b.sigma(n)

    def S(self, n):
        info = self.summability()
        if info.summable:
            return self.a.S(n) + self.b.S(n)
        return self.sigma(n)

    def _summability_info(self):
        ia, ib = self.a.summability(), self.b.summability()
        if ia.summable and ib.summable:
            return SummabilityInfo(
                SUMMABLE, ia.trace + ib.trace, ia.trace_error_bound + ib.trace_error_bound
            )
        return SummabilityInfo(NON_SUMMABLE)


# ---------------------------------------------------------------------------
# Descriptor DSL
#   harmonic | power:alpha=<float> | powlog:alpha=<float> | geometric:r=<float>
#   | logstep | aq:q=<int> | scale:c=<float>,(<spec>) | file:<path>
# ---------------------------------------------------------------------------


def _parse_params(family: str, text: str) -> dict:
    out = {}
    for item in text.split(","):
        if "=" not in item:
            raise SequenceSpecError(f"{family}: malformed parameter {item!r}")
        key, _, raw = item.partition("=")
        out[key.strip()] = raw.strip()
    return out


def _require_float(family: str, params: dict, key: str) -> float:
    if key not in params:
        raise SequenceSpecError(f"{family} needs parameter {key!r}")
    try:
        return float(params[key])
    except ValueError as exc:
        raise SequenceSpecError(f"{family}: {key}={params[key]!r} is not a float") from exc


def make_family(spec: str) -> SpectralSequence:
    """Build a SpectralSequence from its descriptor string.

    The first 10**4 terms (or the family's full float-safe domain if that
    is shorter) are probed for positivity and monotonicity at construction.
    """
    text = spec.strip()
    if not text:
        raise SequenceSpecError("empty sequence descriptor")
    name, sep, rest = text.partition(":")
    name = name.strip()
    if name == "harmonic":
        if sep:
            raise SequenceSpecError("harmonic takes no parameters")
        return HarmonicSequence()
    if name == "logstep":
        if sep:
            raise SequenceSpecError("logstep takes no parameters")
        return LogStepSequence()
    if name == "power":
        return PowerSequence(_require_float("power", _parse_params("power", rest), "alpha"))
    if name == "powlog":
        return PowLogSequence(_require_float("powlog", _parse_params("powlog", rest), "alpha"))
    if name == "geometric":
        return GeometricSequence(_require_float("geometric", _parse_params("geometric", rest), "r"))
    if name == "aq":
        params = _parse_params("aq", rest)
        if "q" not in params:
            raise SequenceSpecError("aq needs parameter 'q'")
        try:
            q = int(params["q"])
        except ValueError as exc:
            raise SequenceSpecError(f"aq: q={params['q']!r} is not an integer") from exc
        return AqSequence(q)
    if name == "scale":
        return _parse_scale(rest)
    if name == "file":
        if not rest:
            raise SequenceSpecError("file: needs a path")
        return load_sequence_file(rest)
    raise SequenceSpecError(f"unknown sequence family {name!r}")


def _parse_scale(rest: str) -> ScaledSequence:
    head, sep, tail = rest.partition(",")
    if not sep or not tail.startswith("(") or not tail.endswith(")"):
        raise SequenceSpecError("scale syntax is scale:c=<float>,(<spec>)")
    params = _parse_params("scale", head)
    c = _require_float("scale", params, "c")
    inner = make_family(tail[1:-1])
    return ScaledSequence(c, inner)


def load_sequence_file(path: str) -> ExplicitSequence:
    """Load an explicit sequence: one positive decimal per line.

    An optional first line ``# trace=<float>`` or ``# trace=nonsummable``
    declares the summability class.
    """
    trace: float | None = None
    summable: bool | None = None
    values = []
    with open(path, "r", encoding="utf-8") as fh:
        lines = [ln.strip() for ln in fh]
    body = [ln for ln in lines if ln]
    if body and body[0].startswith("#"):
        header = body.pop(0)
        decl = header.lstrip("#").strip()
        if not decl.startswith("trace="):
            raise SequenceSpecError(f"unrecognised header {header!r}")
        value = decl[len("trace=") :].strip()
        if value == "nonsummable":
            summable = False
        else:
            try:
                trace = float(value)
            except ValueError as exc:
                raise SequenceSpecError(f"bad trace declaration {header!r}") from exc
    for ln in body:
        if ln.startswith("#"):
            raise SequenceSpecError(f"unexpected comment line {ln!r} after data start")
        try:
            values.append(float(ln))
        except ValueError as exc:
            raise SequenceSpecError(f"bad sequence value {ln!r}") from exc
    seq = ExplicitSequence(values, trace=trace, summable=summable)
    seq._source = path
    return seq


def from_values(values, trace: float | None = None, summable: bool | None = None) -> ExplicitSequence:
    """Explicit in-memory sequence with an optionally declared class."""
    return ExplicitSequence(values, trace=trace, summable=summable)


def scale(c: float, seq: SpectralSequence) -> ScaledSequence:
    return ScaledSequence(c, seq)


def pointwise_sum(a: SpectralSequence, b: SpectralSequence) -> SumSequence:
    return SumSequence(a, b)


# -- module-level conveniences matching the operation surface ----------------


def mu(seq: SpectralSequence, n) -> float:
    return seq.mu(n)


def sigma_and_S(seq: SpectralSequence, n) -> tuple[float, float]:
    return seq.sigma_and_S(n)


def trace_value(seq: SpectralSequence) -> SummabilityInfo:
    return seq.summability()
