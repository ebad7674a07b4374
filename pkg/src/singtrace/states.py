"""Finite-window invariant-state evaluators and structured subsets of N.

Window states replace the non-constructive invariant means: a translation
window averages a over k+1..k+n, a dyadic window averages over the
geometric orbit (2m-1) 2^(i-1) for i in the same range.  The bijection
(m, n) -> (2m-1) 2^(n-1) turns doubling on N into translation in the
second coordinate, which is what makes the two window modes interchange.

Indicator sequences (structured sets) are counted in exact integer
arithmetic; floating point enters only in the final division.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .errors import ParameterError, PartitionError, SequenceSpecError
from .summation import NeumaierSum, neumaier_sum

_INT64_LIMIT = 1 << 63


@dataclass(frozen=True)
class WindowState:
    """Finite averaging window: translation over an index range, or dyadic
    along the orbit of an odd seed.

    ``m`` selects the odd part (2m-1) in dyadic mode and is ignored for
    translation windows; ``n = 1`` degenerates to point evaluation.
    """

    mode: str               # "translation" | "dyadic"
    k: int                  # start offset >= 0
    n: int                  # window length >= 1
    m: int = 1              # odd-part selector, dyadic mode only

    def __post_init__(self):
        if self.mode not in ("translation", "dyadic"):
            raise ParameterError(f"unknown window mode {self.mode!r}")
        if self.k < 0:
            raise ParameterError(f"window offset k must be >= 0, got {self.k}")
        if self.n < 1:
            raise ParameterError(f"window length n must be >= 1, got {self.n}")
        if self.m < 1:
            raise ParameterError(f"odd-part selector m must be >= 1, got {self.m}")
        if self.mode == "dyadic":
            top = (2 * self.m - 1) << (self.k + self.n - 1)
            if top >= _INT64_LIMIT:
                raise ParameterError(
                    f"dyadic window reaches index {top}, beyond the 64-bit range"
                )

    def indices(self):
        if self.mode == "translation":
            return range(self.k + 1, self.k + self.n + 1)
        odd = 2 * self.m - 1
        return (odd << (i - 1) for i in range(self.k + 1, self.k + self.n + 1))


@dataclass
class StateEstimate:
    """Window mean with the oscillation of its prefix means.

    ``hits`` is the exact integer count for indicator sequences and None
    otherwise.
    """

    mean: float
    count: int
    oscillation: float
    hits: int | None = None


@dataclass(frozen=True)
class SetSpec:
    """Structured subset of N: squares, dyadicblocks, or explicit intervals."""

    kind: str                               # "squares" | "dyadicblocks" | "intervals"
    intervals: tuple = ()

    def __post_init__(self):
        if self.kind not in ("squares", "dyadicblocks", "intervals"):
            raise SequenceSpecError(f"unknown set kind {self.kind!r}")
        if self.kind == "intervals":
            prev_hi = 0
            if not self.intervals:
                raise SequenceSpecError("intervals set needs at least one interval")
            for lo, hi in self.intervals:
                if lo > hi or lo < 1:
                    raise SequenceSpecError(f"bad interval [{lo}, {hi}]")
                if lo <= prev_hi:
                    raise SequenceSpecError(
                        f"intervals must be sorted and disjoint; [{lo}, {hi}] overlaps"
                    )
                prev_hi = hi


class IndicatorAccessor:
    """0/1 accessor for a structured set with O(1) membership tests."""

    is_indicator = True

    def __init__(self, spec: SetSpec):
        self.spec = spec
        if spec.kind == "intervals":
            self._los = [lo for lo, _ in spec.intervals]
            self._his = [hi for _, hi in spec.intervals]

    def contains(self, i: int) -> bool:
        if i < 1:
            return False
        kind = self.spec.kind
        if kind == "squares":
            # blocks [(2j-1)^2, (2j)^2], both endpoints included: every
            # perfect square is a block boundary, and a non-square sits in
            # a block exactly when its integer square root is odd
            root = math.isqrt(i)
            return root * root == i or root % 2 == 1
        if kind == "dyadicblocks":
            # blocks (2^(2q-1), 2^(2q)]: even bit-length of i-1, from (2, 4]
            if i < 3:
                return False
            return (i - 1).bit_length() % 2 == 0
        pos = bisect_right(self._los, i) - 1
        return pos >= 0 and i <= self._his[pos]

    def __call__(self, i: int) -> int:
        return 1 if self.contains(i) else 0


def structured_set(spec) -> IndicatorAccessor:
    """Accessor for a SetSpec or one of the descriptor strings
    ``squares``, ``dyadicblocks``, ``intervals:file=<path>``."""
    if isinstance(spec, SetSpec):
        return IndicatorAccessor(spec)
    text = str(spec).strip()
    if text == "squares":
        return IndicatorAccessor(SetSpec("squares"))
    if text == "dyadicblocks":
        return IndicatorAccessor(SetSpec("dyadicblocks"))
    if text.startswith("intervals:"):
        rest = text[len("intervals:") :]
        if not rest.startswith("file="):
            raise SequenceSpecError("intervals syntax is intervals:file=<path>")
        return IndicatorAccessor(SetSpec("intervals", load_intervals(rest[len("file=") :])))
    raise SequenceSpecError(f"unknown set descriptor {spec!r}")


def load_intervals(path: str) -> tuple:
    out = []
    with open(path, "r", encoding="utf-8") as fh:
        for raw in fh:
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split(",")
            if len(parts) != 2:
                raise SequenceSpecError(f"interval line must be 'lo,hi', got {line!r}")
            out.append((int(parts[0]), int(parts[1])))
    return tuple(out)


# ---------------------------------------------------------------------------
# The doubling <-> translation bijection
# ---------------------------------------------------------------------------


def eta(m: int, n: int) -> int:
    """(m, n) -> (2m - 1) 2^(n - 1), a bijection of N x N onto N."""
    if m < 1 or n < 1:
        raise ParameterError(f"eta needs m, n >= 1, got ({m}, {n})")
    j = (2 * m - 1) << (n - 1)
    if j >= _INT64_LIMIT:
        raise ParameterError(f"eta({m}, {n}) = {j} exceeds the 64-bit range")
    return j


def eta_inv(j: int) -> tuple[int, int]:
    if j < 1:
        raise ParameterError(f"eta_inv needs j >= 1, got {j}")
    n = (j & -j).bit_length()  # trailing zeros + 1
    odd = j >> (n - 1)
    return (odd + 1) // 2, n


# ---------------------------------------------------------------------------
# Window means
# ---------------------------------------------------------------------------


def window_mean(a: Callable, w: WindowState) -> StateEstimate:
    """Mean of ``a`` over the window, with prefix-mean oscillation.

    Indicator accessors (``is_indicator`` attribute) are counted in integer
    arithmetic and divided once, so 0/1 means are exact rationals rounded
    a single time.
    """
    if getattr(a, "is_indicator", False):
        hits = 0
        prefix: list[float] = []
        for j, i in enumerate(w.indices(), start=1):
            hits += a(i)
            prefix.append(hits / j)
        return StateEstimate(
            mean=hits / w.n,
            count=w.n,
            oscillation=_tail_oscillation(prefix),
            hits=hits,
        )
    acc = NeumaierSum()
    prefix = []
    for j, i in enumerate(w.indices(), start=1):
        acc.add(float(a(i)))
        prefix.append(acc.value / j)
    return StateEstimate(
        mean=acc.value / w.n,
        count=w.n,
        oscillation=_tail_oscillation(prefix),
    )


def _tail_oscillation(prefix_means: list) -> float:
    if not prefix_means:
        return 0.0
    q = max(1, len(prefix_means) // 4)
    tail = prefix_means[-q:]
    return max(tail) - min(tail)


# ---------------------------------------------------------------------------
# Ergodicity probes
# ---------------------------------------------------------------------------


@dataclass
class ErgodicityRecord:
    window: WindowState
    estimate: StateEstimate
    translation_defect: float
    closed_form: float | None = None
    closed_form_exact: bool | None = None
    single_block: bool | None = None


def _even_square_root(x: int) -> int | None:
    root = math.isqrt(x)
    if root * root == x and root % 2 == 0 and root > 0:
        return root // 2
    return None


def ergodicity_probe(spec, windows) -> list:
    """Window means of the set indicator with a finite translation defect.

    For each window the defect |mean(chi) - mean(chi shifted by one)| is
    the finite stand-in for the invariance of the limiting state.  On
    square-aligned windows k = (2r)^2, k+n = (2s)^2 over the squares set,
    the exact rational (s+r+1)/(2(s+r)) is emitted next to the measured
    mean and compared in integer arithmetic.  For the dyadicblocks set the
    record notes whether the window sits inside a single block (in which
    case the measured mean is 0 or 1, however long the window runs).
    """
    chi = structured_set(spec) if not isinstance(spec, IndicatorAccessor) else spec
    shifted = _shift_accessor(chi)
    out = []
    for w in windows:
        est = window_mean(chi, w)
        est_shift = window_mean(shifted, w)
        record = ErgodicityRecord(
            window=w,
            estimate=est,
            translation_defect=abs(est.mean - est_shift.mean),
        )
        if chi.spec.kind == "squares" and w.mode == "translation":
            r = _even_square_root(w.k)
            s = _even_square_root(w.k + w.n)
            if r is not None and s is not None and s > r:
                cf = Fraction(s + r + 1, 2 * (s + r))
                record.closed_form = float(cf)
                record.closed_form_exact = (
                    est.hits * cf.denominator == cf.numerator * w.n
                )
        if chi.spec.kind == "dyadicblocks" and w.mode == "translation":
            lo, hi = w.k + 1, w.k + w.n
            record.single_block = (lo - 1).bit_length() == (hi - 1).bit_length()
        out.append(record)
    return out


class _shift_accessor:
    is_indicator = True

    def __init__(self, inner):
        self.inner = inner

    def __call__(self, i: int):
        return self.inner(i + 1)


# ---------------------------------------------------------------------------
# Window equivalence and interval splitting
# ---------------------------------------------------------------------------


def window_equivalence_defect(
    w1: WindowState, w2: WindowState, a: Callable
) -> tuple[float, float]:
    """|mean_{w1}(a) - mean_{w2}(a)| with its offset/length bound.

    Both windows must be translation mode.  The bound
    sup|a| (2|k-l| + 2|p-n|) / min(n, p) uses the sup over the values the
    two windows actually touch; the defect may not exceed it (up to 1e-12).
    """
    if w1.mode != "translation" or w2.mode != "translation":
        raise ParameterError("window equivalence requires two translation windows")
    vals1 = [float(a(i)) for i in w1.indices()]
    vals2 = [float(a(i)) for i in w2.indices()]
    mean1 = neumaier_sum(vals1) / w1.n
    mean2 = neumaier_sum(vals2) / w2.n
    defect = abs(mean1 - mean2)
    sup = max(
        max((abs(v) for v in vals1), default=0.0),
        max((abs(v) for v in vals2), default=0.0),
    )
    bound = sup * (2 * abs(w1.k - w2.k) + 2 * abs(w2.n - w1.n)) / min(w1.n, w2.n)
    if defect > bound + 1e-12:
        raise ParameterError(
            f"window equivalence defect {defect:g} exceeds its bound {bound:g}"
        )
    return defect, bound


def interval_split_check(interval, parts, a: Callable) -> float:
    """Residual of the weighted-mean identity over a 3-way interval split.

    ``interval`` is a closed integer interval (lo, hi) and ``parts`` a
    triple (I0, J, I1) of consecutive sub-intervals covering it exactly;
    any part may be None (empty, weight zero).  The identity
    mean_I = sum (|part|/|I|) mean_part is exact, so the residual must stay
    below 1e-12 sup|a|; a larger residual raises.
    """
    lo, hi = interval
    if lo > hi:
        raise PartitionError(f"empty base interval [{lo}, {hi}]")
    cleaned = [p for p in parts if p is not None]
    if len(parts) != 3:
        raise PartitionError("expected a partition triple (I0, J, I1)")
    cursor = lo
    for p in cleaned:
        p_lo, p_hi = p
        if p_lo > p_hi:
            raise PartitionError(f"empty part [{p_lo}, {p_hi}] must be passed as None")
        if p_lo != cursor:
            raise PartitionError(
                f"parts must tile [{lo}, {hi}] in order; gap or overlap at {p_lo}"
            )
        cursor = p_hi + 1
    if cursor != hi + 1:
        raise PartitionError(f"parts stop at {cursor - 1}, expected {hi}")

    total = hi - lo + 1
    vals = {i: float(a(i)) for i in range(lo, hi + 1)}
    mean_all = neumaier_sum(vals[i] for i in range(lo, hi + 1)) / total
    weighted = NeumaierSum()
    for p in cleaned:
        p_lo, p_hi = p
        size = p_hi - p_lo + 1
        mean_p = neumaier_sum(vals[i] for i in range(p_lo, p_hi + 1)) / size
        weighted.add((size / total) * mean_p)
    residual = mean_all - weighted.value
    sup = max((abs(v) for v in vals.values()), default=0.0)
    if abs(residual) > 1e-12 * max(sup, 1e-300):
        raise PartitionError(
            f"split residual {residual:g} exceeds 1e-12 * sup|a| = {1e-12 * sup:g}"
        )
    return residual


def eta_pullback(a: Callable, m: int):
    """Row of ``a`` along the eta orbit: i -> a((2m-1) 2^(i-1)).

    The dyadic mean of ``a`` over (k, m, n) equals the translation mean of
    this pullback over (k, n) exactly.
    """

    def row(i: int):
        return a((2 * m - 1) << (i - 1))

    return row
