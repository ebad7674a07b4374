"""Cesaro trace values of the block-constant aq operator, two ways.

For the sequence with value (n_{k+1} - n_k)/(2^n_{k+1} - 2^n_k) on the
dyadic block (2^n_k, 2^n_{k+1}], n_k = 2^(kq), the partial sums at powers
of two have the closed form

    sigma(2^m) = n_k + (2^m - 2^n_k)/(2^n_{k+1} - 2^n_k) (n_{k+1} - n_k) - 1

for n_k < m <= n_{k+1}, and the Cesaro average
(1/(p log 2)) sum_{m<=p} sigma(2^m)/m converges, for p = 2^(sq+r) with
1 <= r <= q, to the benchmark value 2^(-r) (q/(2^q - 1) + r); for general
p the limit is t (q/(2^q - 1) - log2 t) with t the dyadic position
2^(sq)/p.  The two evaluation paths below (term-by-term, and block-closed
forms) must agree wherever both run.

All dyadic ratios are evaluated with non-positive exponents only, so no
2^(n_k) is ever materialised as a float.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from fractions import Fraction

from .errors import ParameterError
from .seqcore import LOG2, harmonic_number
from .summation import NeumaierSum

DIRECT_GUARD = 1 << 26     # iteration guard for the term-by-term path
_SHIFT_FLOOR = -1100       # 2**e underflows to zero below roughly -1074


@dataclass(frozen=True)
class AqParams:
    """Block parameter q >= 1; block exponents are n_k = 2^(kq), n_0 = 1."""

    q: int

    def __post_init__(self):
        if not isinstance(self.q, int) or self.q < 1:
            raise ParameterError(f"q must be an integer >= 1, got {self.q}")

    def exponent(self, k: int) -> int:
        return 2 ** (k * self.q)

    def block_of(self, m: int) -> int:
        """k with n_k < m <= n_{k+1}; defined for m >= 2."""
        if m < 2:
            raise ParameterError(f"block lookup needs m >= 2, got {m}")
        k = 0
        while self.exponent(k + 1) < m:
            k += 1
        return k


@dataclass
class Example4Report:
    q: int
    s: int
    r: int
    p: int
    method: str               # "direct" | "block"
    estimate: float
    t: float                  # dyadic position 2^(sq)/p
    reference: float
    error: float
    runtime_ms: float


def aq_sigma_pow2(params: AqParams, m: int) -> float:
    """sigma(2^m) in floats; sigma(2^1) is taken as 0 (empty sum).

    The dyadic ratio is evaluated as
    2^(m - n_{k+1}) (1 - 2^(n_k - m)) / (1 - 2^(n_k - n_{k+1})),
    every exponent <= 0.
    """
    if m < 1:
        raise ParameterError(f"m must be >= 1, got {m}")
    if m == 1:
        return 0.0
    k = params.block_of(m)
    a, b = params.exponent(k), params.exponent(k + 1)
    ratio = (
        math.ldexp(1.0, max(m - b, _SHIFT_FLOOR))
        * (1.0 - math.ldexp(1.0, max(a - m, _SHIFT_FLOOR)))
        / (1.0 - math.ldexp(1.0, max(a - b, _SHIFT_FLOOR)))
    )
    return a + ratio * (b - a) - 1.0


def aq_sigma_pow2_exact(params: AqParams, m: int) -> Fraction:
    """sigma(2^m) as an exact rational (small m only)."""
    if m < 1:
        raise ParameterError(f"m must be >= 1, got {m}")
    if m == 1:
        return Fraction(0)
    k = params.block_of(m)
    a, b = params.exponent(k), params.exponent(k + 1)
    return a - 1 + Fraction(2**m - 2**a, 2**b - 2**a) * (b - a)


def cesaro_direct(params: AqParams, p: int) -> float:
    """(1/(p log 2)) sum_{m=1}^{p} sigma(2^m)/m, term by term."""
    if p < 2:
        raise ParameterError(f"p must be >= 2, got {p}")
    if p > DIRECT_GUARD:
        raise ParameterError(
            f"p = {p} exceeds the direct-path guard {DIRECT_GUARD}; use the block path"
        )
    acc = NeumaierSum()
    for m in range(1, p + 1):
        acc.add(aq_sigma_pow2(params, m) / m)
    return acc.value / (p * LOG2)


def _block_partial(params: AqParams, k: int, top: int) -> float:
    """sum_{m = n_k + 1}^{top} sigma(2^m)/m via the closed decomposition.

    Valid for n_k < top <= n_{k+1}.  Uses harmonic-number differences for
    sum 1/m and the shifted geometric sum for sum 2^m/m, truncated where
    2^(m - n_{k+1}) underflows.
    """
    a, b = params.exponent(k), params.exponent(k + 1)
    shift_ab = math.ldexp(1.0, max(a - b, _SHIFT_FLOOR))
    bracket = (a - 1.0) - (b - a) * shift_ab / (1.0 - shift_ab)
    h_part = bracket * (harmonic_number(top) - harmonic_number(a))

    lo = max(a + 1, top + _SHIFT_FLOOR)
    geo = NeumaierSum()
    for m in range(lo, top + 1):
        e = m - b
        if e < _SHIFT_FLOOR:
            continue
        geo.add(math.ldexp(1.0, e) / m)
    coeff = (b - a) / (1.0 - shift_ab)
    return h_part + coeff * geo.value


def cesaro_block(params: AqParams, s: int, r: int) -> float:
    """Block-accelerated Cesaro value at p = 2^(sq + r), 1 <= r <= q.

    Full blocks k < s use the closed decomposition; the trailing partial
    block n_s < m <= p uses the same decomposition with its upper limit at
    p.  Cost is O(s) harmonic evaluations plus O(s) short shifted sums,
    independent of p.
    """
    q = params.q
    if not 1 <= r <= q:
        raise ParameterError(f"need 1 <= r <= q, got r = {r}, q = {q}")
    if s < 1:
        raise ParameterError(f"s must be >= 1, got {s}")
    exp_p = s * q + r
    if exp_p > 10_000_000:
        raise ParameterError(f"p = 2^{exp_p} is out of range")
    p = 1 << exp_p

    acc = NeumaierSum()
    for k in range(s):
        acc.add(_block_partial(params, k, params.exponent(k + 1)))
    if p > params.exponent(s):
        acc.add(_block_partial(params, s, p))
    # value = total / (p log 2), with p folded in as an exponent shift
    return math.ldexp(acc.value, -exp_p) / LOG2


def reference_dyadic(params: AqParams, r: int) -> float:
    """Benchmark value 2^(-r) (q/(2^q - 1) + r) at p = 2^(sq + r)."""
    q = params.q
    if not 1 <= r <= q:
        raise ParameterError(f"need 1 <= r <= q, got r = {r}, q = {q}")
    return 2.0**-r * (q / (2.0**q - 1.0) + r)


def reference_curve(params: AqParams, t: float) -> float:
    """General benchmark t (q/(2^q - 1) - log2 t) for t in [2^-q, 1]."""
    q = params.q
    if not 2.0**-q <= t <= 1.0:
        raise ParameterError(f"t = {t} outside [2^-{q}, 1]")
    return t * (q / (2.0**q - 1.0) - math.log2(t))


def reproduce(params: AqParams, s: int, r: int, method: str = "direct") -> Example4Report:
    """Run one Cesaro evaluation and compare with the benchmark value."""
    q = params.q
    if not 1 <= r <= q:
        raise ParameterError(f"need 1 <= r <= q, got r = {r}, q = {q}")
    p = 1 << (s * q + r)
    start = time.perf_counter()
    if method == "direct":
        estimate = cesaro_direct(params, p)
    elif method == "block":
        estimate = cesaro_block(params, s, r)
    else:
        raise ParameterError(f"method must be 'direct' or 'block', got {method!r}")
    runtime_ms = (time.perf_counter() - start) * 1e3
    reference = reference_dyadic(params, r)
    return Example4Report(
        q=q,
        s=s,
        r=r,
        p=p,
        method=method,
        estimate=estimate,
        t=2.0**-r,
        reference=reference,
        error=abs(estimate - reference),
        runtime_ms=runtime_ms,
    )


def derive_s_r(params: AqParams, p: int) -> tuple[int, int | None, float]:
    """Split a raw cutoff p into (s, r, t) with n_s < p <= n_{s+1}.

    r is the dyadic offset when p = 2^(sq + r) exactly (else None), and
    t = 2^(sq)/p is the position of p inside its block.
    """
    if p < 2:
        raise ParameterError(f"p must be >= 2, got {p}")
    s = 0
    while params.exponent(s + 1) < p:
        s += 1
    # now n_s < p <= n_{s+1} except when p <= n_1
    if p <= params.exponent(s):
        raise ParameterError(f"no block found for p = {p}")
    r = None
    if p & (p - 1) == 0:
        offset = p.bit_length() - 1 - s * params.q
        if 1 <= offset <= params.q:
            r = offset
    t = math.ldexp(1.0, s * params.q - p.bit_length() + 1) * (
        (1 << (p.bit_length() - 1)) / p
    )
    return s, r, t


def reproduce_from_p(params: AqParams, p: int, method: str = "direct") -> Example4Report:
    """Like :func:`reproduce` for a raw cutoff p, using the curve reference
    when p is not of the dyadic 2^(sq+r) form."""
    s, r, t = derive_s_r(params, p)
    if r is not None:
        return reproduce(params, s, r, method)
    if method != "direct":
        raise ParameterError("the block path needs p = 2^(sq + r); use method='direct'")
    start = time.perf_counter()
    estimate = cesaro_direct(params, p)
    runtime_ms = (time.perf_counter() - start) * 1e3
    reference = reference_curve(params, t)
    return Example4Report(
        q=params.q,
        s=s,
        r=0,
        p=p,
        method=method,
        estimate=estimate,
        t=t,
        reference=reference,
        error=abs(estimate - reference),
        runtime_ms=runtime_ms,
    )
