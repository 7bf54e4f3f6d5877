"""Closed-form face-count bounds, recursions, and the binomial identities behind them.

All values are exact integers; the closed form for the k-face bound is a
rational expression whose integrality is asserted rather than assumed.  The
alternating binomial identities are checked on their full valid domain,
which excludes the isolated lattice points where the plain alternating row
sum does not collapse (k = n for the first identity, n - 2k + j = 0 for the
second); unit tests pin the nonzero values at those excluded points.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Optional

from .common import Verdict
from .errors import BadArity, BoundViolated, OutOfRange
from .metrics import Metric
from .facevectors import TightSpanVectors


def F_bound(n: int, k: int) -> int:
    """Largest possible number of k-faces of a tight span on n points."""
    if not 0 <= k <= n // 2:
        raise OutOfRange(f"k must lie in 0..{n // 2} for n={n}")
    value = Fraction(2) ** (n - 2 * k - 1) * Fraction(n, n - k) * comb(n - k, k)
    if value.denominator != 1:
        raise AssertionError(f"bound formula not integral at ({n},{k}): {value}")
    return value.numerator


def f_bound_or_zero(n: int, k: int) -> int:
    """F_bound extended by zero above the dimension cap (for the recursion)."""
    if k < 0 or k > n // 2:
        return 0
    return F_bound(n, k)


def H_bound(n: int, k: int, ideal: bool) -> int:
    """Largest h-vector entry: C(n,2k), minus n at k = 1 for ideal metrics."""
    if not 0 <= k <= n // 2:
        raise OutOfRange(f"k must lie in 0..{n // 2} for n={n}")
    value = comb(n, 2 * k)
    if ideal and k == 1:
        value -= n
    return value


def lower_bound_top(n: int) -> int:
    """Guaranteed number of top faces when the tight span has dimension ceil(n/3)."""
    if n < 4:
        raise BadArity("lower bound stated for n >= 4")
    k, r = divmod(n, 3)
    if r == 0:
        return n * 3 ** (k - 2) + 3**k
    if r == 1:
        return 3 ** (k - 1)
    return 5 * 3 ** (k - 1)


def identity_sum_a(n: int, k: int) -> int:
    """sum_i (-1)^(i+k) C(n,i) C(i,k-1) (n-i); equals n when k = 1, else 0 for k < n."""
    total = 0
    for i in range(1, n + 1):
        if k - 1 < 0 or k - 1 > i:
            continue
        total += (-1) ** (i + k) * comb(n, i) * comb(i, k - 1) * (n - i)
    return total


def identity_sum_b(n: int, k: int, j: int) -> int:
    """sum_{i>=j} (-1)^(i+j-1) C(n,i) C(i,j) C(n-i, 2(k-j)); zero unless n-2k+j = 0."""
    total = 0
    for i in range(j, n + 1):
        c = comb(n - i, 2 * (k - j)) if 0 <= 2 * (k - j) <= n - i else 0
        if c:
            sign = -1 if (i + j - 1) % 2 else 1
            total += sign * comb(n, i) * comb(i, j) * c
    return total


def identity_checks(n_max: int) -> Verdict:
    """Both alternating identities over their full valid domain up to n_max."""
    if n_max < 4:
        raise BadArity("need n_max >= 4")
    for n in range(1, n_max + 1):
        for k in range(0, n):  # the collapse needs n - k >= 1
            expected = n if k == 1 else 0
            got = identity_sum_a(n, k)
            if got != expected:
                return Verdict(False, ("a", n, k, got, expected))
        for k in range(0, n + 1):
            for j in range(0, k + 1):
                if n - 2 * k + j == 0:
                    continue  # the alternating row does not collapse here
                got = identity_sum_b(n, k, j)
                if got != 0:
                    return Verdict(False, ("b", n, k, j, got, 0))
    return Verdict(True)


@dataclass(frozen=True)
class BoundRow:
    k: int
    f_value: int
    f_bound: int
    f_attained: bool
    h_value: int
    h_bound: int
    h_attained: bool


@dataclass(frozen=True)
class BoundReport:
    n: int
    rows: tuple[BoundRow, ...]
    dim: int
    dim_low: int
    dim_high: int
    top_count: Optional[int]  # top faces when dim hits the lower limit
    top_lower_bound: Optional[int]

    @property
    def all_f_attained(self) -> bool:
        return all(r.f_attained for r in self.rows)

    @property
    def all_h_attained(self) -> bool:
        return all(r.h_attained for r in self.rows)


def verify_metric_against_bounds(d: Metric, tv: TightSpanVectors) -> BoundReport:
    """Assert every face and h count against its proven bound; mark attained rows.

    The top-face lower bound applies only when the tight span has the least
    possible dimension ceil(n/3).  Any violation raises BoundViolated: the
    bounds are theorems, so a violation is an implementation bug.
    """
    n = d.n
    rows = []
    for k in range(0, n // 2 + 1):
        fv = tv.fT[k] if k < len(tv.fT) else 0
        hv = tv.hT[k] if k < len(tv.hT) else 0
        fb = F_bound(n, k)
        hb = H_bound(n, k, ideal=False)
        if fv > fb:
            raise BoundViolated(f"f_{k} = {fv} exceeds bound {fb} at n={n}")
        if hv > hb:
            raise BoundViolated(f"h_{k} = {hv} exceeds bound {hb} at n={n}")
        rows.append(BoundRow(k, fv, fb, fv == fb, hv, hb, hv == hb))

    dim = tv.dim
    low, high = -(-n // 3), n // 2
    if not low <= dim <= high:
        raise BoundViolated(f"dim {dim} outside [{low}, {high}] at n={n}")
    top_count = top_lower = None
    if dim == low:
        top_count = tv.fT[dim]
        top_lower = lower_bound_top(n)
        if top_count < top_lower:
            raise BoundViolated(
                f"top count {top_count} below lower bound {top_lower} at n={n}"
            )
    return BoundReport(n, tuple(rows), dim, low, high, top_count, top_lower)


def bound_table(n_lo: int, n_hi: int) -> str:
    """Aligned text table of the f-bounds with the volume row."""
    lines = ["  n | 2^(n-1) | F_k(n) for k = 0..floor(n/2)"]
    for n in range(n_lo, n_hi + 1):
        values = [F_bound(n, k) for k in range(n // 2 + 1)]
        lines.append(f"{n:3d} | {1 << (n - 1):7d} | " + " ".join(map(str, values)))
    return "\n".join(lines)
