"""Shared helpers: pair indexing, exact rational parsing, verdicts.

Nodes are numbered 1..n throughout.  The C(n,2) unordered pairs {i,j}, i<j,
are laid out in lexicographic order (1,2),(1,3),...,(1,n),(2,3),...,(n-1,n);
pair_index gives the 0-based slot of a pair in that order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache


def pair_index(n: int, i: int, j: int) -> int:
    """Slot of the pair {i,j}, 1 <= i < j <= n, in lexicographic order."""
    if i > j:
        i, j = j, i
    return (i - 1) * n - i * (i + 1) // 2 + j - 1


@lru_cache(maxsize=None)
def pair_table(n: int) -> tuple[tuple[int, int], ...]:
    """All pairs {i,j} of 1..n in lexicographic order."""
    return tuple((i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1))


def num_pairs(n: int) -> int:
    return n * (n - 1) // 2


def parse_rational(value: object) -> Fraction:
    """Exact rational from "p/q" or "p" strings or int; floats are rejected."""
    if isinstance(value, bool):
        raise ValueError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise ValueError(f"floating-point literal rejected: {value!r}")
    if isinstance(value, str):
        text = value.strip()
        if "." in text or "e" in text or "E" in text:
            raise ValueError(f"floating-point literal rejected: {value!r}")
        if "/" in text:
            num, den = text.split("/", 1)
            return Fraction(int(num), int(den))
        return Fraction(int(text))
    raise ValueError(f"not a rational: {value!r}")


def format_rational(q: Fraction) -> str:
    """Canonical "p/q" text, plain "p" for integers."""
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class Verdict:
    """Boolean check outcome with an optional witness for failures."""

    ok: bool
    witness: object = None

    def __bool__(self) -> bool:
        return self.ok
