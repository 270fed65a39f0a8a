"""Fibonacci numbers and the identity-length bounds built on them."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .words import enumerate_class, two_letter_spec

BINET_MAX = 70


def fib(n: int) -> int:
    if n < 0:
        raise ValueError("fib is defined for n >= 0")
    a, b = 0, 1
    for _ in range(n):
        a, b = b, a + b
    return a


def fib_table(k: int) -> list:
    out = [0, 1]
    while len(out) <= k:
        out.append(out[-1] + out[-2])
    return out[:k + 1]


def fib_binet(n: int) -> int:
    """Closed-form Fibonacci in double precision, rounded half away from zero.

    Only trusted for ``n <= 70``.
    """
    if n < 0 or n > BINET_MAX:
        raise ValueError(f"Binet evaluation is only exact for 0 <= n <= {BINET_MAX}")
    r5 = math.sqrt(5.0)
    x = ((1 + r5) ** n - (1 - r5) ** n) / (2.0 ** n * r5)
    return int(math.floor(x + 0.5))


@dataclass(frozen=True)
class ClassCount:
    n: int
    enumerated: int
    claimed: int  # 2 F_n
    shifted: int      # 2 F_{n+1}

    @property
    def claim_matches(self) -> bool:
        return self.enumerated == self.claimed


def class_count(n: int) -> ClassCount:
    """|W_n[{x,y}, {1,2}]| next to 2F_n and 2F_{n+1}."""
    if not 2 <= n <= 15:
        raise ValueError("class_count covers 2 <= n <= 15")
    return ClassCount(n, len(enumerate_class(two_letter_spec(n))), 2 * fib(n), 2 * fib(n + 1))


def fibonacci_bounds(n: int) -> tuple:
    """``(8(n+1)F_n + 2, 8nF_{n-1} + 2)``, the general and triangular bounds as claimed."""
    if n < 2:
        raise ValueError("bounds need n >= 2")
    return 8 * (n + 1) * fib(n) + 2, 8 * n * fib(n - 1) + 2


def derived_bound(dim: int) -> int:
    """Length bound for ``dim x dim`` matrices using the enumerated |W_{dim-1}|."""
    if dim < 2:
        raise ValueError("dimension must be at least 2")
    count = len(enumerate_class(two_letter_spec(dim - 1)))
    return 8 * dim * count // 2 + 2
