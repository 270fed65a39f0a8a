"""Exact max-plus scalars and square matrices.

Finite weights are stored as Python ints when integral and as
:class:`fractions.Fraction` otherwise, so arithmetic stays exact.  The
tropical zero (``-inf``) is a separate variant, never a numeric sentinel.
"""

from __future__ import annotations

import enum
import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

import numpy as np

Number = Union[int, Fraction]


def _normalize(q) -> Number:
    if isinstance(q, bool):
        raise TypeError("bool is not a tropical weight")
    if isinstance(q, int):
        return q
    if isinstance(q, Fraction):
        return q.numerator if q.denominator == 1 else q
    if isinstance(q, str):
        return _normalize(Fraction(q))
    raise TypeError(f"unsupported tropical weight {q!r}")


@dataclass(frozen=True, slots=True)
class TropValue:
    """An element of R u {-inf}; ``q is None`` is the bottom element."""

    q: Number | None = None

    def __post_init__(self):
        if self.q is not None:
            object.__setattr__(self, "q", _normalize(self.q))

    @classmethod
    def finite(cls, q) -> "TropValue":
        return cls(_normalize(q))

    @property
    def is_bottom(self) -> bool:
        return self.q is None

    def __add__(self, other: "TropValue") -> "TropValue":
        return tadd(self, other)

    def __mul__(self, other: "TropValue") -> "TropValue":
        return tmul(self, other)

    def __lt__(self, other: "TropValue") -> bool:
        if self.q is None:
            return other.q is not None
        return other.q is not None and self.q < other.q

    def __le__(self, other: "TropValue") -> bool:
        return self == other or self < other

    def __str__(self) -> str:
        return format_entry(self.q)

    def __repr__(self) -> str:
        return "BOTTOM" if self.q is None else f"TropValue({self})"


BOTTOM = TropValue(None)
ONE = TropValue(0)


def tadd(a: TropValue, b: TropValue) -> TropValue:
    """Tropical sum, i.e. the maximum with bottom below every finite value."""
    if a.q is None:
        return b
    if b.q is None:
        return a
    return a if a.q >= b.q else b


def tmul(a: TropValue, b: TropValue) -> TropValue:
    if a.q is None or b.q is None:
        return BOTTOM
    return TropValue(a.q + b.q)


# -- entry text format -------------------------------------------------------


def parse_entry(text) -> Number | None:
    """Parse ``"-inf"``, an integer literal, or ``"p/q"`` with ``q > 0``."""
    if isinstance(text, bool):
        raise ValueError(f"bad matrix entry {text!r}")
    if isinstance(text, int):
        return text
    if not isinstance(text, str):
        raise ValueError(f"bad matrix entry {text!r}")
    s = text.strip()
    if s == "-inf":
        return None
    if "/" in s:
        num, _, den = s.partition("/")
        try:
            p, q = int(num), int(den)
        except ValueError:
            raise ValueError(f"bad matrix entry {text!r}") from None
        if q <= 0:
            raise ValueError(f"denominator must be positive in {text!r}")
        return _normalize(Fraction(p, q))
    try:
        return int(s)
    except ValueError:
        raise ValueError(f"bad matrix entry {text!r}") from None


def format_entry(q: Number | None) -> str:
    if q is None:
        return "-inf"
    if isinstance(q, Fraction):
        return f"{q.numerator}/{q.denominator}"
    return str(q)


# -- matrices ----------------------------------------------------------------


class MatrixClass(enum.Enum):
    FULL = "full"
    UPPER = "upper"
    LOWER = "lower"

    def supports(self, i: int, j: int) -> bool:
        """Whether entry (i, j) may be finite in this class (0-based)."""
        if self is MatrixClass.UPPER:
            return i <= j
        if self is MatrixClass.LOWER:
            return i >= j
        return True


Raw = tuple  # tuple of tuples of (Number | None)


@dataclass(frozen=True)
class TropMatrix:
    """Square tropical matrix.

    Entries are kept as a tuple of row tuples holding raw weights
    (``None`` for bottom); ``entry`` and ``entries`` expose them as
    :class:`TropValue`.  Indices in this API are 0-based.
    """

    rows: Raw

    def __post_init__(self):
        rows = tuple(tuple(None if e is None else _normalize(e) for e in r) for r in self.rows)
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise ValueError("tropical matrix must be square and non-empty")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def from_values(cls, grid: Sequence[Sequence[TropValue]]) -> "TropMatrix":
        return cls(tuple(tuple(v.q for v in row) for row in grid))

    @classmethod
    def of(cls, grid) -> "TropMatrix":
        """Build from a nested list of numbers, strings, or ``None``."""
        return cls(tuple(tuple(e if e is None else parse_entry(e) if isinstance(e, str) else e
                               for e in row) for row in grid))

    @classmethod
    def identity(cls, n: int) -> "TropMatrix":
        return cls(tuple(tuple(0 if i == j else None for j in range(n)) for i in range(n)))

    @classmethod
    def zero(cls, n: int) -> "TropMatrix":
        return cls(tuple((None,) * n for _ in range(n)))

    @property
    def n(self) -> int:
        return len(self.rows)

    def entry(self, i: int, j: int) -> TropValue:
        return TropValue(self.rows[i][j])

    @property
    def entries(self) -> tuple:
        return tuple(tuple(TropValue(e) for e in r) for r in self.rows)

    def diagonal(self) -> tuple:
        return tuple(self.rows[i][i] for i in range(self.n))

    def is_upper(self) -> bool:
        return all(self.rows[i][j] is None for i in range(self.n) for j in range(i))

    def is_lower(self) -> bool:
        return all(self.rows[i][j] is None for i in range(self.n) for j in range(i + 1, self.n))

    def in_class(self, cls: MatrixClass) -> bool:
        if cls is MatrixClass.UPPER:
            return self.is_upper()
        if cls is MatrixClass.LOWER:
            return self.is_lower()
        return True

    def __matmul__(self, other: "TropMatrix") -> "TropMatrix":
        return mat_mul(self, other)

    def __pow__(self, k: int) -> "TropMatrix":
        return mat_pow(self, k)

    def to_json(self) -> dict:
        return {"n": self.n, "entries": [[format_entry(e) for e in r] for r in self.rows]}

    @classmethod
    def from_json(cls, data) -> "TropMatrix":
        if isinstance(data, str):
            data = json.loads(data)
        try:
            n = data["n"]
            grid = data["entries"]
        except (KeyError, TypeError):
            raise ValueError("matrix JSON needs 'n' and 'entries'") from None
        if not isinstance(n, int) or n < 1 or len(grid) != n or any(len(r) != n for r in grid):
            raise ValueError(f"matrix JSON entries do not form a {n}x{n} grid")
        return cls(tuple(tuple(parse_entry(e) for e in r) for r in grid))

    def __str__(self) -> str:
        cells = [[format_entry(e) for e in r] for r in self.rows]
        width = max(len(c) for r in cells for c in r)
        return "\n".join("[" + " ".join(c.rjust(width) for c in r) + "]" for r in cells)


def raw_mul(a: Raw, b: Raw) -> Raw:
    """Max-plus product on raw row tuples; no validation."""
    n = len(a)
    out = []
    for row in a:
        acc = [None] * n
        for k, x in enumerate(row):
            if x is None:
                continue
            for j, y in enumerate(b[k]):
                if y is not None:
                    s = x + y
                    cur = acc[j]
                    if cur is None or s > cur:
                        acc[j] = s
        out.append(tuple(acc))
    return tuple(out)


def mat_mul(a: TropMatrix, b: TropMatrix) -> TropMatrix:
    if a.n != b.n:
        raise ValueError(f"dimension mismatch: {a.n} vs {b.n}")
    return TropMatrix(raw_mul(a.rows, b.rows))


def mat_pow(a: TropMatrix, k: int) -> TropMatrix:
    if k < 0:
        raise ValueError("matrix power must be nonnegative")
    result = TropMatrix.identity(a.n).rows
    base = a.rows
    while k:
        if k & 1:
            result = raw_mul(result, base)
        k >>= 1
        if k:
            base = raw_mul(base, base)
    return TropMatrix(result)


def mat_product(factors: Iterable[TropMatrix]) -> TropMatrix:
    """Left-to-right product of a non-empty sequence."""
    it = iter(factors)
    try:
        acc = next(it)
    except StopIteration:
        raise ValueError("empty product") from None
    rows = acc.rows
    for f in it:
        if f.n != acc.n:
            raise ValueError(f"dimension mismatch: {acc.n} vs {f.n}")
        rows = raw_mul(rows, f.rows)
    return TropMatrix(rows)


def diag_equivalent(x: TropMatrix, y: TropMatrix) -> bool:
    if x.n != y.n:
        raise ValueError(f"dimension mismatch: {x.n} vs {y.n}")
    return x.diagonal() == y.diagonal()


# -- sampling ----------------------------------------------------------------


@dataclass(frozen=True)
class SamplerConfig:
    entry_lo: int = -10
    entry_hi: int = 10
    bottom_prob: Fraction = Fraction(1, 4)
    seed: int = 0

    def __post_init__(self):
        if self.entry_lo > self.entry_hi:
            raise ValueError("entry range is empty")
        p = Fraction(self.bottom_prob)
        if not 0 <= p <= 1:
            raise ValueError("bottom_prob must lie in [0, 1]")
        object.__setattr__(self, "bottom_prob", p)
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")


def trial_rng(cfg: SamplerConfig, trial: int, stream: int = 0) -> np.random.Generator:
    # Keyed on (seed, trial, stream) so trials are reproducible in any order.
    return np.random.default_rng([cfg.seed, trial, stream])


def sample_matrix(cls: MatrixClass, n: int, cfg: SamplerConfig, trial: int,
                  stream: int = 0) -> TropMatrix:
    """Draw a matrix of ``cls``; deterministic in ``(cfg.seed, trial, stream)``.

    Each supported entry is bottom with probability ``cfg.bottom_prob``,
    otherwise a uniform integer in ``[entry_lo, entry_hi]``.
    """
    if n < 1:
        raise ValueError("dimension must be positive")
    rng = trial_rng(cfg, trial, stream)
    p = cfg.bottom_prob
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            if not cls.supports(i, j):
                row.append(None)
                continue
            # exact rational coin: draw in [0, den) and compare with num
            if rng.integers(0, p.denominator) < p.numerator:
                row.append(None)
            else:
                row.append(int(rng.integers(cfg.entry_lo, cfg.entry_hi, endpoint=True)))
        rows.append(tuple(row))
    return TropMatrix(tuple(rows))


def all_matrices(cls: MatrixClass, n: int, values: Sequence) -> Iterable[TropMatrix]:
    """Every matrix of ``cls`` whose supported entries range over ``values``."""
    slots = [(i, j) for i in range(n) for j in range(n) if cls.supports(i, j)]
    for combo in itertools.product(values, repeat=len(slots)):
        grid = [[None] * n for _ in range(n)]
        for (i, j), v in zip(slots, combo):
            grid[i][j] = v
        yield TropMatrix(tuple(tuple(r) for r in grid))
