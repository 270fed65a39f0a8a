"""Words of the free semigroup in run-length form, and the classes W_n[C, P].

A variable is just its name (``"x"``, ``"y"``, ``"y1"``, ...).  A
:class:`Word` keeps the unique run-length form ``x_1^t_1 ... x_k^t_k`` with
adjacent variables distinct; factor and subword queries work on the
flattened letter sequence.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

Variable = str

_TOKEN = re.compile(r"([a-z][0-9]*)(?:\^([0-9]+))?")


def _canonical(runs: Iterable[tuple[Variable, int]]) -> tuple:
    out: list[list] = []
    for var, exp in runs:
        if exp < 0:
            raise ValueError(f"negative exponent for {var}")
        if exp == 0:
            continue
        if out and out[-1][0] == var:
            out[-1][1] += exp
        else:
            out.append([var, exp])
    return tuple((v, e) for v, e in out)


@dataclass(frozen=True, order=True)
class Word:
    runs: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "runs", _canonical(self.runs))

    @classmethod
    def from_letters(cls, letters: Iterable[Variable]) -> "Word":
        return cls(tuple((v, 1) for v in letters))

    @classmethod
    def parse(cls, text: str) -> "Word":
        return parse_word(text)

    def letters(self) -> tuple:
        return tuple(v for v, e in self.runs for _ in range(e))

    def __len__(self) -> int:
        return sum(e for _, e in self.runs)

    def __bool__(self) -> bool:
        return bool(self.runs)

    def __add__(self, other: "Word") -> "Word":
        return concat(self, other)

    def __mul__(self, k: int) -> "Word":
        return Word(self.runs * k)

    def content(self) -> frozenset:
        return frozenset(v for v, _ in self.runs)

    def first(self) -> Variable | None:
        return self.runs[0][0] if self.runs else None

    def last(self) -> Variable | None:
        return self.runs[-1][0] if self.runs else None

    def __str__(self) -> str:
        return format_word(self)

    def __repr__(self) -> str:
        return f"Word({format_word(self)!r})"


EMPTY = Word()


def parse_word(text: str) -> Word:
    """Parse ``"x^2y^2x"``-style text; whitespace is ignored."""
    s = "".join(text.split())
    if s in ("", "e"):
        return EMPTY
    runs = []
    pos = 0
    while pos < len(s):
        m = _TOKEN.match(s, pos)
        if not m:
            raise ValueError(f"cannot parse word {text!r} at position {pos}")
        exp = int(m.group(2)) if m.group(2) is not None else 1
        if exp == 0:
            raise ValueError(f"zero exponent in {text!r}")
        runs.append((m.group(1), exp))
        pos = m.end()
    return Word(tuple(runs))


def format_word(w: Word) -> str:
    if not w.runs:
        return "e"
    return "".join(v if e == 1 else f"{v}^{e}" for v, e in w.runs)


def concat(u: Word, v: Word) -> Word:
    return Word(u.runs + v.runs)


def kappa(w: Word, x: Variable) -> int:
    return sum(e for v, e in w.runs if v == x)


def exponent_set(w: Word) -> frozenset:
    return frozenset(e for _, e in w.runs)


def is_k_uniform(w: Word, k: int) -> bool:
    return all(kappa(w, x) == k for x in w.content())


def is_uniform(w: Word) -> bool:
    counts = {kappa(w, x) for x in w.content()}
    return len(counts) <= 1


def pre_run(w: Word, x: Variable) -> int:
    return w.runs[0][1] if w.runs and w.runs[0][0] == x else 0


def suf_run(w: Word, x: Variable) -> int:
    return w.runs[-1][1] if w.runs and w.runs[-1][0] == x else 0


def factors_of_length(w: Word, k: int) -> set:
    letters = w.letters()
    return {letters[i:i + k] for i in range(len(letters) - k + 1)}


def is_factor(u: Word, w: Word) -> bool:
    if not u:
        raise ValueError("factor query needs a non-empty word")
    return u.letters() in factors_of_length(w, len(u))


def is_subword(u: Word, v: Word) -> bool:
    """Scattered-subsequence test."""
    it = iter(v.letters())
    return all(any(c == d for d in it) for c in u.letters())


@dataclass(frozen=True)
class WordClassSpec:
    """Parameters of W_n[C, P] with ``P = {1, ..., max_exp}``.

    ``alphabet`` is ordered; that order drives enumeration.
    """

    alphabet: tuple
    max_exp: int
    n: int

    def __post_init__(self):
        alphabet = tuple(self.alphabet)
        object.__setattr__(self, "alphabet", alphabet)
        if not alphabet or len(set(alphabet)) != len(alphabet):
            raise ValueError("alphabet must be non-empty with distinct variables")
        if self.max_exp < 1:
            raise ValueError("exponent cap must be at least 1")
        if self.n < 1:
            raise ValueError("word length must be at least 1")

    @property
    def exponents(self) -> frozenset:
        return frozenset(range(1, self.max_exp + 1))

    def with_length(self, n: int) -> "WordClassSpec":
        return WordClassSpec(self.alphabet, self.max_exp, n)


def two_letter_spec(n: int) -> WordClassSpec:
    """C = {x, y}, P = {1, 2}: the case the constructions focus on."""
    return WordClassSpec(("x", "y"), 2, n)


def iter_class_letters(alphabet: Sequence[Variable], max_exp: int, n: int):
    """Yield letter tuples of length ``n`` with runs ``<= max_exp`` in lex order."""
    buf: list = []

    def rec(run):
        if len(buf) == n:
            yield tuple(buf)
            return
        for a in alphabet:
            r = run + 1 if buf and buf[-1] == a else 1
            if r > max_exp:
                continue
            buf.append(a)
            yield from rec(r)
            buf.pop()

    yield from rec(0)


def enumerate_class(spec: WordClassSpec) -> list:
    return [Word.from_letters(t) for t in iter_class_letters(spec.alphabet, spec.max_exp, spec.n)]


def respects(w: Word, spec: WordClassSpec) -> bool:
    """cont(w) within C and exp(w) within P."""
    return w.content() <= set(spec.alphabet) and all(e <= spec.max_exp for _, e in w.runs)


def covers_class(w: Word, spec: WordClassSpec) -> bool:
    """Every member of W_n[C, P] occurs in ``w`` as a factor."""
    present = factors_of_length(w, spec.n)
    return all(t in present for t in iter_class_letters(spec.alphabet, spec.max_exp, spec.n))


def is_power_word(w: Word, spec: WordClassSpec) -> bool:
    """Covers W_n[C, P] and itself stays within C and P."""
    return respects(w, spec) and covers_class(w, spec)


def is_faithful(w: Word, spec: WordClassSpec) -> bool:
    """Content exactly C and exponent set exactly P.

    ``w`` must cover W_n[C, P]; a covering word whose runs exceed the cap is
    simply not faithful.
    """
    if not covers_class(w, spec):
        raise ValueError(f"{w} does not contain every word of W_{spec.n} as a factor")
    return w.content() == set(spec.alphabet) and exponent_set(w) == spec.exponents


def substitute(w: Word, images: Mapping[Variable, Word]) -> Word:
    missing = w.content() - set(images)
    if missing:
        raise ValueError(f"no image for {sorted(missing)}")
    runs: list = []
    for v, e in w.runs:
        img = images[v]
        if not img:
            raise ValueError(f"image of {v} is empty")
        runs.extend(img.runs * e)
    return Word(tuple(runs))
