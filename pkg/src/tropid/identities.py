"""Semigroup identities: construction from power words, refinement, evaluation
on tropical matrices, and randomized/exhaustive verification."""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

from . import digraph
from .tropical import (MatrixClass, SamplerConfig, TropMatrix, all_matrices, raw_mul,
                       sample_matrix)
from .words import (EMPTY, Variable, Word, WordClassSpec, enumerate_class, is_faithful,
                    is_k_uniform, is_power_word, kappa, parse_word, pre_run, substitute,
                    suf_run)


@dataclass(frozen=True)
class Identity:
    lhs: Word
    rhs: Word

    def __post_init__(self):
        if self.lhs == self.rhs:
            raise ValueError(f"trivial identity: both sides are {self.lhs}")

    @classmethod
    def parse(cls, lhs: str, rhs: str) -> "Identity":
        return cls(parse_word(lhs), parse_word(rhs))

    def variables(self) -> tuple:
        return tuple(sorted(self.lhs.content() | self.rhs.content()))

    def __len__(self) -> int:
        return max(len(self.lhs), len(self.rhs))

    def exponent_set(self) -> frozenset:
        return frozenset(e for _, e in self.lhs.runs + self.rhs.runs)

    def to_json(self) -> dict:
        return {"lhs": str(self.lhs), "rhs": str(self.rhs)}

    @classmethod
    def from_json(cls, data) -> "Identity":
        if isinstance(data, str):
            data = json.loads(data)
        try:
            return cls.parse(data["lhs"], data["rhs"])
        except (KeyError, TypeError):
            raise ValueError("identity JSON needs 'lhs' and 'rhs' strings") from None

    def __str__(self) -> str:
        return f"{self.lhs} = {self.rhs}"


def is_balanced(ident: Identity) -> bool:
    return all(kappa(ident.lhs, x) == kappa(ident.rhs, x) for x in ident.variables())


def is_uniformly_balanced(ident: Identity) -> bool:
    if not is_balanced(ident):
        return False
    counts = {kappa(ident.lhs, x) for x in ident.variables()}
    return len(counts) == 1 and is_k_uniform(ident.rhs, counts.pop())


# -- power words --------------------------------------------------------------


def construct_power_word(spec: WordClassSpec) -> Word:
    """Naive power word: concatenate W_n[C, P] in order.

    A single separator letter goes between two consecutive factors whenever
    gluing them would create a run longer than the exponent cap.
    """
    if len(spec.alphabet) < 2:
        raise ValueError("power word construction needs at least two variables")
    letters: list = []
    for u in enumerate_class(spec):
        ul = u.letters()
        if letters and letters[-1] == ul[0]:
            tail = 0
            while tail < len(letters) and letters[-1 - tail] == ul[0]:
                tail += 1
            head = u.runs[0][1]
            if tail + head > spec.max_exp:
                letters.append(_separator(spec.alphabet, ul[0], ul[0]))
        letters.extend(ul)
    w = Word.from_letters(letters)
    assert is_power_word(w, spec)
    return w


def _separator(alphabet: Sequence[Variable], left: Variable, right: Variable) -> Variable:
    for a in alphabet:
        if a != left and a != right:
            return a
    raise ValueError("no separator letter available")


# Witnesses of minimal power words for C = {x, y}, P = {1, 2}.  The n = 1 word
# underlies the 2x2 identity xy x xy = xy y xy; n = 2 and 3 are the standard
# examples.  Exhaustive search confirms each is minimal (see search module).
REFERENCE_POWER_WORDS = {1: "xy", 2: "x^2y^2x", 3: "xyxy^2x^2y"}


def reference_power_word(spec: WordClassSpec, distinct_ends: bool = False) -> Word:
    """Power word used by default when building identities.

    Tabled witnesses for two letters with exponent cap 2 (letters renamed to
    the class alphabet), then exact shortest search up to n = 5, then the
    greedy search.  With ``distinct_ends`` the search is restricted to words
    whose padded form starts and ends with different letters; the tabled
    words already have that property.
    """
    from . import search

    if len(spec.alphabet) == 2 and spec.max_exp == 2 and spec.n in REFERENCE_POWER_WORDS:
        x, y = spec.alphabet
        base = parse_word(REFERENCE_POWER_WORDS[spec.n])
        return substitute(base, {"x": Word(((x, 1),)), "y": Word(((y, 1),))})
    greedy = spec.n > search.EXACT_LIMIT
    return search.minimal_power_word(spec, greedy=greedy, distinct_ends=distinct_ends)


def extend_for_identity(w: Word, spec: WordClassSpec, uniform: bool = False) -> Word:
    """Pad a power word on both sides so that identities built from it keep
    their exponent set.

    With ``d = max(P) - min(P)``: a leading run of the first variable longer
    than ``d`` gets the last variable prepended, and vice versa; likewise at
    the end.  ``uniform=True`` pads with ``z1 = x_1 ... x_m`` / ``z2`` (its
    reverse) instead, which is the variant for uniform power words.
    """
    if not is_power_word(w, spec):
        raise ValueError(f"{w} is not a {spec.n}-power word")
    first, last = spec.alphabet[0], spec.alphabet[-1]
    d = spec.max_exp - 1
    if uniform:
        z1, z2 = _z_words(spec)
        pick_first = (z1, z2)
        pick_last = (z2, z1)
    else:
        one_last, one_first = Word(((last, 1),)), Word(((first, 1),))
        pick_first = (one_last, one_first)
        pick_last = (one_last, one_first)

    if pre_run(w, first) > d:
        w1 = pick_first[0]
    elif pre_run(w, last) > d:
        w1 = pick_first[1]
    else:
        w1 = EMPTY
    if suf_run(w, first) > d:
        w2 = pick_last[0]
    elif suf_run(w, last) > d:
        w2 = pick_last[1]
    else:
        w2 = EMPTY
    return w1 + w + w2


def _z_words(spec: WordClassSpec) -> tuple:
    t_min = 1
    z1 = Word(tuple((a, t_min) for a in spec.alphabet))
    z2 = Word(tuple((a, t_min) for a in reversed(spec.alphabet)))
    return z1, z2


class Form(enum.Enum):
    GENERAL = "general"
    SINGLE_LETTER = "single-letter"
    BALANCED = "balanced"


@dataclass(frozen=True)
class Construction:
    """An identity together with the pieces it was assembled from."""

    power_word: Word
    extended: Word
    middle_lhs: Word
    middle_rhs: Word
    identity: Identity

    def display(self) -> str:
        w = str(self.extended)
        return f"{w} {self.middle_lhs} {w} = {w} {self.middle_rhs} {w}"


def build_identity(spec: WordClassSpec, form: Form = Form.SINGLE_LETTER,
                   power_word: Word | None = None) -> Construction:
    if form is Form.BALANCED:
        base = build_identity(spec, Form.SINGLE_LETTER, power_word)
        a, b = "a", "b"
        x, y = spec.alphabet
        images = {x: Word(((a, 1), (b, 1))), y: Word(((b, 1), (a, 1)))}
        return Construction(base.power_word, substitute(base.extended, images),
                            images[x], images[y], balance_substitute(base.identity, (a, b)))
    if form is Form.GENERAL:
        if len(spec.alphabet) < 2 or spec.max_exp < 2:
            raise ValueError("general form needs |C| > 1 and |P| > 1")
        # P = {1..m} with m >= 2 always meets t_max >= 2 t_min
    elif len(spec.alphabet) != 2 or spec.max_exp != 2:
        raise ValueError("single-letter form needs two variables and P = {1, 2}")

    w = power_word if power_word is not None else reference_power_word(
        spec, distinct_ends=form is Form.SINGLE_LETTER)
    if not is_power_word(w, spec):
        raise ValueError(f"{w} is not a {spec.n}-power word")
    ext = extend_for_identity(w, spec)
    if form is Form.GENERAL:
        mid_l, mid_r = _z_words(spec)
    else:
        x, y = spec.alphabet
        mid_l, mid_r = Word(((x, 1),)), Word(((y, 1),))
    ident = Identity(ext + mid_l + ext, ext + mid_r + ext)
    return Construction(w, ext, mid_l, mid_r, ident)


def construct_identity(spec: WordClassSpec, form: Form = Form.SINGLE_LETTER,
                       power_word: Word | None = None) -> Identity:
    return build_identity(spec, form, power_word).identity


def identity_for_dimension(dim: int, form: Form = Form.SINGLE_LETTER) -> Construction:
    """Identity for ``dim x dim`` triangular matrices, built from ``(dim-1)``-power words."""
    if dim < 2:
        raise ValueError("dimension must be at least 2")
    return build_identity(WordClassSpec(("x", "y"), 2, dim - 1), form)


def refine_two_variable(ident: Identity, partition: tuple,
                        targets: tuple = ("y1", "y2")) -> Identity:
    """Substitute ``y1 y2`` for the first block and ``y2 y1`` for the second."""
    c1, c2 = (frozenset(b) for b in partition)
    cont = set(ident.variables())
    if len(cont) < 2:
        raise ValueError("refinement needs at least two variables")
    if not c1 or not c2 or c1 & c2 or (c1 | c2) != cont:
        raise ValueError("partition must split the identity's variables into two blocks")
    y1, y2 = targets
    images = {v: Word(((y1, 1), (y2, 1))) for v in c1}
    images.update({v: Word(((y2, 1), (y1, 1))) for v in c2})
    lhs, rhs = substitute(ident.lhs, images), substitute(ident.rhs, images)
    if lhs == rhs:
        raise ValueError(f"partition collapses {ident} to the trivial identity {lhs} = {rhs}")
    return Identity(lhs, rhs)


def balance_substitute(ident: Identity, targets: tuple = ("a", "b")) -> Identity:
    """Balance a two-variable identity via ``x -> a b``, ``y -> b a``.

    ``x`` is the alphabetically first variable.
    """
    vs = ident.variables()
    if len(vs) != 2:
        raise ValueError(f"balancing substitution needs exactly two variables, got {vs}")
    a, b = targets
    images = {vs[0]: Word(((a, 1), (b, 1))), vs[1]: Word(((b, 1), (a, 1)))}
    return Identity(substitute(ident.lhs, images), substitute(ident.rhs, images))


# -- evaluation -----------------------------------------------------------------


class Assignment(Mapping):
    """Variables bound to tropical matrices of one common dimension."""

    def __init__(self, images: Mapping[Variable, TropMatrix]):
        self._images = dict(images)
        if not self._images:
            raise ValueError("empty assignment")
        dims = {m.n for m in self._images.values()}
        if len(dims) != 1:
            raise ValueError(f"mixed dimensions in assignment: {sorted(dims)}")
        self.n = dims.pop()

    def __getitem__(self, v):
        return self._images[v]

    def __iter__(self):
        return iter(self._images)

    def __len__(self):
        return len(self._images)

    def to_json(self) -> dict:
        return {v: self._images[v].to_json() for v in sorted(self._images)}

    @classmethod
    def from_json(cls, data) -> "Assignment":
        if isinstance(data, str):
            data = json.loads(data)
        if not isinstance(data, dict):
            raise ValueError("assignment JSON must map variable names to matrices")
        return cls({v: TropMatrix.from_json(m) for v, m in data.items()})

    def __repr__(self):
        return f"Assignment({json.dumps(self.to_json(), sort_keys=True)})"


def _raw_eval(w: Word, a: Mapping[Variable, TropMatrix]):
    missing = w.content() - set(a)
    if missing:
        raise ValueError(f"unbound variables {sorted(missing)}")
    rows = None
    for v in w.letters():
        rows = a[v].rows if rows is None else raw_mul(rows, a[v].rows)
    return rows


def evaluate(w: Word, a: Mapping[Variable, TropMatrix]) -> TropMatrix:
    if not w:
        raise ValueError("cannot evaluate the empty word in a semigroup")
    return TropMatrix(_raw_eval(w, a))


def check(ident: Identity, a: Mapping[Variable, TropMatrix]) -> bool:
    return _raw_eval(ident.lhs, a) == _raw_eval(ident.rhs, a)


def check_via_paths(ident: Identity, a: Mapping[Variable, TropMatrix]) -> bool:
    """Same question as :func:`check`, answered by the colored-path oracle."""
    sides = []
    for w in (ident.lhs, ident.rhs):
        g = digraph.from_product([a[v] for v in w.letters()])
        sides.append(digraph.product_via_paths(g))
    return sides[0] == sides[1]


# -- verification ------------------------------------------------------------------


class Mode(enum.Enum):
    INDEPENDENT = "independent"
    DIAG_PAIR = "diag-pair"
    PRODUCT_PAIR = "product-pair"


@dataclass(frozen=True)
class Pass:
    trials: int

    def line(self) -> str:
        return f"PASS trials={self.trials}"


@dataclass(frozen=True)
class Counterexample:
    assignment: Assignment
    trial: int

    def line(self) -> str:
        payload = json.dumps(self.assignment.to_json(), sort_keys=True, separators=(",", ":"))
        return f"FAIL trial={self.trial} {payload}"


Verdict = Pass | Counterexample


def _pair_vars(ident: Identity, mode: Mode) -> tuple:
    vs = ident.variables()
    if len(vs) != 2:
        raise ValueError(f"{mode.value} mode needs a two-variable identity, got {vs}")
    return vs


def _with_diagonal(y: TropMatrix, diag: tuple) -> TropMatrix:
    rows = [list(r) for r in y.rows]
    for i, d in enumerate(diag):
        rows[i][i] = d
    return TropMatrix(tuple(tuple(r) for r in rows))


def sample_assignment(ident: Identity, cls: MatrixClass, n: int, cfg: SamplerConfig,
                      trial: int, mode: Mode = Mode.INDEPENDENT) -> Assignment:
    if mode is Mode.INDEPENDENT:
        return Assignment({v: sample_matrix(cls, n, cfg, trial, k)
                           for k, v in enumerate(ident.variables())})
    x, y = _pair_vars(ident, mode)
    first = sample_matrix(cls, n, cfg, trial, 0)
    second = sample_matrix(cls, n, cfg, trial, 1)
    if mode is Mode.DIAG_PAIR:
        return Assignment({x: first, y: _with_diagonal(second, first.diagonal())})
    return Assignment({x: first @ second, y: second @ first})


def _confirm(ident: Identity, a: Assignment, trial: int) -> Counterexample:
    if check_via_paths(ident, a):
        raise AssertionError(f"trial {trial}: direct evaluation and path oracle disagree")
    return Counterexample(a, trial)


def fuzz(ident: Identity, cls: MatrixClass, n: int, trials: int,
         cfg: SamplerConfig = SamplerConfig(), mode: Mode = Mode.INDEPENDENT) -> Verdict:
    """Search random assignments for one that separates the two sides.

    Returns the counterexample with the smallest trial index, re-validated
    by the path oracle, or ``Pass(trials)``.
    """
    for t in range(trials):
        a = sample_assignment(ident, cls, n, cfg, t, mode)
        if not check(ident, a):
            return _confirm(ident, a, t)
    return Pass(trials)


SMALL_VALUES = (None, -1, 0, 1)


def small_assignments(ident: Identity, cls: MatrixClass, n: int,
                      values: Sequence = SMALL_VALUES,
                      mode: Mode = Mode.INDEPENDENT) -> Iterator[Assignment]:
    """Every assignment whose matrices draw their entries from ``values``."""
    mats = list(all_matrices(cls, n, values))
    if mode is Mode.INDEPENDENT:
        vs = ident.variables()
        idx = [0] * len(vs)
        while True:
            yield Assignment({v: mats[i] for v, i in zip(vs, idx)})
            k = len(idx) - 1
            while k >= 0 and idx[k] == len(mats) - 1:
                idx[k] = 0
                k -= 1
            if k < 0:
                return
            idx[k] += 1
    x, y = _pair_vars(ident, mode)
    for first in mats:
        for second in mats:
            if mode is Mode.DIAG_PAIR:
                if first.diagonal() == second.diagonal():
                    yield Assignment({x: first, y: second})
            else:
                yield Assignment({x: first @ second, y: second @ first})


def exhaustive(ident: Identity, cls: MatrixClass, n: int, values: Sequence = SMALL_VALUES,
               mode: Mode = Mode.INDEPENDENT) -> Verdict:
    count = 0
    for t, a in enumerate(small_assignments(ident, cls, n, values, mode)):
        if not check(ident, a):
            return _confirm(ident, a, t)
        count += 1
    return Pass(count)
