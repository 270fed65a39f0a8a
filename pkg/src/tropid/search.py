"""Shortest power words and falsification sweeps over short candidate identities."""

from __future__ import annotations

import itertools
import json
from collections import deque
from dataclasses import dataclass, field
from typing import Iterator

from .identities import Assignment, Identity, SMALL_VALUES, small_assignments
from .tropical import MatrixClass, SamplerConfig, raw_mul, sample_matrix
from .words import Word, WordClassSpec, is_power_word, iter_class_letters

EXACT_LIMIT = 5


class _Cover:
    """Transition structure for the cover-state search.

    A state is ``(suffix, covered)``: the last ``max(n - 1, max_exp)``
    letters (as alphabet indices) and a bitmask over W_n[C, P] in
    enumeration order.
    """

    def __init__(self, spec: WordClassSpec):
        self.spec = spec
        self.k = len(spec.alphabet)
        index = {a: i for i, a in enumerate(spec.alphabet)}
        self.bit = {tuple(index[a] for a in t): 1 << b
                    for b, t in enumerate(iter_class_letters(spec.alphabet, spec.max_exp, spec.n))}
        self.full = (1 << len(self.bit)) - 1
        self.keep = max(spec.n - 1, spec.max_exp)

    def step(self, state, c):
        suffix, covered = state
        run = 0
        for s in reversed(suffix):
            if s != c:
                break
            run += 1
        if run >= self.spec.max_exp:
            return None
        seq = suffix + (c,)
        if len(seq) >= self.spec.n:
            covered |= self.bit.get(seq[-self.spec.n:], 0)
        return seq[-self.keep:] if self.keep else (), covered

    def spell(self, letters) -> Word:
        return Word.from_letters(self.spec.alphabet[c] for c in letters)


def _bfs(cover: _Cover, start, done) -> list:
    """Lexicographically first shortest letter path from ``start`` to a state
    satisfying ``done``."""
    if done(start):
        return []
    parent = {start: None}
    queue = deque([start])
    while queue:
        s = queue.popleft()
        for c in range(cover.k):
            t = cover.step(s, c)
            if t is None or t in parent:
                continue
            parent[t] = (s, c)
            if done(t):
                path = []
                while parent[t] is not None:
                    t, c = parent[t]
                    path.append(c)
                return path[::-1]
            queue.append(t)
    raise RuntimeError("cover search exhausted without reaching the goal")


def _extended_end(spec: WordClassSpec, letter: int, run: int) -> int:
    """Letter at one end of the padded word, given the end run of the word."""
    last = len(spec.alphabet) - 1
    if run > spec.max_exp - 1:
        if letter == 0:
            return last
        if letter == last:
            return 0
    return letter


def _end_run(suffix: tuple) -> tuple:
    run = 0
    for s in reversed(suffix):
        if s != suffix[-1]:
            break
        run += 1
    return suffix[-1], run


def minimal_power_word(spec: WordClassSpec, greedy: bool = False,
                       exact_limit: int = EXACT_LIMIT, distinct_ends: bool = False) -> Word:
    """Shortest word containing every member of W_n[C, P] as a factor.

    Exact mode runs breadth-first search over cover states and returns the
    lexicographically smallest optimum.  ``greedy=True`` repeatedly appends
    the shortest extension that covers at least one new factor; it always
    terminates but is not guaranteed optimal.

    ``distinct_ends=True`` additionally asks that the word, once padded by
    :func:`tropid.identities.extend_for_identity`, begins and ends with
    different letters.  That is what keeps ``w x w = w y w`` within the
    exponent cap; it needs two letters and ``P = {1, 2}``.
    """
    cover = _Cover(spec)
    start = ((), 0)
    if distinct_ends and (cover.k != 2 or spec.max_exp != 2):
        raise ValueError("distinct ends are defined for two letters with P = {1, 2}")
    if not greedy and spec.n > exact_limit:
        raise ValueError(f"exact search is limited to n <= {exact_limit}; "
                         "pass greedy=True (CLI: --greedy) for longer words")

    def goal(head_end):
        def done(s):
            if s[1] != cover.full:
                return False
            if head_end is None:
                return True
            return _extended_end(spec, *_end_run(s[0])) != head_end
        return done

    if not greedy and not distinct_ends:
        letters = _bfs(cover, start, goal(None))
    elif not greedy:
        best = None
        for head in itertools.product(range(cover.k), repeat=2):
            state = start
            for c in head:
                state = cover.step(state, c)
            if state is None:
                continue
            head_end = _extended_end(spec, head[0], 2 if head[0] == head[1] else 1)
            cand = list(head) + _bfs(cover, state, goal(head_end))
            if best is None or (len(cand), cand) < (len(best), best):
                best = cand
        letters = best
    else:
        letters = []
        state = start
        while state[1] != cover.full:
            have = state[1]
            ext = _bfs(cover, state, lambda s, have=have: s[1] != have)
            for c in ext:
                state = cover.step(state, c)
            letters.extend(ext)
        if distinct_ends:
            first_run = 2 if len(letters) > 1 and letters[0] == letters[1] else 1
            letters.extend(_bfs(cover, state, goal(_extended_end(spec, letters[0], first_run))))
    w = cover.spell(letters)
    assert is_power_word(w, spec)
    return w


def power_words_of_length(spec: WordClassSpec, length: int) -> Iterator[Word]:
    """Brute force: every power word of the given length."""
    for t in iter_class_letters(spec.alphabet, spec.max_exp, length):
        w = Word.from_letters(t)
        if is_power_word(w, spec):
            yield w


def verify_minimality_witness(w: Word, spec: WordClassSpec) -> bool:
    return is_power_word(w, spec) and len(w) == len(minimal_power_word(spec))


# -- falsification sweep -----------------------------------------------------------


@dataclass
class FalsifyReport:
    length_bound: int
    dim: int
    falsified: list = field(default_factory=list)  # (Identity, Assignment, source)
    unresolved: list = field(default_factory=list)  # Identity

    @property
    def candidates(self) -> int:
        return len(self.falsified) + len(self.unresolved)

    def lines(self, witness_ref=None) -> Iterator[str]:
        yield (f"# candidates={self.candidates} falsified={len(self.falsified)} "
               f"unresolved={len(self.unresolved)} max_len={self.length_bound} dim={self.dim} "
               "scope=balanced-2-variable")
        for k, (ident, a, source) in enumerate(self.falsified):
            if witness_ref is None:
                ref = json.dumps(a.to_json(), sort_keys=True, separators=(",", ":"))
            else:
                ref = witness_ref(k, a)
            yield f"FALSIFIED {ident} source={source} witness={ref}"
        for ident in self.unresolved:
            yield f"UNRESOLVED {ident}"


def _balanced_groups(length_bound: int):
    """Words over {x, y} grouped by (length, number of x's), both letters present."""
    for ell in range(2, length_bound + 1):
        for kx in range(1, ell // 2 + 1):
            words = []
            for pos in itertools.combinations(range(ell), kx):
                letters = ["y"] * ell
                for p in pos:
                    letters[p] = "x"
                words.append(tuple(letters))
            words.sort()
            yield ell, kx, words


def _swap(t):
    return tuple("y" if c == "x" else "x" for c in t)


def _keep_pair(u, v, ell, kx) -> bool:
    # Pairs with #x < #y have their x<->y image in a group we never visit.
    if 2 * kx < ell:
        return True
    su, sv = sorted((_swap(u), _swap(v)))
    return (u, v) <= (su, sv)


class _PrefixEval:
    """Products of word prefixes under one assignment, shared between words."""

    def __init__(self, a):
        self.a = a
        self.cache: dict = {}

    def __call__(self, letters: tuple):
        hit = self.cache.get(letters)
        if hit is not None:
            return hit
        if len(letters) == 1:
            rows = self.a[letters[0]].rows
        else:
            rows = raw_mul(self(letters[:-1]), self.a[letters[-1]].rows)
        self.cache[letters] = rows
        return rows


def falsify_below(length_bound: int, dim: int = 2, trials_per_candidate: int = 200,
                  cfg: SamplerConfig = SamplerConfig(), values=SMALL_VALUES) -> FalsifyReport:
    """Try to refute every balanced two-variable identity with sides of length
    at most ``length_bound`` over upper-triangular ``dim x dim`` matrices.

    Candidates are processed per (length, x-count) class by partition
    refinement: each assignment splits the words by their value, and a pair is
    falsified by the assignment that first separates it.  Assignments are
    all small-entry pairs first, then ``trials_per_candidate`` random draws.
    Survivors are reported as unresolved, never as identities.
    """
    if dim != 2:
        raise ValueError("falsification sweep is implemented for 2x2 matrices")
    if length_bound > 9:
        raise ValueError("length bound above 9 is out of desk-scale range")
    probe = Identity(Word((("x", 1), ("y", 1))), Word((("y", 1), ("x", 1))))
    small = list(small_assignments(probe, MatrixClass.UPPER, dim, values))

    def assignment(t: int):
        if t < len(small):
            return small[t], "exhaustive"
        trial = t - len(small)
        return Assignment({"x": sample_matrix(MatrixClass.UPPER, dim, cfg, trial, 0),
                           "y": sample_matrix(MatrixClass.UPPER, dim, cfg, trial, 1)}), "random"

    total = len(small) + trials_per_candidate
    report = FalsifyReport(length_bound, dim)
    for ell, kx, words in _balanced_groups(length_bound):
        separated_at: dict = {}
        cells = [words]
        t = 0
        while t < total and cells:
            a, _ = assignment(t)
            value = _PrefixEval(a)
            new_cells = []
            for cell in cells:
                buckets: dict = {}
                for w in cell:
                    buckets.setdefault(value(w), []).append(w)
                parts = list(buckets.values())
                if len(parts) > 1:
                    for p, q in itertools.combinations(parts, 2):
                        for u in p:
                            for v in q:
                                separated_at[(min(u, v), max(u, v))] = t
                new_cells.extend(part for part in parts if len(part) > 1)
            cells = new_cells
            t += 1
        for u, v in itertools.combinations(words, 2):
            if not _keep_pair(u, v, ell, kx):
                continue
            ident = Identity(Word.from_letters(u), Word.from_letters(v))
            if (u, v) in separated_at:
                a, source = assignment(separated_at[(u, v)])
                report.falsified.append((ident, a, source))
            else:
                report.unresolved.append(ident)
    return report
