import itertools

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from conftest import W, letters_words
from tropid.bounds import fib
from tropid.words import (EMPTY, Word, WordClassSpec, concat, covers_class, enumerate_class,
                          exponent_set, format_word, is_factor, is_faithful, is_k_uniform,
                          is_power_word, is_subword, kappa, parse_word, pre_run, substitute,
                          suf_run, two_letter_spec)

SPEC2 = two_letter_spec(2)
SPEC3 = two_letter_spec(3)


class TestParsing:
    @pytest.mark.parametrize("text,canon", [("x^2y^2x", "x^2y^2x"), ("xxyyx", "x^2y^2x"),
                                            ("x y  x^1 x", "xyx^2"), ("y1y2^2y1", "y1y2^2y1"),
                                            ("e", "e"), ("", "e")])
    def test_canonical(self, text, canon):
        assert format_word(parse_word(text)) == canon

    def test_subscripted_variables(self):
        assert parse_word("y1y2").letters() == ("y1", "y2")
        assert parse_word("x12^3").runs == (("x12", 3),)

    @pytest.mark.parametrize("bad", ["X", "x^", "x^0", "2x", "x^-1", "x+y"])
    def test_rejects(self, bad):
        with pytest.raises(ValueError):
            parse_word(bad)

    @given(letters_words("xyz"))
    def test_roundtrip(self, w):
        assert parse_word(str(w)) == w

    @given(letters_words("xyz"))
    def test_canonical_form_idempotent(self, w):
        assert Word(w.runs) == w
        assert all(a[0] != b[0] for a, b in zip(w.runs, w.runs[1:]))
        assert all(e > 0 for _, e in w.runs)


class TestBasics:
    def test_concat(self):
        assert concat(EMPTY, W("xy")) == W("xy")
        assert concat(W("x^2"), W("xy")) == W("x^3y")
        r = concat(W("x^2y^2"), W("yx"))
        assert r == W("x^2y^3x") and len(r) == 6

    def test_kappa(self):
        w = W("x^2y^2x")
        assert kappa(w, "x") == 3
        assert kappa(w, "y") == 2
        assert kappa(EMPTY, "x") == 0

    def test_exponent_set(self):
        assert exponent_set(W("x^2y^2x")) == {1, 2}
        assert exponent_set(W("x^3")) == {3}
        assert exponent_set(W("xyxy^2x^2y")) == {1, 2}

    def test_uniform(self):
        assert is_k_uniform(W("xyxy^2x^2y"), 4)
        assert not any(is_k_uniform(W("x^2y^2x"), k) for k in range(1, 6))
        assert is_k_uniform(W("xy"), 1)

    def test_runs(self):
        w = W("x^2y^2x")
        assert pre_run(w, "x") == 2
        assert suf_run(w, "x") == 1
        assert pre_run(w, "y") == 0
        assert pre_run(EMPTY, "x") == 0

    @given(letters_words(), letters_words())
    def test_length_and_kappa_additive(self, u, v):
        assert len(concat(u, v)) == len(u) + len(v)
        for x in "xyz":
            assert kappa(concat(u, v), x) == kappa(u, x) + kappa(v, x)
        assert len(u) == sum(kappa(u, x) for x in u.content())


class TestFactors:
    def test_factor_examples(self):
        w = W("x^2y^2x")
        for u in ("xy", "yx", "x^2", "y^2"):
            assert is_factor(W(u), w)
        assert not is_factor(W("xx"), W("xyx"))

    def test_factor_needs_nonempty(self):
        with pytest.raises(ValueError):
            is_factor(EMPTY, W("x"))

    def test_subword_examples(self):
        assert is_subword(W("xx"), W("xyx"))
        assert is_subword(W("xyx"), W("xyx"))
        assert not is_subword(W("yyy"), W("xyxy"))
        assert is_subword(EMPTY, W("x"))

    @given(letters_words("xy", 1, 5), letters_words("xy", 0, 10))
    def test_factor_implies_subword(self, u, w):
        if is_factor(u, w):
            assert is_subword(u, w)

    @given(letters_words("xy", 0, 8), letters_words("xy", 1, 4), letters_words("xy", 0, 8))
    def test_planted_factor(self, a, u, b):
        assert is_factor(u, a + u + b)


class TestClasses:
    def test_w2(self):
        assert [str(w) for w in enumerate_class(SPEC2)] == ["x^2", "xy", "yx", "y^2"]

    def test_w3(self):
        got = {str(w) for w in enumerate_class(SPEC3)}
        assert got == {"x^2y", "xyx", "xy^2", "yx^2", "yxy", "y^2x"}

    def test_single_variable(self):
        assert enumerate_class(WordClassSpec(("x",), 2, 2)) == [W("x^2")]

    def test_order_follows_alphabet(self):
        spec = WordClassSpec(("y", "x"), 2, 2)
        assert [str(w) for w in enumerate_class(spec)] == ["y^2", "yx", "xy", "x^2"]

    @pytest.mark.parametrize("n", range(1, 9))
    def test_enumeration_matches_brute_force(self, n):
        brute = sorted(Word.from_letters(t) for t in itertools.product("xy", repeat=n)
                       if max(e for _, e in Word.from_letters(t).runs) <= 2)
        assert sorted(enumerate_class(two_letter_spec(n))) == brute

    def test_counts_follow_fibonacci(self):
        counts = {n: len(enumerate_class(two_letter_spec(n))) for n in range(2, 16)}
        assert counts[2] == 4 and counts[3] == 6
        for n in range(4, 16):
            assert counts[n] == counts[n - 1] + counts[n - 2]
            assert counts[n] == 2 * fib(n + 1)

    def test_spec_validation(self):
        with pytest.raises(ValueError):
            WordClassSpec((), 2, 2)
        with pytest.raises(ValueError):
            WordClassSpec(("x", "x"), 2, 2)
        with pytest.raises(ValueError):
            WordClassSpec(("x", "y"), 0, 2)


class TestPowerWords:
    def test_examples(self):
        assert is_power_word(W("x^2y^2x"), SPEC2)
        assert is_power_word(W("xyxy^2x^2y"), SPEC3)
        assert not is_power_word(W("x^2y^2"), SPEC2)

    def test_exponent_cap(self):
        assert covers_class(W("x^3y^2x"), SPEC2)
        assert not is_power_word(W("x^3y^2x"), SPEC2)

    def test_faithful(self):
        assert is_faithful(W("x^2y^2x"), SPEC2)
        assert not is_faithful(W("x^2y^2x^2"), SPEC2)
        assert is_faithful(W("xyxy^2x^2y"), SPEC3)
        assert not is_faithful(W("x^3y^2xyx^2y^2x"), SPEC2)

    def test_faithful_precondition(self):
        with pytest.raises(ValueError):
            is_faithful(W("x^2y^2"), SPEC2)

    @given(letters_words("xy", 0, 6), letters_words("xy", 0, 6),
           st.sampled_from(["x^2y^2x", "xyxy^2x^2y"]))
    def test_extension_stays_power_word(self, w1, w2, base):
        w = W(base)
        spec = SPEC2 if len(w) == 5 else SPEC3
        assume(all(e <= 2 for _, e in w1.runs + w2.runs))
        ext = w1 + w + w2
        assert covers_class(ext, spec)
        assert is_power_word(ext, spec) == all(e <= 2 for _, e in ext.runs)


class TestSubstitute:
    def test_examples(self):
        images = {"x": W("y1y2"), "y": W("y2y1")}
        assert substitute(W("xy"), images) == W("y1y2^2y1")
        w = W("x^2yxy^2")
        assert substitute(w, {"x": W("x"), "y": W("y")}) == w
        assert substitute(W("x^2"), {"x": W("ab")}) == W("abab")

    def test_missing_image(self):
        with pytest.raises(ValueError):
            substitute(W("xz"), {"x": W("a")})

    def test_empty_image(self):
        with pytest.raises(ValueError):
            substitute(W("x"), {"x": EMPTY})

    @given(letters_words("xy", 0, 10))
    def test_length(self, w):
        images = {"x": W("ab"), "y": W("bba")}
        assert len(substitute(w, images)) == sum(e * len(images[v]) for v, e in w.runs)
