import itertools
import json

import pytest

from conftest import W
from tropid.identities import Assignment, Identity, check, check_via_paths, extend_for_identity
from tropid.search import (falsify_below, minimal_power_word, power_words_of_length,
                           verify_minimality_witness)
from tropid.tropical import SamplerConfig
from tropid.words import Word, WordClassSpec, is_power_word, two_letter_spec


def _shortest_by_brute_force(spec, limit):
    """Shortest power word over all letter strings, runs unrestricted."""
    for length in range(1, limit + 1):
        for t in itertools.product(spec.alphabet, repeat=length):
            if is_power_word(Word.from_letters(t), spec):
                return length
    return None


class TestMinimalWord:
    @pytest.mark.parametrize("n,length", [(1, 2), (2, 5), (3, 8)])
    def test_small_optima(self, n, length):
        spec = two_letter_spec(n)
        w = minimal_power_word(spec)
        assert len(w) == length and is_power_word(w, spec)
        assert _shortest_by_brute_force(spec, length) == length

    def test_lexicographic_choice(self):
        assert minimal_power_word(two_letter_spec(2)) == W("x^2y^2x")
        assert minimal_power_word(two_letter_spec(3)) == W("x^2yxy^2x^2")

    def test_n4_and_n5(self):
        w4 = minimal_power_word(two_letter_spec(4))
        assert w4 == W("x^2yx^2y^2xyxy^2x^2") and len(w4) == 14
        assert not any(True for _ in power_words_of_length(two_letter_spec(4), 13))
        assert len(minimal_power_word(two_letter_spec(5))) == 22

    def test_distinct_ends_n4_is_tight(self):
        spec = two_letter_spec(4)
        w = minimal_power_word(spec, distinct_ends=True)
        assert len(w) == 16
        for length in (14, 15):
            for cand in power_words_of_length(spec, length):
                ext = extend_for_identity(cand, spec)
                assert ext.first() == ext.last()

    def test_three_letters(self):
        spec = WordClassSpec(("x", "y", "z"), 1, 2)
        w = minimal_power_word(spec)
        assert len(w) == 7 and is_power_word(w, spec)

    def test_exact_limit(self):
        with pytest.raises(ValueError, match="greedy"):
            minimal_power_word(two_letter_spec(6))

    @pytest.mark.parametrize("n", range(2, 9))
    def test_greedy(self, n):
        spec = two_letter_spec(n)
        w = minimal_power_word(spec, greedy=True)
        assert is_power_word(w, spec)
        if n <= 5:
            assert len(w) >= len(minimal_power_word(spec))
        ends = minimal_power_word(spec, greedy=True, distinct_ends=True)
        ext = extend_for_identity(ends, spec)
        assert ext.first() != ext.last()

    def test_distinct_ends_needs_two_letters(self):
        with pytest.raises(ValueError):
            minimal_power_word(WordClassSpec(("x", "y", "z"), 2, 2), distinct_ends=True)


class TestWitness:
    def test_examples(self):
        assert verify_minimality_witness(W("x^2y^2x"), two_letter_spec(2))
        assert verify_minimality_witness(W("xyxy^2x^2y"), two_letter_spec(3))
        assert not verify_minimality_witness(W("x^2y^2xy"), two_letter_spec(2))
        assert not verify_minimality_witness(W("x^2y^2"), two_letter_spec(2))

    def test_all_witnesses_n2(self):
        words = {str(w) for w in power_words_of_length(two_letter_spec(2), 5)}
        assert "x^2y^2x" in words and "xy^2x^2" in words
        assert all(verify_minimality_witness(W(w), two_letter_spec(2)) for w in words)


class TestFalsify:
    def test_small_bound(self):
        report = falsify_below(4, trials_per_candidate=20, cfg=SamplerConfig(seed=1))
        ids = {str(ident) for ident, _, _ in report.falsified}
        assert "xy = yx" in ids
        # x^2y = xyx is visited as its x<->y image
        assert "xy^2 = yxy" in ids
        assert report.unresolved == []
        for ident, a, source in report.falsified:
            assert source in ("exhaustive", "random")
            assert not check(ident, a) and not check_via_paths(ident, a)

    def test_candidate_count(self):
        report = falsify_below(4, trials_per_candidate=5, cfg=SamplerConfig(seed=1))
        # balanced pairs over {x, y}, modulo swapping sides and swapping x with y:
        # length 2: xy=yx; 3: pairs among {xy^2, yxy, y^2x}; 4 with one x: the 4 words
        # give 6 pairs, with two x's: 15 pairs of 6 words folded by the swap to 9
        assert report.candidates == 1 + 3 + 6 + 9

    def test_report_lines(self, tmp_path):
        report = falsify_below(3, trials_per_candidate=5, cfg=SamplerConfig(seed=1))
        lines = list(report.lines())
        assert lines[0].startswith("# candidates=4 falsified=4 unresolved=0")
        first = lines[1]
        assert first.startswith("FALSIFIED ")
        payload = first.split("witness=", 1)[1]
        Assignment.from_json(json.loads(payload))
        refs = list(report.lines(lambda k, a: f"w.jsonl:{k + 1}"))
        assert refs[1].endswith("witness=w.jsonl:1")

    def test_limits(self):
        with pytest.raises(ValueError):
            falsify_below(4, dim=3)
        with pytest.raises(ValueError):
            falsify_below(10)

    def test_identity_parse_in_report(self):
        report = falsify_below(2, trials_per_candidate=1)
        ident, a, _ = report.falsified[0]
        assert ident == Identity.parse("xy", "yx")

    def test_nothing_survives_below_ten(self):
        report = falsify_below(9, trials_per_candidate=200, cfg=SamplerConfig(seed=0))
        assert report.unresolved == []
        assert report.candidates == len(report.falsified) == 16318
