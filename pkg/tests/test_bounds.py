import pytest
from hypothesis import given
from hypothesis import strategies as st

from tropid.bounds import (BINET_MAX, class_count, derived_bound, fib, fib_binet, fib_table,
                           fibonacci_bounds)


def test_fib_examples():
    assert [fib(0), fib(1), fib(10)] == [0, 1, 55]
    assert fib(70) == 190392490709135
    assert fib_table(10) == [0, 1, 1, 2, 3, 5, 8, 13, 21, 34, 55]


@given(st.integers(2, 500))
def test_fib_recurrence(n):
    assert fib(n) == fib(n - 1) + fib(n - 2)


def test_binet_matches_everywhere_in_range():
    assert all(fib_binet(n) == fib(n) for n in range(BINET_MAX + 1))
    assert fib_binet(1) == 1 and fib_binet(10) == 55


@pytest.mark.parametrize("n", [-1, BINET_MAX + 1])
def test_binet_range(n):
    with pytest.raises(ValueError):
        fib_binet(n)


def test_fib_negative():
    with pytest.raises(ValueError):
        fib(-1)


def test_class_count_examples():
    assert class_count(2).enumerated == 4
    assert class_count(3).enumerated == 6
    assert class_count(4).enumerated == 10


def test_class_count_comparison():
    for n in range(2, 16):
        cc = class_count(n)
        assert cc.claimed == 2 * fib(n)
        assert cc.shifted == 2 * fib(n + 1)
        assert cc.enumerated == cc.shifted
        assert not cc.claim_matches
    with pytest.raises(ValueError):
        class_count(1)


def test_fibonacci_bounds():
    assert fibonacci_bounds(2)[0] == 26
    assert fibonacci_bounds(3)[1] == 26
    assert fibonacci_bounds(5)[0] == 242
    with pytest.raises(ValueError):
        fibonacci_bounds(1)


def test_derived_bound():
    assert [derived_bound(d) for d in range(2, 9)] == [18, 50, 98, 202, 386, 730, 1346]
    for d in range(3, 9):
        assert derived_bound(d) == 8 * d * class_count(d - 1).enumerated // 2 + 2
    with pytest.raises(ValueError):
        derived_bound(1)
