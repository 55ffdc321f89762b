import itertools
import math

import pytest
from hypothesis import given, strategies as st

from ssc.arith import (
    NoDecomposition, NotInvertible, Residue, decompose_delta, divisors, generates,
    lcm, mod_inverse, units,
)


def brute_decompose(delta, n, ks):
    """Lexicographically least solution by exhaustive search."""
    for t in itertools.product(*(range(0, n, n // k) for k in ks)):
        if sum(t) % n == delta:
            return t
    return None


def test_mod_inverse_examples():
    assert mod_inverse(Residue(1, 7)) == Residue(1, 7)
    assert mod_inverse(Residue(3, 5)) == Residue(2, 5)
    with pytest.raises(NotInvertible):
        mod_inverse(Residue(4, 6))


def test_residue_must_be_reduced():
    with pytest.raises(ValueError):
        Residue(7, 5)
    assert Residue.of(-1, 5) == Residue(4, 5)


@pytest.mark.parametrize("delta,ks,expected", [
    (0, (4, 6), (0, 0)),
    (2, (4, 6), (0, 2)),
    (1, (4, 6), (3, 10)),
])
def test_decompose_delta_examples(delta, ks, expected):
    # expected values frozen from brute_decompose
    got = decompose_delta(Residue(delta, 12), ks)
    assert tuple(r.value for r in got) == expected


def test_decompose_delta_no_solution():
    # n / lcm(2, 2) = 6 does not divide 3
    with pytest.raises(NoDecomposition):
        decompose_delta(Residue(3, 12), (2, 2))


def test_decompose_delta_exhaustive():
    for n in range(1, 25):
        ds = [d for d in divisors(n)]
        for r in (1, 2, 3):
            for ks in itertools.product(ds, repeat=r):
                beta = lcm(*ks)
                for delta in range(n):
                    expected = brute_decompose(delta, n, ks)
                    if expected is None:
                        assert delta % (n // beta)
                        with pytest.raises(NoDecomposition):
                            decompose_delta(Residue(delta, n), ks)
                        continue
                    got = decompose_delta(Residue(delta, n), ks)
                    assert tuple(x.value for x in got) == expected
                    assert sum(x.value for x in got) % n == delta
                    assert all(x.value % (n // k) == 0 for x, k in zip(got, ks))


@given(st.integers(2, 200), st.data())
def test_mod_inverse_is_an_involution(k, data):
    a = data.draw(st.sampled_from(units(k)))
    b = mod_inverse(Residue(a, k))
    assert a * b.value % k == 1
    assert mod_inverse(b) == Residue(a, k)


@given(st.lists(st.integers(1, 60), max_size=5))
def test_lcm_matches_math(values):
    assert lcm(*values) == (math.lcm(*values) if values else 1)


def test_generation():
    assert generates([(1, 0), (0, 1)], (2, 4))
    assert not generates([(1, 2), (1, 2)], (2, 4))
    assert generates([(1, 1)], (2, 3))
