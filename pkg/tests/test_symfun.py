from itertools import product
from math import comb, prod

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kernelhom.symfun import (
    h_bruteforce,
    h_complete,
    majorizes,
    monte_carlo_h,
    robin_hood_pair,
    schur_gap,
    schur_scale,
)


def h_product_oracle(d, xs):
    """Monomial sum via itertools.product over exponent vectors."""
    return sum(
        prod(x**e for x, e in zip(xs, exps))
        for exps in product(range(d + 1), repeat=len(xs))
        if sum(exps) == d
    )


@pytest.mark.parametrize("h", [h_complete, h_bruteforce])
def test_h_examples(h):
    assert h(2, (1, 1)) == 3
    assert h(2, (1, -1)) == 1
    assert h(2, (2, 0, 1)) == 7
    assert h(0, (5.0, 3.0)) == 1
    for k in range(1, 6):
        assert h(2, [1.5] * k) == pytest.approx(comb(k + 1, 2) * 1.5**2)


@pytest.mark.parametrize("d,k", [(d, k) for d in range(0, 5) for k in range(1, 4)])
def test_h_against_product_oracle(d, k, rng):
    xs = rng.uniform(-2, 2, size=k)
    ref = h_product_oracle(d, xs)
    assert h_complete(d, xs) == pytest.approx(ref, rel=1e-12, abs=1e-12)
    assert h_bruteforce(d, xs) == pytest.approx(ref, rel=1e-12, abs=1e-12)


def test_h_errors():
    with pytest.raises(ValueError):
        h_complete(-1, (1.0,))
    with pytest.raises(ValueError):
        h_complete(2, ())
    with pytest.raises(ValueError):
        h_bruteforce(30, [1.0] * 30)


def test_schur_gap_examples():
    assert schur_gap(1, (0.7, 0.7, 0.7)) == pytest.approx(0.0, abs=1e-14)
    assert schur_gap(1, (1, -1)) == 1
    assert schur_gap(1, (2, 0, 1)) == pytest.approx(1.0)
    with pytest.raises(ValueError):
        schur_gap(0, (1, 2))


def test_majorizes_examples():
    assert majorizes((2, 0), (1, 1))
    assert not majorizes((1, 1), (2, 0))
    assert majorizes((1, 0, -1), (0, 0, 0))
    assert majorizes((0, 2), (1, 1))  # sorted convention
    assert not majorizes((3, 0), (1, 1))  # totals differ
    with pytest.raises(ValueError):
        majorizes((1,), (1, 0))


finite = st.floats(-2, 2, allow_nan=False)


@settings(max_examples=300, deadline=None)
@given(st.integers(1, 4), st.lists(finite, min_size=1, max_size=6))
def test_hunter_and_schur_gap(d, xs):
    scale = schur_scale(d, xs)
    assert h_complete(2 * d, xs) >= -1e-12 * scale
    assert schur_gap(d, xs) >= -1e-9 * scale


@settings(max_examples=300, deadline=None)
@given(st.integers(1, 3), st.integers(1, 6), st.integers(0, 2**32))
def test_schur_monotone_on_transfers(d, k, seed):
    xs, ys = robin_hood_pair(np.random.default_rng(seed), k)
    assert majorizes(xs, ys)
    scale = schur_scale(d, xs)
    assert h_complete(2 * d, sorted(xs)) >= h_complete(2 * d, sorted(ys)) - 1e-9 * scale


def test_gap_zero_only_on_constant():
    assert schur_gap(2, (1.0, 1.0 + 1e-3)) > 0
    assert schur_gap(2, (-0.4,) * 5) == pytest.approx(0.0, abs=1e-14)


def test_monte_carlo_examples():
    est, se = monte_carlo_h(1, (1.0,), 200_000, 1)
    assert abs(est - 1.0) <= 5 * se
    est, se = monte_carlo_h(1, (1.0, 1.0), 10**6, 2)
    assert abs(est - 3.0) <= 4 * se
    est, se = monte_carlo_h(1, (1.0, -1.0), 10**6, 3)
    assert abs(est - 1.0) <= 4 * se


def test_monte_carlo_reproducible():
    a = monte_carlo_h(2, (0.5, -1.0, 1.5), 70_000, 12)
    b = monte_carlo_h(2, (0.5, -1.0, 1.5), 70_000, 12)
    assert a == b
    with pytest.raises(ValueError):
        monte_carlo_h(1, (1.0,), 10, 0)
