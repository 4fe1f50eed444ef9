import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kernelhom.kernels import (
    complement,
    constant_kernel,
    edge_density,
    from_blocks,
    from_signed,
    kernel_from_dict,
    kernel_to_csv,
    load_kernel,
    negate,
    random_graphon,
    random_kernel,
    save_kernel,
    to_signed,
)


def brute_edge_density(W):
    total = 0.0
    for i in range(W.n):
        for j in range(W.n):
            total += W.measures[i] * W.measures[j] * W.matrix[i, j]
    return total


def test_constant_kernel():
    W = constant_kernel(0.5)
    assert W.n == 1 and W.matrix.tolist() == [[0.5]] and W.measures.tolist() == [1.0]
    assert edge_density(constant_kernel(0.0)) == 0.0
    assert edge_density(constant_kernel(1.0)) == 1.0
    with pytest.raises(ValueError):
        constant_kernel(float("nan"))


def test_named_kernels(kb, kd, kc):
    assert kb.is_graphon and not kd.is_graphon
    assert complement(kb) == kc
    assert to_signed(kb) == kd
    assert to_signed(constant_kernel(0.5)) == constant_kernel(0.0)
    assert edge_density(kb) == pytest.approx(brute_edge_density(kb)) == 0.5
    assert edge_density(kd) == pytest.approx(brute_edge_density(kd), abs=1e-15)
    assert edge_density(kd) == 0.0


@pytest.mark.parametrize(
    "matrix,measures",
    [
        ([[1, 0], [0, 1]], [0.3, 0.6]),
        ([[1, 0], [0, 1]], [1.0, 0.0]),
        ([[1, 0], [0, 1]], [1.5, -0.5]),
        ([[1, 0.1], [0, 1]], [0.5, 0.5]),
        ([[1, np.inf], [np.inf, 1]], [0.5, 0.5]),
        ([[1, 0, 0], [0, 1, 0]], [0.5, 0.5]),
        ([[1]], [0.5, 0.5]),
    ],
)
def test_from_blocks_rejects(matrix, measures):
    with pytest.raises(ValueError):
        from_blocks(matrix, measures)


def test_from_blocks_symmetrizes():
    W = from_blocks([[0.2, 0.5 + 4e-10], [0.5, 0.7]], [0.25, 0.75])
    assert np.array_equal(W.matrix, W.matrix.T)
    assert W.matrix[0, 1] == pytest.approx(0.5 + 2e-10, abs=1e-16)


def test_kernels_are_immutable(kb):
    with pytest.raises(ValueError):
        kb.matrix[0, 0] = 3.0


def test_random_determinism_and_ranges():
    assert random_graphon(4, 11) == random_graphon(4, 11)
    assert random_graphon(4, 11) != random_graphon(4, 12)
    W = random_graphon(4, 5)
    assert W.is_graphon and np.array_equal(W.matrix, W.matrix.T)
    U = to_signed(random_graphon(5, 9))
    assert np.all(np.abs(U.matrix) <= 1.0)
    K = random_kernel(5, 2.5, 3)
    assert K == random_kernel(5, 2.5, 3)
    assert K.bound <= 2.5 and np.any(K.matrix < 0)
    assert np.all(K.measures > 0) and abs(K.measures.sum() - 1) <= 1e-12
    with pytest.raises(ValueError):
        random_kernel(3, 0.0, 1)
    with pytest.raises(ValueError):
        random_graphon(0, 1)


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 6), st.integers(0, 2**64 - 1))
def test_transform_invariants(n, seed):
    W = random_graphon(n, seed)
    assert np.allclose(complement(complement(W)).matrix, W.matrix, rtol=0, atol=2e-16)
    assert np.allclose(from_signed(to_signed(W)).matrix, W.matrix, rtol=0, atol=2e-16)
    assert abs(edge_density(complement(W)) - (1 - edge_density(W))) <= 1e-12
    U = random_kernel(n, 1.5, seed)
    assert edge_density(negate(U)) == -edge_density(U)


def test_transforms_exact_on_dyadic_values():
    grid = np.arange(0, 17) / 16.0
    M = np.add.outer(grid[:8], grid[:8]) / 2
    W = from_blocks(M, np.full(8, 1 / 8))
    assert complement(complement(W)) == W
    assert from_signed(to_signed(W)) == W


def test_json_roundtrip(tmp_path):
    W = random_graphon(3, 1)
    path = tmp_path / "w.json"
    save_kernel(W, path)
    assert load_kernel(path) == W


@pytest.mark.parametrize(
    "data",
    [
        {"n": 1, "matrix": [[1]], "measures": [1], "extra": 0},
        {"n": 2, "matrix": [[1]], "measures": [1]},
        {"n": 1, "matrix": [[1]]},
        {"n": 1, "matrix": [["a"]], "measures": [1]},
        {"n": True, "matrix": [[1]], "measures": [1]},
        [1, 2, 3],
    ],
)
def test_json_validation(data):
    with pytest.raises(ValueError):
        kernel_from_dict(data)


def test_bad_json_file(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    with pytest.raises(ValueError):
        load_kernel(path)


def test_csv_export(kb):
    lines = kernel_to_csv(kb).splitlines()
    assert lines == ["1.0,0.0", "0.0,1.0", "0.5,0.5"]
    W = random_graphon(3, 2)
    rows = [list(map(float, line.split(","))) for line in kernel_to_csv(W).splitlines()]
    assert np.array_equal(np.array(rows[:3]), W.matrix)
    assert np.array_equal(np.array(rows[3]), W.measures)


def test_to_dict_is_json(kb):
    assert json.loads(json.dumps(kb.to_dict())) == {"n": 2, "measures": [0.5, 0.5], "matrix": [[1.0, 0.0], [0.0, 1.0]]}
