"""Step kernels: symmetric block matrices with block measures.

A step kernel on ``n`` blocks represents the function on ``[0,1]^2`` that is
constant ``matrix[i, j]`` on the rectangle of blocks ``i`` and ``j``, where
block ``i`` has width ``measures[i]``.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

SYMMETRY_TOL = 1e-9
MEASURE_TOL = 1e-12

_KERNEL_FIELDS = {"n", "matrix", "measures"}


@dataclass(frozen=True, eq=False)
class StepKernel:
    matrix: np.ndarray
    measures: np.ndarray

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    @property
    def bound(self) -> float:
        return float(np.max(np.abs(self.matrix)))

    @property
    def is_graphon(self) -> bool:
        return bool(np.all((self.matrix >= 0.0) & (self.matrix <= 1.0)))

    def fingerprint(self) -> str:
        h = hashlib.sha256()
        h.update(np.ascontiguousarray(self.matrix, dtype="<f8").tobytes())
        h.update(np.ascontiguousarray(self.measures, dtype="<f8").tobytes())
        return h.hexdigest()[:12]

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "measures": self.measures.tolist(),
            "matrix": self.matrix.tolist(),
        }

    def __eq__(self, other):
        if not isinstance(other, StepKernel):
            return NotImplemented
        return np.array_equal(self.matrix, other.matrix) and np.array_equal(
            self.measures, other.measures
        )

    def __repr__(self):
        return f"StepKernel(n={self.n}, fingerprint={self.fingerprint()})"


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=np.float64)
    a.setflags(write=False)
    return a


def from_blocks(matrix, measures) -> StepKernel:
    """Validate and build a step kernel.

    The matrix must be symmetric to within 1e-9; it is then averaged with its
    transpose so that downstream code sees exact symmetry.
    """
    M = np.asarray(matrix, dtype=np.float64)
    mu = np.asarray(measures, dtype=np.float64)
    if M.ndim != 2 or M.shape[0] != M.shape[1] or M.shape[0] == 0:
        raise ValueError(f"matrix must be a nonempty square array, got shape {M.shape}")
    if mu.shape != (M.shape[0],):
        raise ValueError(f"measures must have shape ({M.shape[0]},), got {mu.shape}")
    if not np.all(np.isfinite(M)):
        raise ValueError("matrix has non-finite entries")
    if not np.all(np.isfinite(mu)) or np.any(mu <= 0):
        raise ValueError("measures must be finite and strictly positive")
    if abs(float(mu.sum()) - 1.0) > MEASURE_TOL:
        raise ValueError(f"measures sum to {mu.sum()!r}, not 1")
    asym = float(np.max(np.abs(M - M.T)))
    if asym > SYMMETRY_TOL:
        raise ValueError(f"matrix is not symmetric (max deviation {asym:.3g})")
    if asym > 0:
        M = (M + M.T) / 2.0
    return StepKernel(_frozen(M), _frozen(mu))


def constant_kernel(c: float) -> StepKernel:
    if not np.isfinite(c):
        raise ValueError("constant must be finite")
    return from_blocks([[float(c)]], [1.0])


def complement(W: StepKernel) -> StepKernel:
    """Pointwise ``1 - W``."""
    return StepKernel(_frozen(1.0 - W.matrix), W.measures)


def to_signed(W: StepKernel) -> StepKernel:
    """Pointwise ``2W - 1``."""
    return StepKernel(_frozen(2.0 * W.matrix - 1.0), W.measures)


def from_signed(U: StepKernel) -> StepKernel:
    """Pointwise ``(U + 1) / 2``, the inverse of :func:`to_signed`."""
    return StepKernel(_frozen((U.matrix + 1.0) / 2.0), U.measures)


def negate(U: StepKernel) -> StepKernel:
    return StepKernel(_frozen(-U.matrix), U.measures)


def edge_density(W: StepKernel) -> float:
    mu = W.measures
    return float(mu @ W.matrix @ mu)


def _rng(seed: int) -> np.random.Generator:
    # Philox is counter-based, so a (seed, trial) pair maps to one stream.
    return np.random.Generator(np.random.Philox(int(seed) % 2**64))


def _random_measures(rng: np.random.Generator, n: int) -> np.ndarray:
    mu = rng.dirichlet(np.ones(n))
    # Dirichlet draws can underflow to 0 for large n; keep blocks positive.
    mu = np.maximum(mu, 1e-12)
    return mu / mu.sum()


def _random_symmetric(rng: np.random.Generator, n: int, lo: float, hi: float) -> np.ndarray:
    upper = rng.uniform(lo, hi, size=(n, n))
    return np.triu(upper) + np.triu(upper, 1).T


def random_graphon(n: int, seed: int) -> StepKernel:
    if n < 1:
        raise ValueError("n must be positive")
    rng = _rng(seed)
    M = _random_symmetric(rng, n, 0.0, 1.0)
    return from_blocks(M, _random_measures(rng, n))


def random_kernel(n: int, bound: float, seed: int) -> StepKernel:
    if n < 1:
        raise ValueError("n must be positive")
    if not bound > 0:
        raise ValueError("bound must be positive")
    rng = _rng(seed)
    M = _random_symmetric(rng, n, -bound, bound)
    return from_blocks(M, _random_measures(rng, n))


def kernel_from_dict(data) -> StepKernel:
    if not isinstance(data, dict):
        raise ValueError("kernel JSON must be an object")
    unknown = set(data) - _KERNEL_FIELDS
    if unknown:
        raise ValueError(f"unknown kernel fields: {sorted(unknown)}")
    missing = _KERNEL_FIELDS - set(data)
    if missing:
        raise ValueError(f"missing kernel fields: {sorted(missing)}")
    n = data["n"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ValueError("field 'n' must be a positive integer")
    matrix, measures = data["matrix"], data["measures"]
    if not isinstance(measures, list) or len(measures) != n:
        raise ValueError(f"'measures' must be an array of {n} numbers")
    if not isinstance(matrix, list) or len(matrix) != n or any(
        not isinstance(row, list) or len(row) != n for row in matrix
    ):
        raise ValueError(f"'matrix' must be an array of {n} arrays of {n} numbers")
    for value in [*measures, *(x for row in matrix for x in row)]:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ValueError(f"non-numeric kernel entry {value!r}")
    return from_blocks(matrix, measures)


def load_kernel(path) -> StepKernel:
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValueError(f"{path}: invalid JSON ({exc})") from None
    return kernel_from_dict(data)


def save_kernel(W: StepKernel, path) -> None:
    Path(path).write_text(json.dumps(W.to_dict(), indent=2) + "\n")


def kernel_to_csv(W: StepKernel) -> str:
    """``n`` rows of the matrix followed by one row of measures."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    for row in W.matrix:
        writer.writerow([repr(float(x)) for x in row])
    writer.writerow([repr(float(x)) for x in W.measures])
    return buf.getvalue()
