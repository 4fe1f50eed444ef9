"""Complete homogeneous symmetric polynomials and their Schur-convexity bound."""

from __future__ import annotations

from itertools import combinations
from math import comb, factorial, prod

import numpy as np

BRUTEFORCE_MAX_TERMS = 10**7


def h_complete(d: int, xs) -> float:
    """h_d(x_1..x_k) via h_d(x_1..x_k) = h_d(x_1..x_{k-1}) + x_k h_{d-1}(x_1..x_k)."""
    if d < 0:
        raise ValueError("degree must be nonnegative")
    xs = [float(x) for x in xs]
    if not xs:
        raise ValueError("need at least one variable")
    h = [1.0] + [0.0] * d
    for x in xs:
        for j in range(1, d + 1):
            h[j] += x * h[j - 1]
    return h[d]


def h_bruteforce(d: int, xs) -> float:
    """Direct sum of all monomials of degree ``d`` (stars and bars)."""
    xs = [float(x) for x in xs]
    k = len(xs)
    if k < 1 or d < 0:
        raise ValueError("need d >= 0 and at least one variable")
    if comb(k + d - 1, d) > BRUTEFORCE_MAX_TERMS:
        raise ValueError("too many monomials for brute force")
    total = 0.0
    # bars at positions among d + k - 1 slots split d stars into k groups
    for bars in combinations(range(d + k - 1), k - 1):
        prev = -1
        exps = []
        for b in bars:
            exps.append(b - prev - 1)
            prev = b
        exps.append(d + k - 1 - prev - 1)
        total += prod(x**e for x, e in zip(xs, exps))
    return total


def schur_scale(d: int, xs) -> float:
    """Magnitude used to scale tolerances for degree ``2d`` in ``len(xs)`` variables."""
    k = len(xs)
    top = max(1.0, max(abs(float(x)) for x in xs))
    return top ** (2 * d) * comb(k + 2 * d - 1, 2 * d)


def schur_gap(d: int, xs) -> float:
    """h_{2d}(xs) minus its value at the constant tuple with the same mean."""
    if d < 1:
        raise ValueError("d must be at least 1")
    xs = [float(x) for x in xs]
    k = len(xs)
    mean = sum(xs) / k
    return h_complete(2 * d, xs) - comb(k + 2 * d - 1, 2 * d) * mean ** (2 * d)


def majorizes(xs, ys, tol: float = 1e-12) -> bool:
    """Whether ``xs`` majorizes ``ys`` (both sorted descending first)."""
    if len(xs) != len(ys):
        raise ValueError("tuples must have equal length")
    a = np.sort(np.asarray(xs, dtype=float))[::-1]
    b = np.sort(np.asarray(ys, dtype=float))[::-1]
    atol = tol * max(1.0, float(np.max(np.abs(a), initial=0.0)), float(np.max(np.abs(b), initial=0.0)))
    pa, pb = np.cumsum(a), np.cumsum(b)
    if abs(pa[-1] - pb[-1]) > atol:
        return False
    return bool(np.all(pa >= pb - atol))


def robin_hood_pair(rng: np.random.Generator, k: int, low=-2.0, high=2.0, transfers: int = 3):
    """Random ``(xs, ys)`` with ``xs`` majorizing ``ys``.

    ``ys`` is obtained from ``xs`` by transfers that move part of the gap from
    a larger coordinate to a smaller one, which preserves the sum and can only
    shrink the spread.
    """
    xs = rng.uniform(low, high, size=k)
    ys = xs.copy()
    for _ in range(transfers):
        if k < 2:
            break
        i, j = rng.choice(k, size=2, replace=False)
        if ys[i] < ys[j]:
            i, j = j, i
        delta = rng.uniform(0.0, 0.5) * (ys[i] - ys[j])
        ys[i] -= delta
        ys[j] += delta
    return xs, ys


MC_BATCH = 1 << 16


def monte_carlo_h(d: int, xs, samples: int, seed: int) -> tuple[float, float]:
    """Estimate h_{2d}(xs) as the mean of (sum x_i Z_i)^{2d} / (2d)!, Z_i ~ Exp(1).

    Batches draw from seeds spawned off ``seed`` and are summed in batch order,
    so the estimate depends only on ``(d, xs, samples, seed)``.
    """
    if samples < 1000:
        raise ValueError("need at least 1000 samples")
    x = np.asarray(xs, dtype=float)
    batches = -(-samples // MC_BATCH)
    children = np.random.SeedSequence(seed).spawn(batches)
    norm = factorial(2 * d)
    values = []
    remaining = samples
    for child in children:
        size = min(MC_BATCH, remaining)
        remaining -= size
        Z = np.random.default_rng(child).exponential(1.0, size=(size, x.size))
        values.append((Z @ x) ** (2 * d) / norm)
    v = np.concatenate(values)
    estimate = float(v.mean())
    stderr = float(v.std(ddof=1) / np.sqrt(v.size))
    return estimate, stderr
