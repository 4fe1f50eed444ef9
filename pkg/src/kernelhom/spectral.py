"""Spectral law of a step kernel.

The kernel operator of a step kernel acts on block-constant functions as
``M diag(mu)``, which is similar to the symmetric ``S = D^{1/2} M D^{1/2}``.
An eigenvalue ``lam`` of ``S`` with unit eigenvector ``v`` carries weight
``p = <sqrt(mu), v>^2``, the squared integral of the matching normalised
eigenfunction. The residual mass ``1 - sum(p)`` sits at zero. Under this law the
moment of order ``m`` is the path density ``t_{P_m}``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from kernelhom.densities import _trace_power
from kernelhom.kernels import StepKernel, edge_density

PARSEVAL_TOL = 1e-9
ZERO_EIGENVALUE = 1e-12


class ParsevalError(ArithmeticError):
    pass


@dataclass(frozen=True)
class Spectrum:
    eigenvalues: tuple[float, ...]
    weights: tuple[float, ...]
    residual: float
    parseval_sum: float  # sum of weights before clamping/renormalisation

    lambda0 = 0.0

    def to_dict(self) -> dict:
        return {
            "eigenvalues": list(self.eigenvalues),
            "weights": list(self.weights),
            "residual": self.residual,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def decompose(U: StepKernel) -> Spectrum:
    root = np.sqrt(U.measures)
    S = root[:, None] * U.matrix * root[None, :]
    try:
        lam, vecs = np.linalg.eigh(S)
    except np.linalg.LinAlgError as exc:
        raise ArithmeticError(f"eigensolver failed: {exc}") from exc
    # descending |lambda|, ties broken by larger lambda first
    order = np.lexsort((-lam, -np.abs(lam)))
    lam, vecs = lam[order], vecs[:, order]
    p = (root @ vecs) ** 2
    p[np.abs(lam) < ZERO_EIGENVALUE] = 0.0

    total = float(p.sum())
    if total > 1.0 + PARSEVAL_TOL:
        raise ParsevalError(f"spectral weights sum to {total!r} > 1")
    if total > 1.0:
        p = p / total
    residual = max(0.0, 1.0 - float(p.sum()))
    return Spectrum(
        eigenvalues=tuple(float(x) for x in lam),
        weights=tuple(float(x) for x in p),
        residual=residual,
        parseval_sum=total,
    )


def moment(s: Spectrum, m: int) -> float:
    """E[X^m] for the spectral law; the atom at zero only counts for m = 0."""
    if m < 0:
        raise ValueError("moment order must be nonnegative")
    if m == 0:
        return 1.0
    lam = np.asarray(s.eigenvalues)
    return float(np.asarray(s.weights) @ lam**m)


def moments(s: Spectrum, up_to: int) -> list[float]:
    return [moment(s, m) for m in range(up_to + 1)]


def even_cycle_check(U: StepKernel, m: int, tol: float = 1e-9):
    """Check t_{C_m}(U)^{1/m} >= |lambda_1| >= |t_{K_2}(U)| for even ``m``.

    The report's sides are ``t_{C_m}(U)`` and ``t_{K_2}(U)^m``; the two chain
    links are recorded in the context and both must hold for a pass.
    """
    from kernelhom.verify import make_report

    if m < 2 or m % 2:
        raise ValueError("even_cycle_check needs an even cycle length m >= 2")
    s = decompose(U)
    t_cycle = _trace_power(U, m)
    t_edge = edge_density(U)
    lam1 = abs(s.eigenvalues[0])
    root = max(t_cycle, 0.0) ** (1.0 / m)
    return make_report(
        "eq:even_cycle",
        t_cycle,
        t_edge**m,
        tol,
        {
            "graph": f"cycle:{m}",
            "kernel": U.fingerprint(),
            "cycle_root": root,
            "lambda1_abs": lam1,
            "edge_density_abs": abs(t_edge),
        },
        {
            "cycle_root_ge_lambda1": root - lam1 >= -tol,
            "lambda1_ge_edge_density": lam1 - abs(t_edge) >= -tol,
        },
    )
