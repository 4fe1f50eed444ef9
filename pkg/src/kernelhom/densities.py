"""Homomorphism densities over step kernels.

``t_hom_oracle`` evaluates the defining integral exactly by summing over every
assignment of vertices to blocks. The path and cycle routines use transfer
matrices and must agree with it to 1e-10 relative.
"""

from __future__ import annotations

import numpy as np

from kernelhom.graphs import Graph, SubgraphMask
from kernelhom.kernels import StepKernel

ORACLE_MAX_MAPS = 10**8
_CHUNK = 1 << 16


def oracle_map_count(H: Graph, W: StepKernel) -> int:
    return W.n ** H.vertex_count


def t_hom_oracle(H: Graph, W: StepKernel) -> float:
    """Brute-force t_H(W): sum over all maps V(H) -> blocks."""
    n, v = W.n, H.vertex_count
    total_maps = n**v
    if total_maps > ORACLE_MAX_MAPS:
        raise ValueError(f"oracle would enumerate {total_maps} maps (> {ORACLE_MAX_MAPS})")
    if v == 0:
        return 1.0
    M, mu = W.matrix, W.measures
    powers = n ** np.arange(v, dtype=np.int64)
    total = 0.0
    for start in range(0, total_maps, _CHUNK):
        idx = np.arange(start, min(start + _CHUNK, total_maps), dtype=np.int64)
        phi = (idx[:, None] // powers[None, :]) % n
        weight = np.prod(mu[phi], axis=1)
        for a, b in H.edges:
            weight = weight * M[phi[:, a], phi[:, b]]
        total += float(weight.sum())
    return total


def _transfer(W: StepKernel) -> np.ndarray:
    # A[i, j] = M[i, j] * mu[j]
    return W.matrix * W.measures[None, :]


def t_path_fast(m: int, W: StepKernel) -> float:
    """t_{P_m}(W) by ``m`` matrix-vector products; ``t_{P_0} = 1``."""
    if m < 0:
        raise ValueError("path length must be nonnegative")
    if m == 0:
        return 1.0
    A = _transfer(W)
    vec = W.measures.copy()
    for _ in range(m):
        vec = vec @ A
    return float(vec.sum())


def _trace_power(W: StepKernel, m: int) -> float:
    A = _transfer(W)
    P = A.copy()
    for _ in range(m - 1):
        P = P @ A
    return float(np.trace(P))


def t_cycle_fast(m: int, W: StepKernel) -> float:
    """t_{C_m}(W) = trace((M diag(mu))^m)."""
    if m < 3:
        raise ValueError("cycle length must be at least 3")
    return _trace_power(W, m)


def _component_kind(vertices: list[int], edges: list[tuple[int, int]]) -> str:
    k, e = len(vertices), len(edges)
    degree: dict[int, int] = {}
    for a, b in edges:
        degree[a] = degree.get(a, 0) + 1
        degree[b] = degree.get(b, 0) + 1
    if any(d > 2 for d in degree.values()):
        return "generic"
    if e == k - 1:
        return "path"
    if e == k and k >= 3:
        return "cycle"
    return "generic"


def t_subgraph(F: SubgraphMask, W: StepKernel, *, engine: str = "fast", cache=None) -> float:
    """t_F(W) for a spanning subgraph, as a product over its components.

    Isolated vertices contribute a factor 1. With ``engine="oracle"`` each
    component goes through the brute-force sum. ``cache`` may be a dict reused
    across calls with the same kernel.
    """
    result = 1.0
    for vertices, edges in F.components():
        if not edges:
            continue
        kind = _component_kind(vertices, edges) if engine == "fast" else "generic"
        key = (kind, len(edges))
        if cache is not None and kind != "generic" and key in cache:
            value = cache[key]
        elif kind == "path":
            value = t_path_fast(len(edges), W)
        elif kind == "cycle":
            value = t_cycle_fast(len(edges), W)
        else:
            relabel = {v: i for i, v in enumerate(vertices)}
            comp = Graph(len(vertices), tuple((relabel[a], relabel[b]) for a, b in edges))
            value = t_hom_oracle(comp, W)
        if cache is not None and kind != "generic":
            cache[key] = value
        result *= value
    return result


def t_graph(H: Graph, W: StepKernel) -> float:
    """Fast density for paths, cycles and K_2; oracle otherwise."""
    if H.kind in ("path", "edge"):
        return t_path_fast(H.edge_count, W)
    if H.kind == "cycle":
        return t_cycle_fast(H.edge_count, W)
    return t_hom_oracle(H, W)
