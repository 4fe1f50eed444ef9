"""Small graphs, their even spanning subgraphs, and the composition bijection
for even subgraphs of a path.

Edges of ``P_m`` are indexed left to right: edge ``k`` joins vertices ``k`` and
``k + 1``. Subgraphs are stored as integer bitmasks over edge indices.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterator

MAX_ENUMERATION_EDGES = 24


@dataclass(frozen=True)
class Graph:
    vertex_count: int
    edges: tuple[tuple[int, int], ...]
    kind: str = "generic"
    size: int | None = None

    def __post_init__(self):
        if self.vertex_count < 0:
            raise ValueError("vertex_count must be nonnegative")
        seen = set()
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < self.vertex_count and 0 <= v < self.vertex_count):
                raise ValueError(f"edge ({u}, {v}) out of range")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise ValueError(f"duplicate edge {key}")
            seen.add(key)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def describe(self) -> str:
        if self.kind == "path":
            return f"path:{self.size}"
        if self.kind == "cycle":
            return f"cycle:{self.size}"
        if self.kind == "edge":
            return "k2"
        return f"generic:{self.vertex_count}:{self.edge_count}"

    def without_edge(self, index: int) -> "Graph":
        """Spanning subgraph with edge ``index`` removed (vertex set kept)."""
        edges = self.edges[:index] + self.edges[index + 1:]
        return Graph(self.vertex_count, edges)


def make_path(m: int) -> Graph:
    if m < 1:
        raise ValueError("a path needs at least one edge")
    return Graph(m + 1, tuple((k, k + 1) for k in range(m)), "path", m)


def make_cycle(m: int) -> Graph:
    if m < 3:
        raise ValueError("a cycle needs at least three edges")
    return Graph(m, tuple((k, (k + 1) % m) for k in range(m)), "cycle", m)


def make_edge() -> Graph:
    return Graph(2, ((0, 1),), "edge", 1)


def make_graph(vertex_count: int, edges) -> Graph:
    return Graph(vertex_count, tuple((int(u), int(v)) for u, v in edges))


def parse_graph(text: str) -> Graph:
    """Parse ``path:m``, ``cycle:m`` or ``k2``."""
    text = text.strip().lower()
    if text == "k2":
        return make_edge()
    kind, sep, arg = text.partition(":")
    if not sep:
        raise ValueError(f"cannot parse graph {text!r}")
    try:
        m = int(arg)
    except ValueError:
        raise ValueError(f"cannot parse graph size in {text!r}") from None
    if kind == "path":
        return make_path(m)
    if kind == "cycle":
        return make_cycle(m)
    raise ValueError(f"unknown graph kind {kind!r}")


def is_path_like(H: Graph) -> bool:
    """True for ``path:m`` and ``k2``, the hosts of the composition bijection."""
    return H.kind in ("path", "edge")


@dataclass(frozen=True)
class SubgraphMask:
    host: Graph
    mask: int

    def __post_init__(self):
        if self.mask < 0 or self.mask >> self.host.edge_count:
            raise ValueError("mask has bits outside the host edge range")

    @property
    def edge_count(self) -> int:
        return self.mask.bit_count()

    @property
    def edge_indices(self) -> tuple[int, ...]:
        return tuple(k for k in range(self.host.edge_count) if self.mask >> k & 1)

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return tuple(self.host.edges[k] for k in self.edge_indices)

    @property
    def is_even_positive(self) -> bool:
        n = self.edge_count
        return n > 0 and n % 2 == 0

    def components(self) -> list[tuple[list[int], list[tuple[int, int]]]]:
        """Connected components as (vertices, edges), isolated vertices included."""
        parent = list(range(self.host.vertex_count))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        edges = self.edges
        for u, v in edges:
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[max(ru, rv)] = min(ru, rv)
        groups: dict[int, tuple[list[int], list[tuple[int, int]]]] = {}
        for v in range(self.host.vertex_count):
            groups.setdefault(find(v), ([], []))[0].append(v)
        for u, v in edges:
            groups[find(u)][1].append((u, v))
        return [groups[r] for r in sorted(groups)]


def _check_cap(H: Graph):
    if H.edge_count > MAX_ENUMERATION_EDGES:
        raise ValueError(
            f"host has {H.edge_count} edges; enumeration is capped at "
            f"{MAX_ENUMERATION_EDGES}"
        )


def even_spanning_subgraphs(H: Graph) -> list[SubgraphMask]:
    """All spanning subgraphs with a positive even number of edges, by mask value."""
    _check_cap(H)
    out = []
    for mask in range(1, 1 << H.edge_count):
        if mask.bit_count() % 2 == 0:
            out.append(SubgraphMask(H, mask))
    return out


def even_subgraphs_of_size(H: Graph, two_d: int) -> list[SubgraphMask]:
    if two_d % 2 or two_d < 2:
        raise ValueError("two_d must be an even positive integer")
    if two_d > H.edge_count:
        raise ValueError("two_d exceeds the number of host edges")
    _check_cap(H)
    masks = sorted(
        sum(1 << k for k in chosen) for chosen in combinations(range(H.edge_count), two_d)
    )
    return [SubgraphMask(H, mask) for mask in masks]


@dataclass(frozen=True)
class Composition:
    parts: tuple[int, ...]

    def __post_init__(self):
        if not self.parts:
            raise ValueError("a composition needs at least one part")
        if any(p < 0 for p in self.parts):
            raise ValueError("composition parts must be nonnegative")

    @property
    def degree(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)


def _weak_compositions(total: int, k: int) -> Iterator[tuple[int, ...]]:
    if k == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _weak_compositions(total - first, k - 1):
            yield (first,) + rest


def compositions(m: int, d: int) -> Iterator[Composition]:
    """Weak compositions of ``2d`` into ``m - 2d + 1`` parts, lexicographically.

    There are ``C(m, 2d)`` of them, one per member of E^+_{2d}(P_m).
    """
    if not 1 <= d or 2 * d > m:
        raise ValueError(f"need 1 <= d <= m/2, got m={m}, d={d}")
    for parts in _weak_compositions(2 * d, m - 2 * d + 1):
        yield Composition(parts)


def subgraph_to_composition(F: SubgraphMask) -> Composition:
    """Map an even subgraph of ``P_m`` to its run-length composition.

    Part ``i`` counts the edges of the component of F that contains the left
    endpoint of the ``i``-th missing edge; the last part is the component
    holding the rightmost vertex.
    """
    if not is_path_like(F.host):
        raise ValueError("subgraph_to_composition requires a path host")
    m = F.host.edge_count
    parts = []
    run = 0
    for k in range(m):
        if F.mask >> k & 1:
            run += 1
        else:
            parts.append(run)
            run = 0
    parts.append(run)
    return Composition(tuple(parts))


def composition_to_subgraph(m: int, c: Composition) -> SubgraphMask:
    k = c.length
    if k > m + 1 or c.degree != m - k + 1:
        raise ValueError(f"composition {c.parts} does not describe a subgraph of P_{m}")
    mask = 0
    pos = 0
    for i, ell in enumerate(c.parts):
        mask |= ((1 << ell) - 1) << pos
        pos += ell
        if i < k - 1:
            pos += 1  # skip the missing edge
    return SubgraphMask(make_path(m), mask)
