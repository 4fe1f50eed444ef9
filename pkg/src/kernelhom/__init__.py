"""Homomorphism densities of paths and cycles over step kernels, with
numerical verifiers for the commonality-type inequalities they satisfy."""

from kernelhom.graphs import (
    Composition,
    Graph,
    SubgraphMask,
    composition_to_subgraph,
    compositions,
    even_spanning_subgraphs,
    even_subgraphs_of_size,
    make_cycle,
    make_edge,
    make_graph,
    make_path,
    parse_graph,
    subgraph_to_composition,
)
from kernelhom.kernels import (
    StepKernel,
    complement,
    constant_kernel,
    edge_density,
    from_blocks,
    negate,
    random_graphon,
    random_kernel,
    to_signed,
)
from kernelhom.densities import t_cycle_fast, t_hom_oracle, t_path_fast, t_subgraph
from kernelhom.spectral import Spectrum, decompose, even_cycle_check, moment
from kernelhom.symfun import h_bruteforce, h_complete, majorizes, monte_carlo_h, schur_gap
from kernelhom.verify import VerdictReport

__version__ = "0.1.0"

__all__ = [
    "Composition",
    "Graph",
    "Spectrum",
    "StepKernel",
    "SubgraphMask",
    "VerdictReport",
    "complement",
    "composition_to_subgraph",
    "compositions",
    "constant_kernel",
    "decompose",
    "edge_density",
    "even_cycle_check",
    "even_spanning_subgraphs",
    "even_subgraphs_of_size",
    "from_blocks",
    "h_bruteforce",
    "h_complete",
    "majorizes",
    "make_cycle",
    "make_edge",
    "make_graph",
    "make_path",
    "moment",
    "monte_carlo_h",
    "negate",
    "parse_graph",
    "random_graphon",
    "random_kernel",
    "schur_gap",
    "subgraph_to_composition",
    "t_cycle_fast",
    "t_hom_oracle",
    "t_path_fast",
    "t_subgraph",
    "to_signed",
]
