"""Triangular decomposition in top-down style with chordal-graph tracking.

The package decomposes multivariate polynomial systems over the rationals
or a prime field into triangular systems, records the full binary
decomposition tree, and ships the graph machinery (perfect elimination
orderings, chordal completion, treewidth bounds, sparsity measures) plus
brute-force oracles that re-verify the structural guarantees on every run.
"""

from .errors import Error, ParseError
from .fields import GF, QQ, PrimeField, RationalField
from .graphs import (
    ChordalityCertificate,
    VarGraph,
    associated_graph,
    chordal_complete,
    check_peo,
    find_peo,
    graph_of_polys,
    is_subgraph,
    mcs_order,
    sparsity,
    to_dot,
    treewidth_bound,
)
from .polynomials import (
    Polynomial,
    initial_and_tail,
    pseudo_remainder,
    reduce_mod_p,
    support,
)
from .reduction import (
    LeveledSystem,
    PivotRule,
    level,
    lower_rank,
    prem_chain_map,
    prem_map,
    reduce_level,
    reduction_stages,
    successive_reduction,
    support_preserving_map,
)
from .systems import PolySystem, parse_poly, parse_system, render, render_poly, render_system
from .verify import (
    CheckReport,
    ZeroSet,
    brute_force_peo,
    check_decomposition,
    check_reduction_chain,
    check_tree_chordality,
    native_prime_runs,
    random_chordal_system,
    zero_set,
)
from .wang import DecompNode, DecompTree, TriangularSystem, decompose, emitted_systems, split_node

__version__ = "0.1.0"

__all__ = [
    "ChordalityCertificate",
    "CheckReport",
    "DecompNode",
    "DecompTree",
    "Error",
    "GF",
    "LeveledSystem",
    "ParseError",
    "PivotRule",
    "PolySystem",
    "Polynomial",
    "PrimeField",
    "QQ",
    "RationalField",
    "TriangularSystem",
    "VarGraph",
    "ZeroSet",
    "associated_graph",
    "brute_force_peo",
    "check_decomposition",
    "check_peo",
    "check_reduction_chain",
    "check_tree_chordality",
    "chordal_complete",
    "decompose",
    "emitted_systems",
    "find_peo",
    "graph_of_polys",
    "initial_and_tail",
    "is_subgraph",
    "level",
    "lower_rank",
    "mcs_order",
    "native_prime_runs",
    "parse_poly",
    "parse_system",
    "prem_chain_map",
    "prem_map",
    "pseudo_remainder",
    "random_chordal_system",
    "reduce_level",
    "reduce_mod_p",
    "reduction_stages",
    "render",
    "render_poly",
    "render_system",
    "sparsity",
    "split_node",
    "successive_reduction",
    "support",
    "support_preserving_map",
    "to_dot",
    "treewidth_bound",
    "zero_set",
]
