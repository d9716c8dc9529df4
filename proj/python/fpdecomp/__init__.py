"""Decompose graph adjacency matrices over prime fields.

Every finite simple graph's adjacency matrix is congruent over F_p to a
direct sum of small catalog blocks (complete graphs, the 5-cycle, two
special graphs, and K1 padding); this package constructs the blocks and
the explicit invertible transform, and provides the brute-force
enumeration oracles used to pin the theory down.
"""

from ._core import (
    CapExceededError,
    Graph,
    InfeasibleError,
    ParseError,
    catalog_graph,
    classify,
    complete_graph,
    decompose,
    det_spectrum,
    direct_sum,
    invariants,
    residue_class,
    smallest_nonresidue,
    sqrt_mod,
    two_square_split,
    verify,
)

__version__ = "0.1.0"

__all__ = [
    "CapExceededError",
    "Graph",
    "InfeasibleError",
    "ParseError",
    "catalog_graph",
    "classify",
    "complete_graph",
    "decompose",
    "det_spectrum",
    "direct_sum",
    "invariants",
    "residue_class",
    "smallest_nonresidue",
    "sqrt_mod",
    "two_square_split",
    "verify",
    "__version__",
]
