"""Cyclic graphs, commuting graphs and enhanced power graphs of finite groups.

The package builds groups as Cayley tables (:mod:`zcyclic.kernel`), tests
subgroup structure (:mod:`zcyclic.structure`), constructs the graphs
(:mod:`zcyclic.graphs`), enumerates Z-groups (:mod:`zcyclic.zgen`) and
checks the known theorems about them over whole corpora
(:mod:`zcyclic.verifier`).
"""

from .errors import GroupError
from .graphs import (
    Graph,
    DiameterResult,
    commuting_graph,
    connected_components,
    cyclic_graph,
    diameter,
    dominating_vertices,
    enhanced_power_graph,
)
from .kernel import (
    ElemSet,
    FiniteGroup,
    closure,
    cyclic,
    cyclic_pair,
    dicyclic,
    dihedral,
    direct_product,
    from_cayley_table,
    from_permutation_generators,
    primary_decomposition,
)
from .structure import is_frobenius, is_z_group
from .verifier import analyze, check_theorem, run_suite
from .zgen import ZParams, enumerate_z_params, realize, z_groups_of_order

__version__ = "0.1.0"

__all__ = [
    "GroupError",
    "Graph", "DiameterResult", "commuting_graph", "connected_components", "cyclic_graph",
    "diameter", "dominating_vertices", "enhanced_power_graph",
    "ElemSet", "FiniteGroup", "closure", "cyclic", "cyclic_pair", "dicyclic", "dihedral",
    "direct_product", "from_cayley_table", "from_permutation_generators", "primary_decomposition",
    "is_frobenius", "is_z_group",
    "analyze", "check_theorem", "run_suite",
    "ZParams", "enumerate_z_params", "realize", "z_groups_of_order",
]
