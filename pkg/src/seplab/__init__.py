"""seplab: separation profiles of graph families.

Exact balanced vertex separators, the constructive cuts that certify their
upper bounds, hyperbolicity and tree-quotient machinery, regular-map
verification, and profile-curve experiments over deterministic graph
generators.
"""

__version__ = "0.1.0"

from .coarse import (
    QuotientTree,
    SigmaForest,
    hyperbolicity_delta,
    quotient_tree,
    sigma_geodesics,
    sphere_classes,
)
from .constructive import (
    TreeDecomposition,
    TtreeMedianReport,
    bag_separator,
    hyperplane_separator,
    ttree_median_separator,
)
from .errors import (
    CapacityError,
    DecompositionError,
    GeodesicSearchError,
    InputError,
)
from .generators import (
    FamilySpec,
    binary_tree,
    comb,
    grid,
    hyperbolic_tiling_ball,
    lamplighter_ball,
    lamplighter_position_map,
    sierpinski,
    tree_product_ball,
)
from .graph import (
    UNREACHABLE,
    Graph,
    GraphMap,
    ball,
    bfs_distances,
    cartesian_product,
    components,
    from_edges,
    identity_map,
    induced_subgraph,
    is_connected,
)
from .levelsets import (
    ColoringScheme,
    quasi_level_components,
    verify_asdim_coloring,
)
from .profile import (
    GrowthFit,
    ProfileCurve,
    ProfilePoint,
    fit_growth,
    run_profile,
)
from .regmaps import (
    RegularityReport,
    SemiRegularityTable,
    StrongTreeDecomposition,
    map_distortion,
    pullback_separator,
    strong_td_to_tree_map,
    verify_regular,
    verify_semi_regular,
)
from .separator import (
    BalanceReport,
    Separator,
    TreewidthResult,
    is_balanced_separator,
    min_balanced_separator,
    product_bound_report,
    refine_to_c,
    treewidth_exact,
    vertex_connectivity,
)

__all__ = [
    "__version__",
    "UNREACHABLE",
    "Graph",
    "GraphMap",
    "BalanceReport",
    "Separator",
    "TreewidthResult",
    "TreeDecomposition",
    "TtreeMedianReport",
    "QuotientTree",
    "SigmaForest",
    "RegularityReport",
    "SemiRegularityTable",
    "StrongTreeDecomposition",
    "ColoringScheme",
    "FamilySpec",
    "ProfileCurve",
    "ProfilePoint",
    "GrowthFit",
    "InputError",
    "CapacityError",
    "DecompositionError",
    "GeodesicSearchError",
    "from_edges",
    "components",
    "bfs_distances",
    "ball",
    "cartesian_product",
    "induced_subgraph",
    "identity_map",
    "is_connected",
    "grid",
    "binary_tree",
    "tree_product_ball",
    "sierpinski",
    "hyperbolic_tiling_ball",
    "lamplighter_ball",
    "lamplighter_position_map",
    "comb",
    "is_balanced_separator",
    "min_balanced_separator",
    "refine_to_c",
    "treewidth_exact",
    "product_bound_report",
    "vertex_connectivity",
    "ttree_median_separator",
    "hyperplane_separator",
    "bag_separator",
    "hyperbolicity_delta",
    "sigma_geodesics",
    "sphere_classes",
    "quotient_tree",
    "map_distortion",
    "verify_regular",
    "verify_semi_regular",
    "pullback_separator",
    "strong_td_to_tree_map",
    "quasi_level_components",
    "verify_asdim_coloring",
    "run_profile",
    "fit_growth",
]
