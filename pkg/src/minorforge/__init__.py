"""minorforge: executable hardness reductions for graph deletion problems.

Compiles k x k Permutation Independent Set instances into the gadget
frameworks behind the superexponential lower bounds for F-M-Deletion and
F-TM-Deletion, with the minor-containment, block-cut-tree, and
decomposition machinery needed to verify the constructions at desk scale.
"""

from .errors import InputError, LimitError, NotInScopeError
from .graph import (
    Graph,
    VertexSet,
    complete_join,
    connected_components,
    contract_edge,
    degree_one_vertices,
    induced_subgraph,
    is_i_connected,
    is_isomorphic,
    named_graph,
    read_edgelist,
    write_edgelist,
)
from .decompose import (
    BlockCutTree,
    PathDecomposition,
    block_cut_tree,
    framework_path_decomposition,
    validate_decomposition,
)
from .minors import (
    Limits,
    MinorModel,
    Relation,
    TopoMinorModel,
    default_limits,
    deletion_number,
    family_contains,
    find_minor_model,
    find_topo_model,
    leaf_block_prune,
    separator_reduce,
    validate_model,
)
from .family import (
    BesfFunction,
    CaseLabel,
    EssentialPair,
    LeafBlockCut,
    besf,
    besf_compare,
    class_membership,
    classify_case,
    essential_pair,
    k_edges_leaf_block_cut,
)
from .reductions import (
    Framework,
    FrameworkParams,
    PISInstance,
    base_framework,
    build_enhanced_framework,
    embed_solution,
    lift_solution,
    normalize_pis,
    vc_reduction,
    witness_subgraph,
)
from .harness import (
    EquivalenceReport,
    check_reimitation,
    solve_pis,
    structured_deletion_search,
    verify_equivalence,
)

__version__ = "0.1.0"
