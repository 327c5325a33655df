"""Exact clique-minor structure on small graphs: integral, bounded-breadth,
r-integral and fractional values, width parameters, and an explicit blow-up
construction, every result shipped with a machine-checkable certificate.
"""

from .errors import CapacityError, CertificateError, Graph6Error
from .graphs import (
    DEFAULT_VERTEX_CAP,
    BlowupVertex,
    Graph,
    VertexSet,
    as_probability,
    blowup_adjacency,
    blowup_complete,
    blowup_empty,
    blowup_index_vertex,
    blowup_vertex_index,
    build_graph,
    complement,
    complete_bipartite_graph,
    complete_graph,
    cycle_graph,
    empty_graph,
    format_edge_list,
    graph6_decode,
    graph6_encode,
    grid_graph,
    is_connected,
    lexicographic_product,
    parse_edge_list,
    path_graph,
    random_gnp,
)
from .minors import (
    CliqueOrder,
    MinorModel,
    PatternGraph,
    find_clique_minor,
    find_minor,
    hadwiger_number,
    has_clique_minor,
    has_minor,
    is_valid_minor_model,
    max_clique_minor_bounded,
    verify_minor_model,
)
from .brambles import (
    BrambleFamily,
    bramble_number,
    enumerate_connected_sets,
    hitting_number,
    is_valid_bramble,
    maximal_brambles,
    min_hitting_set,
    touches,
    validate_bramble,
)
from .fractional import (
    HadwigerValue,
    WeightedBramble,
    evaluate_certificate,
    fractional_hadwiger,
    grid_cross_certificate,
    lp_max_weight,
    project_blowup_model,
    r_integral_hadwiger_via_blowup,
    r_integral_hadwiger_via_ilp,
    validate_weighted_bramble,
)
from .width import (
    ParamReport,
    Separation,
    TreeDecomposition,
    comparability_report,
    max_grid_minor,
    separation_number,
    treewidth,
    verify_separation,
    verify_tree_decomposition,
)
from .bounds import (
    BoundEntry,
    BoundReport,
    bound_report,
    check_edge_bound,
    check_sqrt_bound,
    epsilon_hadwiger_check,
    greedy_disjoint_extract,
)
from .construct import (
    ConstructionHandle,
    Witness,
    WitnessSpec,
    canonical_code,
    canonical_graph,
    emit_construction,
    enumerate_nonisomorphic_graphs,
    hf_upper_from_bounded,
    search_witness,
)
from .serialize import (
    format_certificate,
    parse_certificate,
)

__version__ = "0.1.0"
