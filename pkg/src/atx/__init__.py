"""Alon-Tarsi extendability toolkit for small graphs.

Decides f-AT and f-choosability at desk scale, recognizes the structural
predicates of K4-minor-free and bounded-density graphs (diamond chains,
feasible and blocked triples, genuine 2-vertices, Gallai trees), and
constructs certified AT-orientations witnessing pair and triple
extendability.
"""

from .coloring import (
    corollary_witness_assignments,
    enumerate_proper_colorings,
    extendability_capacity,
    find_L_coloring,
    has_unique_3_coloring,
    is_f_choosable,
)
from .construct import (
    ConstructionTrace,
    ExtendOutcome,
    construct_21_orientation,
    construct_221_trianglefree,
    construct_222_orientation,
    construct_22_orientation,
    construct_mad_222,
    recover_orientation,
    verify_trace,
)
from .graphs import (
    Graph,
    MultiGraph,
    chain_of_diamonds,
    contract_two_chains,
    degeneracy,
    delete_vertices,
    emit_graph,
    emit_graph6,
    make_graph,
    max_average_degree,
    parse_graph,
)
from .orientations import (
    ATCertificate,
    DiffResult,
    Orientation,
    PartialOrientation,
    alon_tarsi_number,
    coefficient_oracle,
    compute_diff,
    degree_AT_orientation,
    glue_at_cutvertex,
    is_f_AT,
    orient,
    triangle_reduce_check,
)
from .structure import (
    diamond_link_graph,
    edge_feasibility_dichotomy,
    feasible_from_coloring,
    genuine_2_vertices,
    is_blocked_triple,
    is_chain_connected,
    is_feasible_triple,
    is_gallai_tree,
    is_k4_minor_free,
    is_triangle_free,
    two_nonadjacent_2vertices,
)

__version__ = "0.1.0"
