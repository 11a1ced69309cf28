"""Desk-scale toolkit around the counting of maximal triangle-free graphs:
constructions, exact enumeration with brute-force oracles, maximal
independent set bounds, and the reduced/auxiliary graph proof pipeline."""

from .graph import (
    EdgeSet,
    Graph,
    GuardError,
    count_triangles,
    edge_id,
    find_triangle,
    graph_edge_set,
    graph_from_edge_mask,
    greedy_triangle_removal,
    has_clique,
    id_to_pair,
    is_maximal_triangle_free,
    is_triangle_free,
    lex_pairs,
    min_triangles_at_density,
)
from .graph6 import (
    Graph6Error,
    decode_graph6,
    encode_graph6,
    iter_graph6_file,
    read_graph6_file,
    write_graph6_file,
)
from .mis import (
    MisFamily,
    enumerate_mis,
    mis_count,
    verify_hujter_tuza,
    verify_matching_equality,
)
from .constructions import (
    FolkloreChoice,
    KrChoice,
    check_matching_partition,
    folklore_family_stats,
    folklore_graph,
    kr_entropy_check,
    kr_free_graph,
)
from .enumeration import (
    CountRow,
    CountTable,
    brute_force_maximal_tf,
    enumerate_maximal_tf,
    growth_table,
    maximal_tf_family,
    remark3_census,
    remark3_fraction,
)
from .reduction import (
    AuxiliaryGraph,
    InstanceError,
    ReductionInstance,
    bound_chain,
    build_auxiliary,
    enumerate_h_star,
    random_instance,
    reduced_graph,
    verify_claim1,
    verify_claim2,
    worked_k4_instance,
)
from .report import RunConfig, VerificationReport
from .suites import run_suite

__version__ = "0.1.0"
