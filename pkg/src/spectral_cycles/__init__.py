"""Desk-scale verification of spectral conditions for odd cycles.

Library layout: `graphs` (representation, formats, connectivity surgery),
`families` (named constructions and recognizers), `spectral` (power
iteration and bound checks), `cycles` (cycle search, bipartite paths,
pentagon extension), `verify` (enumeration, sampling, campaigns), and `cli`.
"""

from .cycles import (
    Claim1Report,
    CycleSearch,
    CycleWitness,
    ExtensionResult,
    PathAbsent,
    PathWitness,
    bipartite_path_between,
    claim1_bound_check,
    common_neighbors,
    extend_c5_to_c2k1,
    has_cycle_of_length,
    naive_cycle_oracle,
    odd_cycle_profile,
)
from .families import (
    FamilySpec,
    clique_with_tail,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    extremal_graph,
    extremal_split,
    kab_dot_k3,
    path_graph,
    recognize_kab_dot_k3,
    snk,
    snk_plus,
    star,
    star_with_tail,
)
from .graphs import (
    Bipartition,
    Graph,
    GraphFormatError,
    OddCycle,
    StripTrace,
    bipartition,
    components,
    cut_vertices,
    decode_graph6,
    delete_vertices,
    dense_core,
    dense_core_vertices,
    encode_graph6,
    format_edge_list,
    induced_subgraph,
    is_bipartite,
    is_connected,
    parse_graphs,
    parse_stream,
    parse_stream_tolerant,
    strip_to_2connected,
)
from .spectral import (
    ConvergenceError,
    DeletionBound,
    HongVerdict,
    SpectralResult,
    deletion_bounds_all,
    hong_bound_check,
    rayleigh_quotient,
    spectral_radius,
    threshold_rho,
    vertex_deletion_bound,
)
from .verify import (
    CampaignConfig,
    VerificationReport,
    canonical_form,
    canonical_form_scan,
    enumerate_connected,
    enumerate_connected_nonbipartite,
    enumerate_graphs,
    random_graph_stream,
    sample_near_extremal,
    verify_campaign,
    verify_consecutive_cycles,
    verify_deletion_bound,
    verify_hong_bound,
    verify_main_theorem,
    verify_min_degree_cycles,
    verify_pentagon,
)

__version__ = "0.1.0"
