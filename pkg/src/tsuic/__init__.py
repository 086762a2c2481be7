"""Bounds and explicit codes for two-sender unicast index coding."""

from .errors import CapExceeded, FieldError, InstanceError
from .gf import Field, in_span, make_field, rank, systematic_mds_generator
from .graphs import (
    Coloring,
    Cycle,
    chromatic_number,
    complement_digraph,
    enumerate_colorings,
    enumerate_simple_cycles,
    is_message_connected,
    mais,
    spanning_tree,
)
from .model import (
    Instance,
    SideInfoDigraph,
    UGraph,
    build_union_graph,
    derive_sender_constraint_graph,
    dump_instance,
    generate_random_instance,
    load_example,
    load_instance,
)
from .schemes import (
    IndexCode,
    SchemeResult,
    clique_cover,
    cycle_cover,
    dump_code,
    load_code,
    local_chromatic_code,
    partitioned_local_chromatic,
    run_scheme,
    trivial_partition_scheme,
    two_sender_local_chromatic_number,
)
from .verify import (
    BoundsReport,
    ReductionReport,
    VerifyReport,
    bounds_report,
    check_decodability,
    check_sender_constraint,
    oracle_beta1_linear,
    reduce_instance,
    verify_code,
)

__version__ = "0.1.0"
