"""Block-parallel update modes: counting, enumeration and network dynamics."""

from ._backend import BACKEND, available_backends
from .counting import (
    count_bp,
    count_bp0,
    count_bpstar,
    count_bs,
    count_bs_inter_bp,
    egf_bp0_check,
)
from .dynamics import (
    AutomataNetwork,
    DynamicsGraph,
    LimitStructure,
    apply_mode,
    limit_dynamics_isomorphic,
    limit_isomorphism,
    limit_structure,
    random_network,
    step_block,
    transition_graph,
    witness_network_eq0,
    witness_network_star,
)
from .enumeration import (
    ModeStream,
    enum_bp,
    enum_bp0,
    enum_bpstar,
    oracle_enum_bp,
    oracle_quotient,
)
from .errors import *  # noqa: F401,F403
from .modes import (
    BlockSequence,
    MatrixRepresentation,
    PartitionedOrder,
    canonical_bp,
    canonical_bp0,
    canonical_bpstar,
    equiv0,
    equiv_star,
    in_intersection,
    is_ordered_partition,
    matrix_repr,
    parse_block_sequence,
    parse_mode,
    parse_partitioned_order,
    phi,
    phi_section,
)
from .partitions import IntegerPartition, PartitionStats, enum_partitions, part_stats

__version__ = "0.1.0"
