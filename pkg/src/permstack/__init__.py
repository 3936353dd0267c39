"""Pattern-avoiding stack sorting: the machine, its recursion, preimages,
fertility bounds, and periodic-orbit analysis, all verifiable by exhaustive
sweeps at desk scale."""

from .words import (
    MAX_ENUM_N,
    PatternSet,
    Word,
    avoids,
    avoids_all,
    catalan,
    complement,
    contains,
    enumerate_avoiders,
    enumerate_permutations,
    identity,
    is_permutation,
    is_word,
    literally_contains,
    occurrences,
    order_isomorphic,
    pattern_of,
    pattern_set,
    reduce_patterns,
    reverse,
    reverse_identity,
    swap_first_two,
)
from .machine import (
    Clumping,
    TraceEvent,
    clumping,
    is_legal_movement_sequence,
    is_movement_sequence,
    legal_movement_sequences,
    movement_sequence,
    movement_sequences,
    reconstruct_input,
    sort,
    sort_recursive,
    sort_with_trace,
)
from .dynamics import (
    CLASSICAL_STACK,
    FertilityReport,
    OrbitReport,
    SortTable,
    SortTableRow,
    bijectivity_criterion,
    build_sort_table,
    complement_conjugation_check,
    extremal_family,
    extremal_literal,
    extremal_target,
    fertility_max,
    half_decreasing_step,
    image_size,
    inverse_sort,
    is_half_decreasing,
    is_half_increasing,
    machine_sort,
    orbit,
    orbit_partition,
    periodic_points,
    preimage_map,
    preimages,
    sort_count,
    sort_images,
    sort_map,
    sort_set,
    trivial_periodic_points_only,
    verify_bijective,
)

__version__ = "0.1.0"
