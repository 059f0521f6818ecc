"""matroidlab: finite independence systems and periodic infinite-graph cycle systems."""

__version__ = "0.1.0"

from .errors import InputError, ResourceLimitError, StructuralMismatchError
from .core import (
    ENUM_CAP,
    SWEEP_CAP,
    AxiomReport,
    ExplicitSystem,
    GroundSet,
    OracleMatroid,
    as_mask,
    check_axioms,
    contract,
    delete,
    dual,
    enumerate_bases,
    enumerate_circuits,
    explicit_system,
    family_masks,
    free_matroid,
    from_explicit,
    graphic_matroid,
    is_independent,
    maximal_masks,
    rank_of,
    replay_witness,
    uniform_matroid,
)
from .ops import (
    NestedPair,
    SpectrumReport,
    ch4_blocks,
    ch4_i3_witness,
    ch4_system,
    check_unionable,
    difference,
    smin_enumerate,
    spectrum,
    truncate_top,
    union,
    verify_difference_duality,
)
from .linear import (
    GF2,
    Q,
    MatrixRep,
    PeriodicMatrixSpec,
    gf2_rank,
    incidence_matrix,
    linear_matroid,
    materialize,
    matrix_rank,
    nearly_thin_count,
    q_rank,
    span_maximality_check,
    verify_thinAC_equiv,
)
from .periodic import (
    ComponentSummary,
    PeriodicGraphSpec,
    UPEdgeSet,
    bean_family,
    component_summary,
    contains_double_ray,
    contains_finite_cycle,
    corridor_width,
    corridors,
    domination_witness,
    edges_by_role,
    ends_of,
    full_edge_set,
    ladder_family,
    ray_count,
    reblock,
    shift_edge_set,
    split_components,
    truncate_graph,
    unroll,
)
from .cycles import (
    GluingSpec,
    VerdictReport,
    absent_representatives,
    cycle_independent,
    cycle_is_base,
    defect,
    edge_set_is_empty,
    edge_sets_difference,
    edge_sets_intersect,
    edge_sets_union,
    extend_to_fin_base,
    fin_is_base,
    glue_all,
    hat_check,
    mk_spectrum,
    nearly_finitary_verdict,
    no_glue,
    present_representatives,
    spectrum_search,
    verify_i3_violation,
)
from .families import (
    ContractedSystem,
    contract_coloops,
    delete_edges,
    spectrum_scan,
)
from .io import (
    dump_family,
    dump_gluing,
    dump_matrix,
    dump_system,
    load_edge_set,
    load_edit,
    load_family,
    load_gluing,
    load_matrix,
    load_matrix_family,
    load_nested_pair,
    load_system,
    read_json,
    spectrum_csv,
)
