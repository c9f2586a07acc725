"""Circular drawings, crossing graphs and exact structural solvers."""

from .decompositions import (
    check_section3_bounds,
    td_lift_to_crossing,
    td_lift_to_graph,
    triangulate_via_map,
)
from .dominance import (
    AngularInterval,
    CycleLayers,
    edge_interval,
    extract_cycle_layers,
    is_dominant,
    min_ray_coverage,
    peel_layer,
    reference_point,
    validate_cycle_layers,
)
from .drawing import (
    CircularDrawing,
    StraightLineDrawing,
    crossing_graph,
    enumerate_circular_orders,
    export_json,
    export_svg,
    load_json,
    make_circular,
    map_graph,
    planarise,
    wrap_linear,
)
from .errors import (
    CircdrawError,
    DecompositionError,
    DegenerateGeometry,
    InvalidParameter,
    NoInteriorFace,
    NotDominant,
    PointOnChord,
    RadiusTooSmall,
    TooLargeInstance,
)
from .extremal import (
    LabeledConstruction,
    grid_row_drawing,
    k2n_subdivision_suite,
    ktt_chord_diagram,
    nested_polygon_drawing,
    product_drawing,
    star_forest_construction,
    tree_plus_dominant,
    two_degenerate_expander,
)
from .graph import (
    Graph,
    MinorCertificate,
    TopologicalMinorCertificate,
    TreeDecomposition,
    degeneracy,
    generate,
    graph_radius,
    has_kst_subgraph,
    strong_product,
    subdivide,
    validate_decomposition,
    validate_minor_certificate,
)
from .solvers import (
    InvariantReport,
    hadwiger_exact,
    hajos_exact,
    invariant_report,
    treewidth_exact,
)
from .verify import VerificationReport, run_suite

__version__ = "0.1.0"
