"""covertlat: isoperimetric placement planning and spectator-detection
simulation for lattice-structured quantum processors."""

from .budget import (
    CovertBudget,
    DensityMatrix,
    k_shot_budget,
    max_shots,
    pinsker_check,
    product_pinsker_demo,
    quantum_relative_entropy,
    trace_distance,
)
from .errors import (
    BoundViolationError,
    CovertLatticeError,
    DeviceFormatError,
    InfeasiblePlacementError,
    InvalidVertexError,
    KindMismatchError,
    PreconditionError,
    UnsupportedKindError,
)
from .isoperimetry import (
    BoundReport,
    bound_heavyhex_vertex,
    bound_hex_edge,
    bound_hex_vertex,
    bound_square_edge,
    bound_square_vertex,
    check_bound,
)
from .lattice import (
    LatticeKind,
    VertexSet,
    diamond,
    edge_boundary,
    hex_disk,
    neighbors,
    vertex_boundary,
)
from .placement import (
    DeviceTopology,
    EdgeSchedule,
    Placement,
    classify_spectators,
    load_device,
    plan,
    schedule_edges,
)
from .ramsey import (
    FitResult,
    HopDecayCrosstalk,
    RamseyConfig,
    RamseyRecord,
    SignalParams,
    calibrate_threshold,
    detect,
    fit,
    model_probability,
    run_experiment,
    simulate,
)
from .subdivision import (
    FiniteGraph,
    SubdividedGraph,
    boundary_injection,
    optimal_edge_superset,
    optimal_vertex_superset,
    subdivide,
)

__version__ = "0.1.0"
