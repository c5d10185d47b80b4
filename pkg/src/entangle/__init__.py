"""Gauss linking integral, writhe, torsion and self-linking of polygonal
chains, with Monte Carlo scaling studies of random walks and polygons."""

__version__ = "0.1.0"

from .chains import (  # noqa: E402
    Chain,
    ChainSpec,
    RngStream,
    fixed_square,
    fixed_trefoil,
    gen_equilateral_walk,
    gen_uniform_polygon,
    gen_uniform_walk,
    read_chain,
    transform,
    write_chain,
)
from .errors import (  # noqa: E402
    ConcatMismatch,
    DegeneratePair,
    DegenerateProjection,
    DegenerateTurn,
    EntangleError,
    ExcessiveDegeneracy,
    GridMismatch,
    NumericalError,
    QuadratureFailure,
    SingularDesign,
    SpecInvalid,
)
from .fitting import FitResult, ScalingLawRegressor, compare_conjecture, fit  # noqa: E402
from .geometry import binormal_angle, seg_pair_linking, signed_crossing  # noqa: E402
from .measures import EntanglementFeatures, acn, linking_number, self_linking, total_torsion, writhe  # noqa: E402
from .ensemble import (  # noqa: E402
    EdgePairMoments,
    EnsembleSpec,
    StatTable,
    estimate_edge_pair_moments,
    reproduce_all,
    run_experiment,
    torsion_angle_magnitude,
)
