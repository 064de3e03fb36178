"""Facial-cycle decompositions of polytope graphs, in exact arithmetic."""

__version__ = "0.1.0"

from .complex import (  # noqa: E402
    Cycle,
    EdgeSet,
    Graph,
    PolytopalComplex,
    boundary_complex,
    face_complex,
    facial_cycle,
    graph_connectivity_check,
    graph_of,
    intersect_graphs,
    is_strongly_connected,
    prefix_complex,
    ridge_adjacency_graph,
)
from .cyclespace import (  # noqa: E402
    Decomposition,
    EvenSubgraph,
    FacialBasis,
    bipartite_via_2faces,
    cycle_space_dimension,
    facial_basis,
    is_bipartite,
    is_even,
    oracle_decompose,
    random_even_subgraph,
    reconstruct,
    split_into_cycles,
    xor,
)
from .decompose import (  # noqa: E402
    CrossingSurgery,
    PrefixContext,
    decompose,
    decompose_with_trace,
    odd_facial_witness,
)
from .estimators import FacialCycleDecomposer  # noqa: E402
from .geometry import (  # noqa: E402
    FaceLattice,
    Hyperplane,
    Polytope,
    affine_dimension,
    build_face_lattice,
    facet_as_polytope,
    facet_enumeration,
)
from .shelling import (  # noqa: E402
    LineCertificate,
    Shelling,
    StepReport,
    line_shelling,
    shelling_for_facet,
    verify_shelling_necessary,
)
