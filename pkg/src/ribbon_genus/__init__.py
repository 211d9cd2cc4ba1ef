"""Genus of finite group presentations via ribbon surfaces, and face-pairing quotients of 3-balls."""
__version__ = "0.1.0"

from .presentation import (
    Presentation,
    PresentationError,
    PresentationSyntaxError,
    apply_tietze,
    connectify,
    degree3_normalize,
    parse_presentation,
    reduce_exponents,
    render_presentation,
)
from .ribbon import (
    DEFAULT_CONVENTION,
    RibbonGraph,
    Shuffle,
    apply_shuffle,
    build_canonical_surface,
    degree3_shuffle,
    link_graph,
    plumb,
    surface_summary,
    trace_faces,
)
from .genus_search import (
    SearchBudget,
    genus_upper_bound,
    group_genus_upper,
    hierarchy_check,
    link_genus,
    min_genus_over_shuffles,
    presentation_genus,
)
from .facepairing import (
    FacePairing,
    TriangulatedSphere,
    build_quotient,
    enumerate_pairings,
    is_manifold,
    pairing_count,
    vertex_links,
)
