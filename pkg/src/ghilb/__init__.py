"""Exact toric resolutions of abelian quotient singularities C^n/G (n = 2, 3)
with the full character labelling of the exceptional locus."""

from .groups import (
    Character,
    GroupElement,
    GroupSpec,
    LatticePoint,
    age,
    discrepancy,
    heuristic_4d,
    is_basic_simplex,
    junior_elements,
    parse_group,
    stringy_euler,
)
from .hilb import (
    Chart,
    Cone3,
    Fan3,
    Tripod,
    build_fan,
    chart_of_tripod,
    cone_of_tripod,
    enumerate_tripods,
    hexagon_census,
    vertices_from_chart,
    wall_cross,
)
from .mckay import (
    BundleClass,
    EdgeLabel,
    SurfaceRecord,
    bundle_class,
    c2_evaluate,
    curve_degree,
    dual_basis_check,
    edge_label,
    hexagon_relation,
    mckay_table,
    pair_relations,
    surface_at_vertex,
)
from .monomials import (
    CharacterModule,
    character_of_monomial,
    hull_generators,
    marked_minima,
    marked_minimum,
    minimal_generators,
    module_equal,
    module_product,
)
from .report import verify_all
from .surface import (
    ContinuedFraction,
    SurfaceResolution,
    cluster_basis_check,
    dual_degrees_2d,
    hj_expand,
    newton_boundary,
    resolve_surface,
    tripods_2d,
)

__version__ = "0.1.0"
