"""Exact tight spans of finite rational metrics and their dual hypersimplex triangulations."""

from .metrics import (
    IsolatedDistance,
    Metric,
    check_dmax_property,
    gen_dgamma,
    gen_dmax,
    gen_dmin,
    gen_random,
    load_metric,
    metric_from_json,
    metric_to_json,
    save_metric,
    shift_by_isolated,
    strict_triangle_nodes,
    submetric,
    validate_metric,
)
from .graphs import (
    EdgeGraph,
    LoopyGraph,
    cell_volume,
    components,
    has_even_tour,
    is_interior_graph,
    odd_path_sum,
)
from .subdivision import (
    Cell,
    DegeneracyReport,
    FaceSet,
    NotACell,
    Subdivision,
    all_faces,
    compute_subdivision,
    enumerate_cells,
    is_generic,
    lambda_certificate,
    restrict_to_facet,
    seed_cell,
    traverse_cells,
)
from .matching import FractionalMatching, b11_classify, is_cell_lp, is_cell_oddpath, solve_w_matching
from .facevectors import (
    FVector,
    TightSpanVectors,
    check_asff,
    check_ball_relations,
    check_dehn_sommerville,
    check_inductive_step,
    g_from_h,
    h_from_f,
    split_interior_boundary,
    tightspan_vectors,
)
from .primal import bounded_faces, crosscheck, enumerate_vertices, h_by_outdegree
from .bounds import F_bound, H_bound, identity_checks, lower_bound_top, verify_metric_against_bounds

__all__ = [name for name in dir() if not name.startswith("_")]
