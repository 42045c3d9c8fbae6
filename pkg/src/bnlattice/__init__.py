"""Exact divisor theory, Laplacian-lattice geometry and Brill-Noether scans on multigraphs."""
from .brill_noether import BNReport, bn_scan, rho, rho_tilde, verify_existence
from .divisors import (
    DivisorClass,
    deg_plus,
    dhar_reduce,
    enumerate_classes,
    gonality,
    is_equivalent,
    modified_rank,
    rank_bn,
    rank_definitional,
    rank_r,
    round_divisor,
    rr_defect,
    rr_defect_v1,
    sigma_contains,
)
from .errors import *  # noqa: F401,F403
from .geometry import (
    Gauge,
    covering_lower_certificate,
    covering_radius_sampled,
    gauge_distance,
    h_value,
    integral_covering_radius,
    rank_geometric,
    simplicial_distance,
    vertices_P,
)
from .graph import (
    Multigraph,
    banana,
    canonical_divisor,
    complete_graph,
    genus,
    is_dense,
    laplacian,
    laplacian_lattice_basis,
    modified_canonical,
    new_multigraph,
    parse_graph,
    project,
    scale_graph,
    stretch_factor,
)
from .orientations import NonSpecialSet, acyclic_orientations_with_sink, crit_points, nonspecial_set, orientation_divisor

__version__ = "0.1.0"
