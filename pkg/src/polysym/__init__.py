"""Exact symmetry groups of polyhedral cones, polytopes and integer programs."""

from .errors import (
    Decomposable, DegreeMismatch, NotExtreme, NotFullDim, NotPointed, OracleInconsistent,
    ParseError, PolysymError, RankDeficient, RealizationFailure, Singular, TheoremViolation,
    TooLarge, UnsupportedFeature,
)
from .exactlin import RatMatrix, hermite_normal_form, rank, rref, solve, solve_homogeneous
from .permgrp import Perm, PermGroup, intermediate_subgroup, is_in_orbit
from .cone import (
    Cone, cone_hull, decompose, direct_sum, enumerate_faces, face_lattice, homogenize,
    is_decomposable, parse_cone, parse_facets, rays_from_facets, validate_facets,
)
from .cgraph import ColoredGraph, automorphisms, choose_reduction, find_isomorphism, to_vertex_colored
from .report import SymmetryReport
from .linsym import (
    EdgeColorTable, centralizer_group, integral_subgroup_filter, integral_subgroup_intermediate,
    integral_subgroup_lattice_quotient, lin_equivalent, lin_group, realize_permutation,
)
from .combsym import comb_equivalent, comb_group, comb_via_intermediate, lucky_sandwich, skel_group
from .projsym import classify_n_plus_1, proj_equivalent, proj_group, proj_membership
from .ilpsym import IlpInstance, coordinate_symmetries, parse_ilp, parse_mps_lite

__version__ = "0.1.0"
