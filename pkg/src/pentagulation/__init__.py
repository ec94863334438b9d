"""Minimal 3-connected pentagulations of polygons.

A pentagulation of an n-gon is dual to a plane triangulation in which one
vertex has degree n and all others degree 5, after deleting a few edges.
The package enumerates such triangulations, derives the pentagulations,
checks the supporting lemmas and builds an explicit upper-bound family.
"""

from .generator import DegreeSpec, enumerate_triangulations, parse_spec
from .pg_search import PgResult, compute_pg, construct_gn, pg_upper_bound
from .plane_graph import PlaneGraph, canonical_code, dual, is_three_connected

__version__ = "0.1.0"

__all__ = [
    "DegreeSpec",
    "PgResult",
    "PlaneGraph",
    "canonical_code",
    "compute_pg",
    "construct_gn",
    "dual",
    "enumerate_triangulations",
    "is_three_connected",
    "parse_spec",
    "pg_upper_bound",
]
