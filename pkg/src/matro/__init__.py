"""Matroids, Bergman complexes and their nested set triangulations."""

from .bergman import (
    bergman_f_vector,
    bergman_faces,
    bergman_facets,
    bergman_membership,
    equality_criterion,
    euler_characteristic,
    facet_triangulation,
    nested_f_vector,
    nested_face_matroid,
    nested_facets,
)
from .errors import MatroError, ParseError, PreconditionError, ValidationError
from .io import load
from .lattice import connected_flats, flacets, flats, is_building_set, mobius, polytope_facets
from .matroid import (
    Matroid,
    direct_sum,
    from_bases,
    from_circuits,
    from_graph,
    from_nonbases,
    from_vectors,
    uniform,
)

__all__ = [
    "Matroid",
    "MatroError",
    "ParseError",
    "PreconditionError",
    "ValidationError",
    "bergman_f_vector",
    "bergman_faces",
    "bergman_facets",
    "bergman_membership",
    "connected_flats",
    "direct_sum",
    "equality_criterion",
    "euler_characteristic",
    "facet_triangulation",
    "flacets",
    "flats",
    "from_bases",
    "from_circuits",
    "from_graph",
    "from_nonbases",
    "from_vectors",
    "is_building_set",
    "load",
    "mobius",
    "nested_f_vector",
    "nested_face_matroid",
    "nested_facets",
    "polytope_facets",
    "uniform",
]
