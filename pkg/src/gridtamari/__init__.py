"""Non-kissing complexes of grid shapes and the lattices built from them."""
from .grid import Path, Segment, Shape, compose, is_kissing, lazy
from .nkcomplex import Facet, enumerate_facets, flip, grid_tamari, initial_facet

__version__ = "0.1.0"
