"""Exact computations in group partition categories Par(G, d)."""

from .diagrams import GPartition, compose, dual, parse_diagram, tensor
from .groups import FiniteGroup, group_from_spec, load_cayley, make_cyclic, make_product, make_symmetric
from .morphisms import Morphism
from .polys import D, PolyRat

__all__ = [
    "D", "FiniteGroup", "GPartition", "Morphism", "PolyRat", "compose", "dual", "group_from_spec",
    "load_cayley", "make_cyclic", "make_product", "make_symmetric", "parse_diagram", "tensor",
]
__version__ = "0.1.0"
