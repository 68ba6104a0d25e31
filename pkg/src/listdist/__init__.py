"""List-distinguishing edge colourings of small graphs."""

from .automorphism import AutomorphismGroup, automorphisms, is_distinguishing
from .errors import ListDistError
from .graph import Graph, read_graph
from .lists import EdgeColouring, ListAssignment, generate_lists
from .recognizer import classify, required_list_size

__all__ = [
    "AutomorphismGroup", "EdgeColouring", "Graph", "ListAssignment", "ListDistError",
    "automorphisms", "classify", "generate_lists", "is_distinguishing", "read_graph",
    "required_list_size",
]
