from operadwb.models.colours import CLOSED, OPEN, Colour, ColourProfile, TermKind, TreeKind
from operadwb.models.cube import CubeConfig, LittleCube
from operadwb.models.elements import Coloured, Flag, Generator, Point, Summand, Tagged
from operadwb.models.permutation import Permutation
from operadwb.models.tree import AutGroup, Leaf, Node, Term, Vertex

__all__ = [
    "CLOSED",
    "OPEN",
    "Colour",
    "ColourProfile",
    "TermKind",
    "TreeKind",
    "Permutation",
    "Leaf",
    "Vertex",
    "Node",
    "Term",
    "AutGroup",
    "LittleCube",
    "CubeConfig",
    "Point",
    "Flag",
    "Coloured",
    "Generator",
    "Summand",
    "Tagged",
]
