from operadwb.schemas.document import NodeDocument, TermDocument, TreeListDocument
from operadwb.schemas.render import RenderOptions
from operadwb.schemas.report import LawReport, LawViolation

__all__ = [
    "NodeDocument",
    "TermDocument",
    "TreeListDocument",
    "RenderOptions",
    "LawReport",
    "LawViolation",
]
