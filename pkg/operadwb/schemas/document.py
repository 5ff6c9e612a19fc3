from fractions import Fraction
from typing import Any, Literal

from pydantic import BaseModel, Field, field_validator, model_validator

from operadwb.models.colours import TermKind, TreeKind


def format_rational(value: Fraction | None) -> str | None:
    if value is None:
        return None
    return f"{value.numerator}/{value.denominator}"


def parse_rational(text: str | None) -> Fraction | None:
    if text is None:
        return None
    return Fraction(text)


class NodeDocument(BaseModel):
    kind: Literal["leaf", "vertex"]
    colour: str
    index: int | None = None
    pearl: bool = False
    label: Any = None
    level: str | None = None
    edge: str | None = None
    children: list["NodeDocument"] = Field(default_factory=list)

    @field_validator("level", "edge")
    @classmethod
    def validate_rational(cls, v: str | None) -> str | None:
        if v is None:
            return v
        try:
            value = Fraction(v)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"{v!r} is not a rational literal") from exc
        if not 0 <= value <= 1:
            raise ValueError(f"parameter {v} lies outside [0,1]")
        return v

    @model_validator(mode="after")
    def validate_node(self) -> "NodeDocument":
        if self.kind == "leaf":
            if self.index is None:
                raise ValueError("A leaf needs an index")
            if self.children or self.pearl:
                raise ValueError("A leaf has no children and is never a pearl")
        return self


NodeDocument.model_rebuild()


class TermDocument(BaseModel):
    instance: str = Field(min_length=1)
    kind: TermKind
    element: Any


class TreeListDocument(BaseModel):
    kind: TreeKind
    colours: list[str]
    count: int
    trees: list[NodeDocument]
