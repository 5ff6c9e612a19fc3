import enum
from dataclasses import dataclass

Colour = str

CLOSED: Colour = "c"
OPEN: Colour = "o"


class TermKind(str, enum.Enum):
    OPERAD = "operad"
    BIMODULE = "bimodule"
    IBIMODULE = "ibimodule"
    BV_BIMODULE = "bv-bimodule"
    BV_OPERAD = "bv-operad"
    BV_EMPTY = "bv-empty"
    L_TERM = "l-term"
    CUBE_CONFIG = "cube-config"


class TreeKind(str, enum.Enum):
    PLAIN = "plain"
    RSTREE = "rstree"
    STREE = "stree"


@dataclass(frozen=True, order=True)
class ColourProfile:
    inputs: tuple[Colour, ...]
    output: Colour

    @classmethod
    def mono(cls, arity: int, colour: Colour = CLOSED) -> "ColourProfile":
        return cls((colour,) * arity, colour)

    @classmethod
    def parse(cls, text: str) -> "ColourProfile":
        """Read the printed form "(c,o;o)"."""
        body = text.strip().removeprefix("(").removesuffix(")")
        ins, _, out = body.rpartition(";")
        inputs = tuple(s.strip() for s in ins.split(",") if s.strip())
        return cls(inputs, out.strip())

    @property
    def arity(self) -> int:
        return len(self.inputs)

    def permuted(self, sigma) -> "ColourProfile":
        # slot i of x.sigma is slot sigma(i) of x
        return ColourProfile(tuple(self.inputs[sigma(i) - 1] for i in range(1, self.arity + 1)), self.output)

    def spliced(self, slot: int, inner: "ColourProfile") -> "ColourProfile":
        return ColourProfile(self.inputs[: slot - 1] + inner.inputs + self.inputs[slot:], self.output)

    def is_monochrome(self, colour: Colour | None = None) -> bool:
        colours = set(self.inputs) | {self.output}
        if colour is None:
            return len(colours) == 1
        return colours == {colour}

    def __str__(self) -> str:
        return f"({','.join(self.inputs)};{self.output})"
