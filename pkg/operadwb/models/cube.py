from dataclasses import dataclass
from fractions import Fraction

from operadwb.exceptions import InvalidCube
from operadwb.models.colours import Colour


@dataclass(frozen=True, order=True)
class LittleCube:
    """t -> scale * t + offset on every axis of [0,1]^d."""

    axes: tuple[tuple[Fraction, Fraction], ...]

    def __post_init__(self):
        for axis, (scale, offset) in enumerate(self.axes, start=1):
            if scale <= 0:
                raise InvalidCube(f"axis {axis} has non-positive scale {scale}")
            if offset < 0 or scale + offset > 1:
                raise InvalidCube(f"axis {axis} leaves the unit interval")

    @classmethod
    def identity(cls, d: int) -> "LittleCube":
        return cls(((Fraction(1), Fraction(0)),) * d)

    @classmethod
    def from_intervals(cls, *intervals: tuple) -> "LittleCube":
        axes = []
        for lo, hi in intervals:
            lo, hi = Fraction(lo), Fraction(hi)
            axes.append((hi - lo, lo))
        return cls(tuple(axes))

    @property
    def d(self) -> int:
        return len(self.axes)

    def interval(self, axis: int) -> tuple[Fraction, Fraction]:
        scale, offset = self.axes[axis - 1]
        return offset, offset + scale

    def after(self, inner: "LittleCube") -> "LittleCube":
        """The composite self o inner."""
        return LittleCube(
            tuple((s * si, s * oi + o) for (s, o), (si, oi) in zip(self.axes, inner.axes))
        )

    def touches_face(self) -> bool:
        scale, offset = self.axes[0]
        return scale + offset == 1

    def __str__(self) -> str:
        return "x".join(f"[{lo},{hi}]" for lo, hi in (self.interval(a) for a in range(1, self.d + 1)))


@dataclass(frozen=True)
class CubeConfig:
    d: int
    cubes: tuple[LittleCube, ...] = ()
    tags: tuple[Colour, ...] | None = None
    output: Colour | None = None

    def __post_init__(self):
        for cube in self.cubes:
            if cube.d != self.d:
                raise InvalidCube(f"cube of dimension {cube.d} in a {self.d}-dimensional configuration")
        if self.tags is not None and len(self.tags) != len(self.cubes):
            raise InvalidCube("one colour tag per cube is required")

    @property
    def arity(self) -> int:
        return len(self.cubes)
