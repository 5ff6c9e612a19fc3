import itertools
import random
from collections.abc import Iterator, Sequence
from dataclasses import dataclass

from operadwb.exceptions import InvalidPermutation, ProfileArityMismatch


@dataclass(frozen=True, order=True)
class Permutation:
    """A bijection of {1,...,n} stored by its images.

    Products read right to left: (s * t)(i) = s(t(i)). The right action on
    operations puts slot s(i) of x into slot i of x.s, so acting by s and
    then by t is acting by s * t.
    """

    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise InvalidPermutation(self.images)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def of(cls, *images: int) -> "Permutation":
        return cls(tuple(images))

    @classmethod
    def transposition(cls, n: int, i: int, j: int) -> "Permutation":
        images = list(range(1, n + 1))
        images[i - 1], images[j - 1] = j, i
        return cls(tuple(images))

    @classmethod
    def all(cls, n: int) -> Iterator["Permutation"]:
        for images in itertools.permutations(range(1, n + 1)):
            yield cls(images)

    @classmethod
    def random(cls, n: int, rng: random.Random) -> "Permutation":
        images = list(range(1, n + 1))
        rng.shuffle(images)
        return cls(tuple(images))

    @classmethod
    def sorting(cls, keys: Sequence) -> "Permutation":
        """The permutation s with keys[s(1)-1] <= keys[s(2)-1] <= ..."""
        order = sorted(range(len(keys)), key=lambda j: keys[j])
        return cls(tuple(j + 1 for j in order))

    def __len__(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if len(self) != len(other):
            raise ProfileArityMismatch(len(self), len(other))
        return Permutation(tuple(self.images[j - 1] for j in other.images))

    def inverse(self) -> "Permutation":
        images = [0] * len(self)
        for i, j in enumerate(self.images, start=1):
            images[j - 1] = i
        return Permutation(tuple(images))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images, start=1))

    def block(self, sizes: Sequence[int]) -> "Permutation":
        """Block permutation s<k_1,...,k_n>.

        sizes[q-1] is the size of the block plugged into slot q of x.s; the
        result moves whole blocks the way s moves slots.
        """
        if len(sizes) != len(self):
            raise ProfileArityMismatch(len(self), len(sizes))
        inverse = self.inverse()
        starts = [0] * (len(self) + 1)
        position = 1
        for j in range(1, len(self) + 1):
            starts[j] = position
            position += sizes[inverse(j) - 1]
        images: list[int] = []
        for q, size in enumerate(sizes, start=1):
            start = starts[self(q)]
            images.extend(range(start, start + size))
        return Permutation(tuple(images))

    def direct_sum(self, *others: "Permutation") -> "Permutation":
        images = list(self.images)
        for other in others:
            offset = len(images)
            images.extend(offset + j for j in other.images)
        return Permutation(tuple(images))

    def partial_compose(self, slot: int, other: "Permutation") -> "Permutation":
        """s o_slot t, the composition of the associative operad."""
        sizes = [1] * len(self)
        sizes[slot - 1] = len(other)
        middle = Permutation.identity(slot - 1).direct_sum(other, Permutation.identity(len(self) - slot))
        return self.block(sizes) * middle

    def __str__(self) -> str:
        return "[" + ",".join(str(i) for i in self.images) + "]"
