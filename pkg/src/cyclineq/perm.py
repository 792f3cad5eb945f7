"""Permutations of {1, ..., n} with cycle and displacement accessors.

The public data model is 1-based throughout: a permutation is the tuple of
its images (sigma(1), ..., sigma(n)), and cyclic index arithmetic always
maps representatives into {1, ..., n}, never 0.
"""

from dataclasses import dataclass

from .errors import BadDimension, IndexOutOfRange, NotABijection


def wrap_index(n: int, i: int) -> int:
    """Cyclic representative of i in {1, ..., n}."""
    return (i - 1) % n + 1


@dataclass(frozen=True)
class Permutation:
    """A bijection of {1, ..., n}; images[i-1] = sigma(i)."""

    n: int
    images: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(self.images))
        if self.n <= 1:
            raise BadDimension(f"need n > 1, got n={self.n}")
        if len(self.images) != self.n:
            raise NotABijection(
                f"expected {self.n} images, got {len(self.images)}"
            )
        if sorted(self.images) != list(range(1, self.n + 1)):
            raise NotABijection(
                f"{list(self.images)} is not a bijection of 1..{self.n}"
            )

    def apply(self, i: int) -> int:
        if not 1 <= i <= self.n:
            raise IndexOutOfRange(f"index {i} not in 1..{self.n}")
        return self.images[i - 1]

    def __call__(self, i: int) -> int:
        return self.apply(i)

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, im in enumerate(self.images, start=1):
            inv[im - 1] = i
        return Permutation(self.n, tuple(inv))

    @property
    def is_identity(self) -> bool:
        return all(im == i for i, im in enumerate(self.images, start=1))

    def is_involution(self) -> bool:
        """True iff sigma composed with itself is the identity."""
        return all(self.images[im - 1] == i
                   for i, im in enumerate(self.images, start=1))

    def to_json(self) -> list[int]:
        return list(self.images)


@dataclass(frozen=True)
class CycleDecomposition:
    """Partition of {1, ..., n} into fixed points and orbits of length >= 2.

    Each cycle is listed as (i, sigma(i), sigma^2(i), ...) starting from the
    smallest element not covered by an earlier cycle.
    """

    fixed_points: frozenset[int]
    cycles: tuple[tuple[int, ...], ...]

    def to_permutation(self) -> Permutation:
        """Recompose the permutation this decomposition came from."""
        n = len(self.fixed_points) + sum(len(c) for c in self.cycles)
        images = list(range(1, n + 1))
        for cycle in self.cycles:
            for t, el in enumerate(cycle):
                images[el - 1] = cycle[(t + 1) % len(cycle)]
        return Permutation(n, tuple(images))


def make_permutation(n: int, images) -> Permutation:
    """Validate and build a permutation from its 1-based image list."""
    if n <= 1:
        raise BadDimension(f"need n > 1, got n={n}")
    return Permutation(n, tuple(images))


def identity_permutation(n: int) -> Permutation:
    return make_permutation(n, range(1, n + 1))


def shift_permutation(n: int, s: int) -> Permutation:
    """The cyclic shift i -> i + s (mod n), reduced into {1, ..., n}."""
    if n <= 1:
        raise BadDimension(f"need n > 1, got n={n}")
    return Permutation(n, tuple(wrap_index(n, i + s) for i in range(1, n + 1)))


def cycle_decomposition(sigma: Permutation) -> CycleDecomposition:
    """Fixed points first, then orbits extracted from the smallest index
    not yet covered, so the result is deterministic."""
    fixed = frozenset(i for i in range(1, sigma.n + 1) if sigma.apply(i) == i)
    covered = set(fixed)
    cycles = []
    for i in range(1, sigma.n + 1):
        if i in covered:
            continue
        orbit = [i]
        j = sigma.apply(i)
        while j != i:
            orbit.append(j)
            j = sigma.apply(j)
        covered.update(orbit)
        cycles.append(tuple(orbit))
    return CycleDecomposition(fixed, tuple(cycles))


def forward_displacement(sigma: Permutation, i: int) -> int:
    """(sigma(i) - i) mod n, the representative in {0, ..., n-1}."""
    return (sigma.apply(i) - i) % sigma.n


def backward_displacement(sigma: Permutation, i: int) -> int:
    """(i - sigma(i)) mod n, the representative in {0, ..., n-1}."""
    return (i - sigma.apply(i)) % sigma.n


def max_forward_displacement(sigma: Permutation) -> int:
    return max(forward_displacement(sigma, i) for i in range(1, sigma.n + 1))


def max_backward_displacement(sigma: Permutation) -> int:
    return max(backward_displacement(sigma, i) for i in range(1, sigma.n + 1))
