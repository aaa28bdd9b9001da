"""Permutations of ``{0, ..., n-1}`` with cached parity."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations as _iter_permutations

from .errors import BadPermutation

__all__ = [
    "PermutationSpec",
    "inversions",
    "sign",
    "all_permutations",
    "even_permutations",
    "odd_permutations",
    "random_permutation",
]


def inversions(images) -> int:
    n = len(images)
    return sum(1 for i in range(n) for j in range(i + 1, n) if images[i] > images[j])


def sign(images) -> int:
    """``+1`` for even, ``-1`` for odd (cycle-count parity, O(n))."""
    n = len(images)
    seen = [False] * n
    transpositions = 0
    for start in range(n):
        if seen[start]:
            continue
        length = 0
        k = start
        while not seen[k]:
            seen[k] = True
            k = images[k]
            length += 1
        transpositions += length - 1
    return -1 if transpositions % 2 else 1


@dataclass(frozen=True)
class PermutationSpec:
    """A bijection ``i -> images[i]``; 0-based."""

    images: tuple
    parity: int = field(init=False, compare=False)

    def __post_init__(self):
        images = tuple(int(k) for k in self.images)
        if sorted(images) != list(range(len(images))):
            raise BadPermutation(f"{images} is not a permutation of 0..{len(images) - 1}")
        object.__setattr__(self, "images", images)
        object.__setattr__(self, "parity", sign(images))

    @classmethod
    def identity(cls, n):
        return cls(tuple(range(n)))

    @classmethod
    def transposition(cls, n, a, b):
        images = list(range(n))
        images[a], images[b] = b, a
        return cls(tuple(images))

    @property
    def n(self):
        return len(self.images)

    @property
    def is_even(self):
        return self.parity == 1

    def __call__(self, i):
        return self.images[i]

    def inverse(self):
        inv = [0] * self.n
        for i, w in enumerate(self.images):
            inv[w] = i
        return PermutationSpec(tuple(inv))

    def __mul__(self, other):
        """Composition ``(self * other)(i) = self(other(i))``."""
        return PermutationSpec(tuple(self.images[k] for k in other.images))

    def to_json(self):
        return [k + 1 for k in self.images]

    @classmethod
    def from_json(cls, images):
        return cls(tuple(int(k) - 1 for k in images))


@lru_cache(maxsize=None)
def all_permutations(n):
    """All of S_n as ``(images, sign)`` pairs in lexicographic order."""
    return tuple((w, sign(w)) for w in _iter_permutations(range(n)))


@lru_cache(maxsize=None)
def even_permutations(n):
    return tuple(w for w, s in all_permutations(n) if s == 1)


@lru_cache(maxsize=None)
def odd_permutations(n):
    return tuple(w for w, s in all_permutations(n) if s == -1)


def random_permutation(n, rng: random.Random) -> PermutationSpec:
    images = list(range(n))
    rng.shuffle(images)
    return PermutationSpec(tuple(images))
