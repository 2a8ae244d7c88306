"""Permutations of {0, ..., n-1} in one-line notation."""
from __future__ import annotations

from itertools import permutations


class PermError(ValueError):
    pass


class Perm:
    __slots__ = ("images",)

    def __init__(self, images):
        images = tuple(int(i) for i in images)
        if sorted(images) != list(range(len(images))):
            raise PermError(f"{images} is not a permutation")
        self.images = images

    @classmethod
    def _raw(cls, images):
        p = object.__new__(cls)
        p.images = images
        return p

    @classmethod
    def identity(cls, n):
        return cls._raw(tuple(range(n)))

    @classmethod
    def transposition(cls, n, i, j):
        im = list(range(n))
        im[i], im[j] = j, i
        return cls._raw(tuple(im))

    @classmethod
    def cycle(cls, n, *pts):
        """The cycle pts[0] -> pts[1] -> ... -> pts[0]."""
        im = list(range(n))
        for a, b in zip(pts, pts[1:] + pts[:1]):
            im[a] = b
        return cls(im)

    @property
    def degree(self):
        return len(self.images)

    def __call__(self, i):
        return self.images[i]

    def __mul__(self, other: "Perm") -> "Perm":
        """(self * other)(i) = self(other(i))."""
        a, b = self.images, other.images
        if len(a) != len(b):
            raise PermError("degree mismatch")
        return Perm._raw(tuple(a[j] for j in b))

    def inverse(self) -> "Perm":
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Perm._raw(tuple(inv))

    def __pow__(self, k: int) -> "Perm":
        if k < 0:
            return self.inverse() ** (-k)
        r = Perm.identity(self.degree)
        for _ in range(k):
            r = self * r
        return r

    def extend(self, n: int) -> "Perm":
        if n < self.degree:
            raise PermError("cannot shrink a permutation")
        return Perm._raw(self.images + tuple(range(self.degree, n)))

    def is_identity(self):
        return all(i == j for i, j in enumerate(self.images))

    def sign(self) -> int:
        seen = [False] * self.degree
        s = 1
        for i in range(self.degree):
            if seen[i]:
                continue
            j = i
            length = 0
            while not seen[j]:
                seen[j] = True
                j = self.images[j]
                length += 1
            if length % 2 == 0:
                s = -s
        return s

    def act_set(self, S):
        return frozenset(self.images[i] for i in S)

    def act_tuple(self, t):
        return tuple(self.images[i] for i in t)

    def __eq__(self, other):
        return isinstance(other, Perm) and self.images == other.images

    def __lt__(self, other):
        return self.images < other.images

    def __hash__(self):
        return hash(self.images)

    def __repr__(self):
        return f"Perm({list(self.images)})"


def all_perms(n: int):
    return [Perm._raw(p) for p in permutations(range(n))]
