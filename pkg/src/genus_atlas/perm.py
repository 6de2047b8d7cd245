"""Permutations on the points 1..degree, composed left to right.

``p * q`` means "apply p, then q", so ``(p * q)(i) == q(p(i))``.  The same
convention is used for group products, commutators and witness relations
everywhere in the package.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Iterable, Sequence

_CYCLE_RE = re.compile(r"\(([^()]*)\)")


class PermutationError(ValueError):
    pass


@dataclass(frozen=True, slots=True)
class Permutation:
    """A bijection of {1..degree}; ``images[i-1]`` is the image of point i."""

    images: tuple[int, ...]

    def __post_init__(self):
        n = len(self.images)
        if n == 0:
            raise PermutationError("degree must be positive")
        if sorted(self.images) != list(range(1, n + 1)):
            raise PermutationError(f"not a bijection on 1..{n}: {self.images}")

    @classmethod
    def identity(cls, degree: int) -> Permutation:
        return cls(tuple(range(1, degree + 1)))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], degree: int) -> Permutation:
        images = list(range(1, degree + 1))
        seen: set[int] = set()
        for cyc in cycles:
            for pt in cyc:
                if not 1 <= pt <= degree:
                    raise PermutationError(f"point {pt} out of range 1..{degree}")
                if pt in seen:
                    raise PermutationError(f"not a bijection: point {pt} repeated")
                seen.add(pt)
            for a, b in zip(cyc, list(cyc[1:]) + list(cyc[:1])):
                images[a - 1] = b
        return cls(tuple(images))

    @classmethod
    def parse(cls, text: str, degree: int) -> Permutation:
        """Parse cycle notation such as ``(1,2,3)(4,5)`` or ``()``."""
        text = text.strip()
        if _CYCLE_RE.sub("", text).strip():
            raise PermutationError(f"malformed cycle string {text!r}")
        cycles = []
        for body in _CYCLE_RE.findall(text):
            if not body.strip():
                continue
            try:
                cycles.append([int(tok) for tok in body.split(",")])
            except ValueError:
                raise PermutationError(f"malformed cycle string {text!r}") from None
        return cls.from_cycles(cycles, degree)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point - 1]

    def __mul__(self, other: Permutation) -> Permutation:
        return compose(self, other)

    def __invert__(self) -> Permutation:
        return self.inverse()

    def inverse(self) -> Permutation:
        inv = [0] * self.degree
        for i, j in enumerate(self.images, start=1):
            inv[j - 1] = i
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(j == i for i, j in enumerate(self.images, start=1))

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, each starting at its smallest point, ordered by it."""
        seen = set()
        out = []
        for start in range(1, self.degree + 1):
            if start in seen or self(start) == start:
                continue
            cyc = [start]
            seen.add(start)
            j = self(start)
            while j != start:
                cyc.append(j)
                seen.add(j)
                j = self(j)
            out.append(tuple(cyc))
        return out

    def order(self) -> int:
        return element_order(self)

    def __str__(self) -> str:
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join("(" + ",".join(map(str, c)) + ")" for c in cycles)

    def __repr__(self) -> str:
        return f"Permutation({self}, degree={self.degree})"


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Left-to-right product: apply p first, then q."""
    if p.degree != q.degree:
        raise PermutationError(f"degree mismatch: {p.degree} != {q.degree}")
    qi = q.images
    return Permutation(tuple(qi[i - 1] for i in p.images))


def element_order(p: Permutation) -> int:
    return math.lcm(1, *(len(c) for c in p.cycles()))
