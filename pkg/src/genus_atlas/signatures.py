"""Fuchsian signatures and Riemann-Hurwitz enumeration of (order, signature) pairs.

All arithmetic is exact (``fractions.Fraction``); no floats are involved.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

_SIG_RE = re.compile(r"^\(\s*(\d+)\s*;\s*(.*?)\s*\)$")


@dataclass(frozen=True, order=True)
class Signature:
    """Orbit genus plus an ascending tuple of periods (each >= 2)."""

    orbit_genus: int
    periods: tuple[int, ...] = field(default=())

    def __post_init__(self):
        if self.orbit_genus < 0:
            raise ValueError("orbit genus must be nonnegative")
        periods = tuple(sorted(self.periods))
        if any(m < 2 for m in periods):
            raise ValueError(f"periods must be >= 2: {periods}")
        object.__setattr__(self, "periods", periods)

    @classmethod
    def parse(cls, text: str) -> Signature:
        """Read ``(g0; m1,...,mr)``; an empty period list may be written ``-``."""
        match = _SIG_RE.match(text.strip())
        if not match:
            raise ValueError(f"malformed signature {text!r}")
        body = match.group(2).strip()
        periods = () if body in ("", "-") else tuple(int(t) for t in body.split(","))
        return cls(int(match.group(1)), periods)

    @property
    def r(self) -> int:
        return len(self.periods)

    def area(self) -> Fraction:
        """2*g0 - 2 + sum(1 - 1/m); positive exactly for hyperbolic signatures."""
        return 2 * self.orbit_genus - 2 + sum((1 - Fraction(1, m) for m in self.periods), Fraction(0))

    def is_hyperbolic(self) -> bool:
        return self.area() > 0

    def __str__(self) -> str:
        body = ",".join(map(str, self.periods)) if self.periods else "-"
        return f"({self.orbit_genus}; {body})"


@dataclass(frozen=True, order=True)
class CandidatePair:
    order: int
    signature: Signature
    target_genus: int

    def __str__(self) -> str:
        return f"{self.order} {self.signature}"


def rh_genus(sig: Signature, n: int) -> Fraction:
    """Genus of a surface carrying an n-element group with quotient signature sig."""
    if n < 1:
        raise ValueError("group order must be positive")
    return 1 + n * (sig.orbit_genus - 1) + Fraction(n, 2) * sum(
        (1 - Fraction(1, m) for m in sig.periods), Fraction(0))


def order_for(sig: Signature, g: int) -> int | None:
    """The group order n with rh_genus(sig, n) == g, if it is an integer."""
    area = sig.area()
    if area <= 0:
        raise ValueError(f"{sig} is not hyperbolic")
    n = Fraction(2 * (g - 1)) / area
    return n.numerator if n.denominator == 1 else None


LARGE_ORDER_TABLE: tuple[tuple[Signature, Fraction], ...] = tuple(
    (Signature(0, periods), Fraction(coef))
    for periods, coef in [
        ((2, 3, 7), 84),
        ((2, 3, 8), 48),
        ((2, 4, 5), 40),
        ((2, 3, 9), 36),
        ((2, 3, 10), 30),
        ((2, 3, 11), Fraction(132, 5)),
        ((2, 3, 12), 24),
        ((2, 4, 6), 24),
        ((3, 3, 4), 24),
    ]
)


def large_order_signatures(g: int | None = None) -> list[tuple[Signature, Fraction]]:
    """The nine triangle signatures admitting |G| >= 24(g-1), with |G|/(g-1).

    The table does not depend on g; the argument is accepted for symmetry
    with the other enumeration helpers.
    """
    return list(LARGE_ORDER_TABLE)


def _divisors(n: int) -> list[int]:
    return [d for d in range(2, n + 1) if n % d == 0]


def _period_tuples(divisors: list[int], budget: Fraction, max_len: int,
                   start: int = 0) -> Iterator[tuple[int, ...]]:
    """Nondecreasing tuples from divisors whose terms 1 - 1/m sum to budget."""
    if budget == 0:
        yield ()
        return
    # at most max_len terms remain, each strictly below 1
    if budget >= max_len:
        return
    for i in range(start, len(divisors)):
        m = divisors[i]
        term = 1 - Fraction(1, m)
        # terms grow with m: once one overshoots, so do the rest
        if term > budget:
            break
        for rest in _period_tuples(divisors, budget - term, max_len - 1, i):
            yield (m,) + rest


def candidate_pairs(g: int, order: int | None = None) -> list[CandidatePair]:
    """Every (|G|, signature) with rh_genus == g and all periods dividing |G|.

    Sorted by order, then orbit genus, then period count, then periods.
    """
    if g < 2:
        raise ValueError("target genus must be at least 2")
    out = []
    orders = range(2, 84 * (g - 1) + 1) if order is None else [order]
    for n in orders:
        if n < 2 or n > 84 * (g - 1):
            continue
        divs = _divisors(n)
        per_n = []
        g0_max = (g - 1) // n + 1
        for g0 in range(g0_max + 1):
            # sum(1 - 1/m) must equal 2(g-1)/n - 2(g0-1)
            budget = Fraction(2 * (g - 1), n) - 2 * (g0 - 1)
            if budget < 0:
                continue
            r_max = (4 * (g - 1)) // n + 4 - 4 * g0
            if r_max < 0:
                continue
            for periods in _period_tuples(divs, budget, r_max):
                sig = Signature(g0, periods)
                r = len(periods)
                if not sig.is_hyperbolic():
                    continue
                if (g0 > 0 or r >= 5) and n > 4 * (g - 1):
                    continue
                if r == 4 and n > 12 * (g - 1):
                    continue
                per_n.append(sig)
        for sig in sorted(per_n, key=lambda s: (s.orbit_genus, s.r, s.periods)):
            assert rh_genus(sig, n) == g
            if n >= 24 * (g - 1):
                assert any(sig == s for s, _ in LARGE_ORDER_TABLE), (n, sig)
            out.append(CandidatePair(n, sig, g))
    return out


# Signatures whose actions live on genus 0 and genus 1 surfaces.
EUCLIDEAN_SIGNATURES: tuple[Signature, ...] = (
    Signature(1, ()),
    Signature(0, (2, 2, 2, 2)),
    Signature(0, (3, 3, 3)),
    Signature(0, (2, 4, 4)),
    Signature(0, (2, 3, 6)),
)
