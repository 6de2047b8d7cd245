"""Finite permutation groups with a full element list and a Cayley table.

Everything here is exact and brute force: the groups this package deals
with have at most a few hundred elements, so enumerating the closure and
tabulating products once makes orders, classes and subgroup closures cheap
integer lookups.  Elements are addressed by their index into
``FiniteGroup.elements``; index 0 is always the identity.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .perm import Permutation, PermutationError

DEFAULT_ELEMENT_CAP = 20000


class GroupTooLargeError(RuntimeError):
    """Closure exceeded the element cap (usually a catalog problem)."""


@dataclass(frozen=True)
class ConjugacyClass:
    representative: Permutation
    members: frozenset[Permutation]
    element_order: int
    indices: frozenset[int]

    def __len__(self) -> int:
        return len(self.indices)


@dataclass(frozen=True)
class AbelianInvariants:
    """Invariant factors d1 | d2 | ... (all >= 2) plus a free rank."""

    factors: tuple[int, ...] = ()
    rank: int = 0

    def __post_init__(self):
        if any(d < 2 for d in self.factors):
            raise ValueError(f"invariant factors must be >= 2: {self.factors}")
        for a, b in zip(self.factors, self.factors[1:]):
            if b % a:
                raise ValueError(f"not a divisibility chain: {self.factors}")

    @property
    def order(self) -> int:
        if self.rank:
            raise ValueError("infinite group has no finite order")
        return math.prod(self.factors)

    @property
    def exponent(self) -> int:
        return self.factors[-1] if self.factors else 1

    @classmethod
    def from_prime_powers(cls, powers: Iterable[int], rank: int = 0) -> AbelianInvariants:
        """Assemble the invariant-factor chain from elementary divisors."""
        by_prime: dict[int, list[int]] = {}
        for q in powers:
            if q > 1:
                by_prime.setdefault(_smallest_prime_factor(q), []).append(q)
        length = max((len(v) for v in by_prime.values()), default=0)
        factors = [1] * length
        for qs in by_prime.values():
            qs.sort(reverse=True)
            for i, q in enumerate(qs):
                factors[length - 1 - i] *= q
        return cls(tuple(factors), rank)

    def prime_part(self, p: int) -> list[int]:
        """Exponents of the p-primary invariants, largest first."""
        out = []
        for d in self.factors:
            e = 0
            while d % p == 0:
                d //= p
                e += 1
            if e:
                out.append(e)
        return sorted(out, reverse=True)


def _smallest_prime_factor(n: int) -> int:
    p = 2
    while p * p <= n:
        if n % p == 0:
            return p
        p += 1
    return n


def prime_factors(n: int) -> list[int]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def _cycle_order(img: tuple[int, ...]) -> int:
    seen = bytearray(len(img))
    order = 1
    for start in range(len(img)):
        if seen[start]:
            continue
        length = 0
        j = start
        while not seen[j]:
            seen[j] = 1
            j = img[j]
            length += 1
        order = math.lcm(order, length)
    return order


class FiniteGroup:
    """The group generated by some permutations of a common degree.

    Construction enumerates every element breadth first.  Products, inverses
    and element orders are then available by index through ``mul``,
    ``inv`` and ``orders``.
    """

    def __init__(self, generators: Sequence[Permutation], cap: int = DEFAULT_ELEMENT_CAP):
        gens = list(generators)
        if not gens:
            raise ValueError("need at least one generator")
        degree = gens[0].degree
        if any(g.degree != degree for g in gens):
            raise PermutationError("generators must share a degree")
        self.degree = degree
        self.generators = tuple(gens)

        ident = tuple(range(degree))
        raw_gens = [tuple(i - 1 for i in g.images) for g in gens]
        elements = [ident]
        index = {ident: 0}
        k = 0
        while k < len(elements):
            x = elements[k]
            for g in raw_gens:
                y = tuple(g[i] for i in x)
                if y not in index:
                    index[y] = len(elements)
                    elements.append(y)
                    if len(elements) > cap:
                        raise GroupTooLargeError(
                            f"closure exceeds {cap} elements; raise the cap or check the generators")
            k += 1
        self._raw = elements
        self._index = index
        self.order = len(elements)
        self.generator_indices = tuple(index[g] for g in raw_gens)

    def __repr__(self) -> str:
        return f"<FiniteGroup order={self.order} degree={self.degree}>"

    def __len__(self) -> int:
        return self.order

    @cached_property
    def elements(self) -> list[Permutation]:
        return [Permutation(tuple(i + 1 for i in x)) for x in self._raw]

    def index_of(self, p: Permutation) -> int:
        try:
            return self._index[tuple(i - 1 for i in p.images)]
        except KeyError:
            raise ValueError(f"{p} is not an element of this group") from None

    def __contains__(self, p: Permutation) -> bool:
        return p.degree == self.degree and tuple(i - 1 for i in p.images) in self._index

    @cached_property
    def table(self) -> np.ndarray:
        """``table[a, b]`` is the index of a*b (a first, then b)."""
        n = self.order
        E = np.array(self._raw, dtype=np.int64)
        base = self._base()
        radix = self.degree ** np.arange(len(base), dtype=np.int64)
        keys = E[:, base] @ radix
        order = np.argsort(keys)
        sorted_keys = keys[order]
        # (a*b)(pt) = b(a(pt)); only base images are needed to identify it
        prod = E[np.arange(n)[None, :, None], E[:, base][:, None, :]]
        pkeys = prod @ radix
        pos = np.searchsorted(sorted_keys, pkeys)
        return order[pos].astype(np.int32)

    def _base(self) -> list[int]:
        """Points whose images determine an element uniquely."""
        E = np.array(self._raw, dtype=np.int64)
        alive = np.ones(self.order, dtype=bool)
        alive[0] = False
        base = []
        while alive.any():
            moved = (E[alive] != np.arange(self.degree)).sum(axis=0)
            pt = int(np.argmax(moved))
            base.append(pt)
            alive &= E[:, pt] == pt
        if not base:
            base = [0]
        if self.degree ** len(base) >= 2**62:
            raise GroupTooLargeError("base too long for product table keys")
        return base

    @cached_property
    def _mt(self) -> list[list[int]]:
        return self.table.tolist()

    def mul(self, a: int, b: int) -> int:
        return self._mt[a][b]

    @cached_property
    def inverses(self) -> list[int]:
        return [row.index(0) for row in self._mt]

    def inv(self, a: int) -> int:
        return self.inverses[a]

    def power(self, a: int, k: int) -> int:
        k %= self.orders[a]
        mt = self._mt
        result, base = 0, a
        while k:
            if k & 1:
                result = mt[result][base]
            base = mt[base][base]
            k >>= 1
        return result

    def conj(self, x: int, g: int) -> int:
        """g^-1 x g."""
        mt = self._mt
        return mt[mt[self.inverses[g]][x]][g]

    def commutator(self, a: int, b: int) -> int:
        """[a, b] = a^-1 b^-1 a b."""
        mt = self._mt
        inv = self.inverses
        return mt[mt[mt[inv[a]][inv[b]]][a]][b]

    @cached_property
    def orders(self) -> list[int]:
        return [_cycle_order(x) for x in self._raw]

    @cached_property
    def order_index(self) -> dict[int, frozenset[int]]:
        buckets: dict[int, set[int]] = {}
        for i, m in enumerate(self.orders):
            buckets.setdefault(m, set()).add(i)
        return {m: frozenset(s) for m, s in sorted(buckets.items())}

    def indices_of_order(self, m: int) -> frozenset[int]:
        return self.order_index.get(m, frozenset())

    @cached_property
    def exponent(self) -> int:
        return math.lcm(*self.orders)

    @cached_property
    def class_of(self) -> list[int]:
        """Position in ``classes`` of each element's conjugacy class."""
        return self._class_data[1]

    @cached_property
    def classes(self) -> list[ConjugacyClass]:
        return self._class_data[0]

    @cached_property
    def _class_data(self) -> tuple[list[ConjugacyClass], list[int]]:
        n = self.order
        label = [-1] * n
        classes = []
        gens = self.generator_indices
        for start in range(n):
            if label[start] >= 0:
                continue
            cid = len(classes)
            label[start] = cid
            orbit = [start]
            k = 0
            while k < len(orbit):
                x = orbit[k]
                for g in gens:
                    y = self.conj(x, g)
                    if label[y] < 0:
                        label[y] = cid
                        orbit.append(y)
                k += 1
            members = frozenset(orbit)
            classes.append(ConjugacyClass(
                representative=self.elements[start],
                members=frozenset(self.elements[i] for i in members),
                element_order=self.orders[start],
                indices=members,
            ))
        return classes, label

    def class_representatives(self, m: int | None = None) -> list[int]:
        """Index of the first element of each class, optionally of order m."""
        reps = []
        for c in self.classes:
            rep = min(c.indices)
            if m is None or self.orders[rep] == m:
                reps.append(rep)
        return reps

    def closure(self, gens: Iterable[int]) -> frozenset[int]:
        """Subgroup generated by the given element indices."""
        gens = [g for g in set(gens) if g != 0]
        mt = self._mt
        seen = {0}
        frontier = [0]
        while frontier:
            nxt = []
            for x in frontier:
                row = mt[x]
                for g in gens:
                    y = row[g]
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(seen)

    def generates(self, gens: Iterable[int]) -> bool:
        return len(self.closure(gens)) == self.order

    def normal_closure_indices(self, subset: Iterable[int]) -> frozenset[int]:
        gens = {s for s in subset if s != 0}
        H = self.closure(gens)
        while True:
            extra = {self.conj(s, g) for s in gens for g in self.generator_indices} - H
            if not extra:
                return H
            gens |= extra
            H = self.closure(gens)

    @cached_property
    def derived_subgroup_indices(self) -> frozenset[int]:
        gens = self.generator_indices
        comms = {self.commutator(a, b) for a in gens for b in gens}
        return self.normal_closure_indices(comms)

    @cached_property
    def is_abelian(self) -> bool:
        gens = self.generator_indices
        return all(self.mul(a, b) == self.mul(b, a) for a in gens for b in gens)

    def subgroup(self, indices: Iterable[int]) -> FiniteGroup:
        """Materialize a set of element indices as a group in its own right."""
        # a small generating set keeps the new closure cheap
        chosen: list[int] = []
        H = frozenset([0])
        for i in sorted(set(indices)):
            if i not in H:
                chosen.append(i)
                H = self.closure(chosen)
        return FiniteGroup([self.elements[i] for i in chosen] or [self.elements[0]])


def generate(gens: Sequence[Permutation], cap: int = DEFAULT_ELEMENT_CAP) -> FiniteGroup:
    return FiniteGroup(gens, cap=cap)


def elements_of_exact_order(G: FiniteGroup, m: int) -> frozenset[Permutation]:
    return frozenset(G.elements[i] for i in G.indices_of_order(m))


def normal_closure(G: FiniteGroup, subset: Iterable[Permutation]) -> FiniteGroup:
    return G.subgroup(G.normal_closure_indices(G.index_of(s) for s in subset))


def derived_subgroup(G: FiniteGroup) -> FiniteGroup:
    return G.subgroup(G.derived_subgroup_indices)


def abelian_invariants(G: FiniteGroup) -> AbelianInvariants:
    """Invariant factors of the abelianization G/[G,G].

    For each element we find its order modulo the derived subgroup D.  For a
    prime p, the number of cosets killed by p^k determines how many cyclic
    p-factors of order >= p^k the quotient has.
    """
    D = G.derived_subgroup_indices
    quotient_order = G.order // len(D)
    if quotient_order == 1:
        return AbelianInvariants()
    mt = G._mt
    mod_orders = []
    for x in range(G.order):
        k, y = 1, x
        while y not in D:
            y = mt[y][x]
            k += 1
        mod_orders.append(k)
    counts = Counter(mod_orders)
    powers = []
    for p in prime_factors(quotient_order):
        prev, k = 1, 1
        mults: list[int] = []
        while True:
            q = p**k
            killed = sum(c for o, c in counts.items() if q % o == 0) // len(D)
            if killed == prev:
                break
            mults.append(round(math.log(killed // prev, p)))
            prev = killed
            k += 1
        # mults[k-1] = number of factors of order >= p^k
        mults.append(0)
        for k in range(len(mults) - 1):
            powers += [p ** (k + 1)] * (mults[k] - mults[k + 1])
    return AbelianInvariants.from_prime_powers(powers)


def is_perfect(G: FiniteGroup) -> bool:
    return len(G.derived_subgroup_indices) == G.order


def is_cyclic(G: FiniteGroup) -> bool:
    return G.order in G.order_index


def is_dihedral(G: FiniteGroup) -> bool:
    """Dihedral of order 2n: r of order n, an involution s outside <r>, (sr)^2 = 1.

    Order 2 counts as cyclic rather than dihedral; the Klein group is D4.
    """
    if G.order % 2 or G.order < 4:
        return False
    n = G.order // 2
    involutions = G.indices_of_order(2)
    for r in G.indices_of_order(n):
        R = G.closure([r])
        for s in involutions:
            if s in R:
                continue
            sr = G.mul(s, r)
            if G.mul(sr, sr) == 0:
                return True
    return False


_EXCEPTIONAL_FINGERPRINTS = {
    (12, ((1, 1), (2, 3), (3, 8))),  # A4
    (24, ((1, 1), (2, 9), (3, 8), (4, 6))),  # S4
    (60, ((1, 1), (2, 15), (3, 20), (5, 24))),  # A5
}


def order_statistics(G: FiniteGroup) -> tuple[tuple[int, int], ...]:
    return tuple((m, len(s)) for m, s in G.order_index.items())


def recognize_genus_zero(G: FiniteGroup) -> bool:
    """True for cyclic and dihedral groups, A4, S4 and A5."""
    if is_cyclic(G):
        return True
    if (G.order, order_statistics(G)) in _EXCEPTIONAL_FINGERPRINTS:
        return True
    return is_dihedral(G)
