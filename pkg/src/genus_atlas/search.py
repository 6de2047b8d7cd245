"""Backtracking search for surface kernel epimorphisms onto a finite group.

A signature (g0; m1,...,mr) presents the group

    < a1,b1,...,a_g0,b_g0, x1,...,xr | x_i^m_i, [a1,b1]...[a_g0,b_g0] x1...xr >

and an epimorphism onto G has torsion-free kernel exactly when every x_i is
sent to an element of order exactly m_i.  The search picks images position by
position, forces the last elliptic image from the long relation, and stops at
the first witness.

Two reductions keep it small:

* elliptic positions are filled in descending period order, so the forced
  image is the one with the smallest period;
* the first chosen image only ranges over conjugacy class representatives,
  since conjugating a whole witness by any g gives another witness.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterator, Sequence

from .group import FiniteGroup, generate
from .perm import Permutation, compose, element_order
from .signatures import Signature


@dataclass(frozen=True)
class Witness:
    """Images of a1,b1,...,a_g0,b_g0 and of x1..xr (ascending periods)."""

    hyperbolic_images: tuple[Permutation, ...]
    elliptic_images: tuple[Permutation, ...]

    @property
    def images(self) -> tuple[Permutation, ...]:
        return self.hyperbolic_images + self.elliptic_images


def _sort_by_braid_moves(pairs: list[tuple[int, int]], G: FiniteGroup) -> list[tuple[int, int]]:
    """Reorder (period, image) pairs ascending by period with Hurwitz moves.

    (x, y) -> (y, y^-1 x y) keeps the product, the orders and the generated
    subgroup, so a witness for one ordering of the periods becomes a witness
    for the other.
    """
    pairs = list(pairs)
    for end in range(len(pairs) - 1, 0, -1):
        for i in range(end):
            (m1, x), (m2, y) = pairs[i], pairs[i + 1]
            if m1 > m2:
                pairs[i], pairs[i + 1] = (m2, y), (m1, G.conj(x, y))
    return pairs


def iter_surface_kernel_epis(sig: Signature, G: FiniteGroup,
                             reduce_conjugacy: bool = True) -> Iterator[Witness]:
    """Yield witnesses in a fixed order.

    With ``reduce_conjugacy`` the first image only runs over class
    representatives; without it every image tuple is visited, which is only
    useful for counting on small instances.
    """
    g0 = sig.orbit_genus
    periods = sorted(sig.periods, reverse=True)
    r = len(periods)
    if any(not G.indices_of_order(m) for m in periods):
        return
    mt = G._mt
    inv = G.inverses
    orders = G.orders
    everything = range(G.order)

    # positions 0..2g0-1 are hyperbolic, then the r-1 free elliptic ones
    choices: list[Sequence[int]] = [everything] * (2 * g0)
    choices += [sorted(G.indices_of_order(m)) for m in periods[:-1]]
    if not choices and r == 1:
        # (0; m) alone: x1 must be the identity, which has order 1
        return
    if choices and reduce_conjugacy:
        first_order = periods[0] if g0 == 0 else None
        choices[0] = G.class_representatives(first_order)
    depth = len(choices)
    picked = [0] * depth

    def finish(product: int) -> Witness | None:
        if r:
            last = inv[product]
            if orders[last] != periods[-1]:
                return None
            images = picked + [last]
        else:
            if product != 0:
                return None
            images = list(picked)
        if not G.generates(images):
            return None
        hyper = images[: 2 * g0]
        ell = _sort_by_braid_moves(list(zip(periods, images[2 * g0:])), G)
        return Witness(
            tuple(G.elements[i] for i in hyper),
            tuple(G.elements[i] for _, i in ell),
        )

    def descend(pos: int, product: int) -> Iterator[Witness]:
        if pos == depth:
            w = finish(product)
            if w is not None:
                yield w
            return
        if pos < 2 * g0 and pos % 2 == 1:
            a = picked[pos - 1]
            for b in choices[pos]:
                picked[pos] = b
                comm = mt[mt[mt[inv[a]][inv[b]]][a]][b]
                yield from descend(pos + 1, mt[product][comm])
            return
        if pos < 2 * g0:
            for a in choices[pos]:
                picked[pos] = a
                yield from descend(pos + 1, product)
            return
        row = mt[product]
        for x in choices[pos]:
            picked[pos] = x
            yield from descend(pos + 1, row[x])

    yield from descend(0, 0)


def find_surface_kernel_epi(sig: Signature, G: FiniteGroup) -> Witness | None:
    return next(iter_surface_kernel_epis(sig, G), None)


def validate_witness(sig: Signature, G: FiniteGroup, w: Witness) -> bool:
    """Check exact orders, the long relation and generation directly."""
    if len(w.hyperbolic_images) != 2 * sig.orbit_genus or len(w.elliptic_images) != sig.r:
        return False
    try:
        hyper = [G.index_of(p) for p in w.hyperbolic_images]
        ell = [G.index_of(p) for p in w.elliptic_images]
    except ValueError:
        return False
    if any(G.orders[x] != m for x, m in zip(ell, sig.periods)):
        return False
    product = 0
    for a, b in zip(hyper[::2], hyper[1::2]):
        product = G.mul(product, G.commutator(a, b))
    for x in ell:
        product = G.mul(product, x)
    return product == 0 and G.generates(hyper + ell)


class OracleLimitError(ValueError):
    pass


BRUTE_FORCE_MAX_ORDER = 24
BRUTE_FORCE_MAX_TUPLES = 2_000_000


def brute_force_epi_exists(sig: Signature, G: FiniteGroup,
                           max_tuples: int = BRUTE_FORCE_MAX_TUPLES) -> bool:
    """Exhaustive check over every image tuple, using only permutation arithmetic.

    Nothing from the search above is reused: products are composed directly,
    orders come from cycle types and generation is checked by a fresh closure.
    """
    if G.order > BRUTE_FORCE_MAX_ORDER:
        raise OracleLimitError(f"group order {G.order} exceeds {BRUTE_FORCE_MAX_ORDER}")
    elems = list(G.elements)
    ident = Permutation.identity(G.degree)
    pools = [elems] * (2 * sig.orbit_genus)
    pools += [[p for p in elems if element_order(p) == m] for m in sig.periods]
    size = math.prod(len(p) for p in pools)
    if size > max_tuples:
        raise OracleLimitError(f"{size} image tuples exceed {max_tuples}")
    if not pools:
        return G.order == 1
    g0 = sig.orbit_genus
    for images in itertools.product(*pools):
        product = ident
        for a, b in zip(images[: 2 * g0 : 2], images[1 : 2 * g0 : 2]):
            comm = compose(compose(compose(a.inverse(), b.inverse()), a), b)
            product = compose(product, comm)
        for x in images[2 * g0:]:
            product = compose(product, x)
        if not product.is_identity():
            continue
        if generate(images).order == G.order:
            return True
    return False
