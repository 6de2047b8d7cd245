"""Cheap tests that rule out (group, signature) pairs before the search.

Each test is a necessary condition for a surface kernel epimorphism, so a
rejection is final.  ``run_filters`` applies them cheapest first.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Protocol

from .group import AbelianInvariants, FiniteGroup, abelian_invariants, is_perfect, prime_factors
from .signatures import CandidatePair, Signature

HURWITZ_SIGNATURE = Signature(0, (2, 3, 7))


def smith_normal_form(matrix: list[list[int]]) -> list[int]:
    """Diagonal of the Smith normal form (nonzero entries, in divisibility order)."""
    A = [list(row) for row in matrix]
    rows = len(A)
    cols = len(A[0]) if rows else 0
    diag = []
    t = 0
    while t < min(rows, cols):
        # pivot: smallest nonzero entry in the remaining block
        pivot = None
        for i in range(t, rows):
            for j in range(t, cols):
                if A[i][j] and (pivot is None or abs(A[i][j]) < abs(A[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        i, j = pivot
        A[t], A[i] = A[i], A[t]
        for row in A:
            row[t], row[j] = row[j], row[t]
        while True:
            p = A[t][t]
            dirty = False
            for i in range(t + 1, rows):
                q = A[i][t] // p
                if q:
                    A[i] = [a - q * b for a, b in zip(A[i], A[t])]
                if A[i][t]:
                    dirty = True
            for j in range(t + 1, cols):
                q = A[t][j] // p
                if q:
                    for row in A:
                        row[j] -= q * row[t]
                if A[t][j]:
                    dirty = True
            if not dirty:
                # entries left in the block must also be multiples of the pivot
                bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                            if A[i][j] % p), None)
                if bad is None:
                    break
                A[t] = [a + b for a, b in zip(A[t], A[bad[0]])]
                continue
            # a remainder is now smaller than the pivot; move it into place
            best = min(((i, j) for i in range(t, rows) for j in range(t, cols)
                        if A[i][j] and (i == t or j == t)), key=lambda ij: abs(A[ij[0]][ij[1]]))
            i, j = best
            A[t], A[i] = A[i], A[t]
            for row in A:
                row[t], row[j] = row[j], row[t]
        diag.append(abs(A[t][t]))
        t += 1
    return diag


@dataclass(frozen=True)
class SignatureAbelianization:
    """Z^rank plus a finite torsion part."""

    rank: int
    torsion: AbelianInvariants


def relation_matrix(sig: Signature) -> list[list[int]]:
    """Relations among the elliptic generators once the group is abelianized."""
    r = sig.r
    rows = [[m if j == i else 0 for j in range(r)] for i, m in enumerate(sig.periods)]
    rows.append([1] * r)
    return rows


def signature_abelianization(sig: Signature) -> SignatureAbelianization:
    if sig.r == 0:
        return SignatureAbelianization(2 * sig.orbit_genus, AbelianInvariants())
    diag = smith_normal_form(relation_matrix(sig))
    # the relation matrix has full column rank, so the elliptic part is finite
    assert len(diag) == sig.r
    return SignatureAbelianization(
        2 * sig.orbit_genus, AbelianInvariants(tuple(d for d in diag if d > 1)))


def abelian_epi_exists(rank: int, H: AbelianInvariants, G: AbelianInvariants) -> bool:
    """Is there an epimorphism Z^rank + H -> G?  (G finite.)

    Checked one prime at a time: the free summands cover the ``rank`` largest
    cyclic p-factors of G and the remaining ones must be dominated, in order,
    by the p-factors of H.
    """
    for p in prime_factors(G.order) if G.factors else []:
        a = H.prime_part(p)
        b = G.prime_part(p)
        rest = b[rank:]
        if len(rest) > len(a):
            return False
        if any(bi > ai for bi, ai in zip(rest, a)):
            return False
    return True


def _two_adic(n: int) -> int:
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    return v


def abelian_ske_exists(sig: Signature, G: FiniteGroup, invariants: AbelianInvariants | None = None,
                       *, abelian: bool | None = None) -> bool:
    """Surface kernel epimorphism onto an abelian group, decided arithmetically."""
    if not (G.is_abelian if abelian is None else abelian):
        raise ValueError("group is not abelian")
    inv = invariants if invariants is not None else abelian_invariants(G)
    periods = sig.periods
    r = len(periods)
    M = math.lcm(1, *periods)
    # (o) some epimorphism at all
    ab = signature_abelianization(sig)
    if not abelian_epi_exists(ab.rank, ab.torsion, inv):
        return False
    # (i) no period is needed for the lcm on its own
    for i in range(r):
        if math.lcm(1, *(periods[:i] + periods[i + 1:])) != M:
            return False
    # (ii)
    if inv.exponent % M:
        return False
    if sig.orbit_genus == 0 and M != inv.exponent:
        return False
    # (iii)
    if r == 1 or (sig.orbit_genus == 0 and r < 3):
        return False
    # (iv)
    if M % 2 == 0:
        q = 2 ** _two_adic(M)
        if sum(1 for d in inv.factors if d % q == 0) == 1:
            if sum(1 for m in periods if m % q == 0) % 2:
                return False
    return True


def prime_signature_ok(G: FiniteGroup, sig: Signature) -> bool:
    """For (0; p,...,p): the elements of order p must normally generate G."""
    if sig.orbit_genus != 0 or not sig.periods or len(set(sig.periods)) != 1:
        return True
    p = sig.periods[0]
    if prime_factors(p) != [p]:
        return True
    return len(G.normal_closure_indices(G.indices_of_order(p))) == G.order


def hurwitz_ok(G: FiniteGroup, sig: Signature) -> bool:
    """Quotients of the (2,3,7) triangle group are perfect."""
    if sig != HURWITZ_SIGNATURE:
        return True
    return G.order > 1 and is_perfect(G)


class GenusLookup(Protocol):
    complete_through: int

    def lookup(self, order: int, index: int) -> int | None: ...


class IncompleteDatabaseError(RuntimeError):
    pass


@dataclass(frozen=True)
class FilterVerdict:
    passed: bool
    reason: str | None = None

    def __bool__(self) -> bool:
        return self.passed


PASS = FilterVerdict(True)


def run_filters(pair: CandidatePair, G: FiniteGroup, db: GenusLookup | None = None,
                group_id: tuple[int, int] | None = None) -> FilterVerdict:
    g = pair.target_genus
    sig = pair.signature
    if db is not None:
        if db.complete_through < g - 1:
            raise IncompleteDatabaseError(
                f"database complete through genus {db.complete_through}, need {g - 1}")
        if group_id is not None:
            known = db.lookup(*group_id)
            if known is not None and 2 <= known <= g - 1:
                return FilterVerdict(False, "already-classified")
    inv = abelian_invariants(G)
    ab = signature_abelianization(sig)
    if not abelian_epi_exists(ab.rank, ab.torsion, inv):
        return FilterVerdict(False, "abelian-invariants")
    if G.is_abelian and not abelian_ske_exists(sig, G, inv):
        return FilterVerdict(False, "abelian-ske")
    if not prime_signature_ok(G, sig):
        return FilterVerdict(False, "prime-closure")
    if not hurwitz_ok(G, sig):
        return FilterVerdict(False, "hurwitz-perfect")
    return PASS
