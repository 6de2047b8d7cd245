import itertools
import math
import random

import pytest
import sympy
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from conftest import perm, regular_cyclic
from genus_atlas.db import ClassificationDB, GenusRecord
from genus_atlas.filters import (
    IncompleteDatabaseError, abelian_epi_exists, abelian_ske_exists, hurwitz_ok,
    prime_signature_ok, relation_matrix, run_filters, signature_abelianization, smith_normal_form,
)
from genus_atlas.group import AbelianInvariants, abelian_invariants, generate
from genus_atlas.search import find_surface_kernel_epi
from genus_atlas.signatures import CandidatePair, Signature, candidate_pairs

S = Signature.parse
AI = AbelianInvariants


def sympy_diagonal(rows):
    D = sympy_snf(sympy.Matrix(rows), domain=sympy.ZZ)
    return sorted(abs(int(D[i, i])) for i in range(min(D.shape)) if D[i, i] != 0)


# --- Smith normal form ------------------------------------------------------

def test_snf_small_example():
    assert smith_normal_form([[2, 0, 0], [0, 3, 0], [0, 0, 8], [1, 1, 1]]) == [1, 1, 2]


def test_snf_matches_sympy_on_random_matrices():
    rng = random.Random(3)
    for _ in range(60):
        rows, cols = rng.randint(1, 5), rng.randint(1, 5)
        A = [[rng.randint(-12, 12) for _ in range(cols)] for _ in range(rows)]
        mine = smith_normal_form(A)
        assert sorted(mine) == sympy_diagonal(A)
        assert all(b % a == 0 for a, b in zip(mine, mine[1:]))


def test_signature_abelianization_matches_sympy():
    rng = random.Random(11)
    for _ in range(20):
        r = rng.randint(2, 6)
        sig = Signature(rng.randint(0, 2), tuple(rng.choice([2, 3, 4, 5, 6, 8, 9, 12]) for _ in range(r)))
        ab = signature_abelianization(sig)
        assert ab.rank == 2 * sig.orbit_genus
        assert list(ab.torsion.factors) == [d for d in sympy_diagonal(relation_matrix(sig)) if d > 1]
        # Z/m1 + ... + Z/mr modulo the diagonal element, whose order is the lcm
        assert ab.torsion.order == math.prod(sig.periods) // math.lcm(*sig.periods)


@pytest.mark.parametrize("sig, rank, torsion", [
    ("(1; -)", 2, ()),
    ("(0; 2,3,8)", 0, (2,)),
    ("(0; 2,2,2,2)", 0, (2, 2, 2)),
])
def test_signature_abelianization(sig, rank, torsion):
    ab = signature_abelianization(S(sig))
    assert (ab.rank, ab.torsion.factors) == (rank, torsion)


# --- abelian epimorphisms ---------------------------------------------------

def abelian_chains(max_order):
    """All invariant-factor chains of abelian groups of order <= max_order."""
    out = [()]

    def rec(chain, prod):
        last = chain[-1] if chain else 1
        for d in range(2, max_order // prod + 1):
            if chain and d % last:
                continue
            new = chain + (d,)
            out.append(new)
            rec(new, prod * d)
    rec((), 1)
    return [c for c in out if all(b % a == 0 for a, b in zip(c, c[1:]))]


def brute_epi(rank, H, G):
    """Exhaustive: does some choice of generator images generate G?

    Images are chosen generator by generator; tuples reaching the same
    partial subgroup are merged, which keeps the enumeration exhaustive.
    """
    mods = G
    elems = list(itertools.product(*[range(b) for b in mods]))
    zero = tuple(0 for _ in mods)

    def add(x, y):
        return tuple((a + b) % m for a, b, m in zip(x, y, mods))

    def join(S, x):
        out = set(S)
        frontier = list(S)
        y = x
        while True:
            shifted = {add(s, y) for s in S}
            if shifted <= out:
                break
            out |= shifted
            y = add(y, x)
        return frozenset(out)

    states = {frozenset([zero])}
    orders = [None] * rank + list(H)
    for a in orders:
        allowed = elems if a is None else [x for x in elems if all((a * xi) % m == 0 for xi, m in zip(x, mods))]
        states = {join(S, x) for S in states for x in allowed}
    return any(len(S) == len(elems) for S in states)


@pytest.mark.parametrize("rank, H, G, expected", [
    (2, (), (6,), True),
    (0, (2, 2), (4,), False),
    (1, (2,), (2, 4), True),
    (1, (2,), (4, 4), False),
])
def test_abelian_epi_examples(rank, H, G, expected):
    assert abelian_epi_exists(rank, AI(H), AI(G)) is expected
    assert brute_epi(rank, H, G) is expected


def test_abelian_epi_matches_brute_force():
    chains = abelian_chains(32)
    assert len(chains) == 55
    for G in chains:
        for H in chains:
            for rank in (0, 1, 2):
                assert abelian_epi_exists(rank, AI(H), AI(G)) == brute_epi(rank, H, G), (rank, H, G)


# --- abelian surface kernel test ------------------------------------------------

def cyclic(n):
    return regular_cyclic(n)


def test_abelian_ske_lcm_condition():
    assert not abelian_ske_exists(S("(0; 2,3,12)"), cyclic(12))


def test_abelian_ske_c4():
    C4 = cyclic(4)
    assert abelian_ske_exists(S("(0; 2,4,4)"), C4)
    t = C4.generator_indices[0]
    t2 = C4.mul(t, t)
    assert C4.mul(C4.mul(t2, t), t) == 0


def test_abelian_ske_parity_condition():
    assert not abelian_ske_exists(S("(0; 2,2,2)"), cyclic(2))
    assert find_surface_kernel_epi(S("(0; 2,2,2)"), cyclic(2)) is None


def test_abelian_ske_rejects_nonabelian(S3):
    with pytest.raises(ValueError):
        abelian_ske_exists(S("(0; 2,2,3)"), S3)


# --- prime signatures and Hurwitz ---------------------------------------------

def test_prime_signature(A4, S4):
    assert prime_signature_ok(cyclic(3), S("(0; 3,3,3)"))
    assert not prime_signature_ok(A4, S("(0; 2,2,2,2,2,2)"))
    assert prime_signature_ok(S4, S("(0; 2,2,2,2,2)"))
    assert prime_signature_ok(A4, S("(0; 2,2,3,3)"))  # not uniform: vacuous
    assert prime_signature_ok(A4, S("(0; 4,4,4)"))  # 4 is not prime: vacuous


def test_hurwitz(A5, S4):
    for n in (2, 3, 7, 84):
        assert not hurwitz_ok(cyclic(n), S("(0; 2,3,7)"))
    assert hurwitz_ok(A5, S("(0; 2,3,7)"))
    assert not hurwitz_ok(S4, S("(0; 2,3,7)"))
    assert hurwitz_ok(cyclic(2), S("(0; 2,3,8)"))


# --- run_filters ------------------------------------------------------------------

def test_run_filters_already_classified(Q8):
    from genus_atlas.search import find_surface_kernel_epi as find
    from genus_atlas.catalog import GroupId

    sig = S("(0; 4,4,4)")
    db = ClassificationDB()
    db.replace_genus(2, [GenusRecord(2, GroupId(8, 4), "Q8", 8, sig, find(sig, Q8))])
    pair = candidate_pairs(3, order=8)[0]
    verdict = run_filters(pair, Q8, db, (8, 4))
    assert not verdict and verdict.reason == "already-classified"
    # the genus-2 run itself is not blocked by its own record
    assert run_filters(CandidatePair(8, sig, 2), Q8, ClassificationDB(), (8, 4))


def test_run_filters_abelian_invariants(catalog):
    pair = CandidatePair(48, S("(0; 2,3,8)"), 2)
    hits = 0
    for rec in catalog.groups_of_order(48).records:
        G = catalog.group(rec.id)
        if abelian_invariants(G).factors == (2, 2):
            verdict = run_filters(pair, G)
            assert verdict.reason == "abelian-invariants"
            assert not brute_epi(0, (2,), (2, 2))
            hits += 1
    assert hits > 0


def test_run_filters_pass(catalog):
    G = catalog.group((48, 29))  # GL(2,3)
    assert run_filters(CandidatePair(48, S("(0; 2,3,8)"), 2), G, ClassificationDB(), (48, 29)).passed


def test_run_filters_reason_strings(A4, Q8):
    assert run_filters(CandidatePair(12, S("(0; 2,2,2,2,2,2)"), 6), A4).reason == "abelian-invariants"
    # Q8 abelianizes onto C2 x C2, but its only involution is central
    assert run_filters(CandidatePair(8, S("(0; 2,2,2,2,2)"), 3), Q8).reason == "prime-closure"
    assert run_filters(CandidatePair(3, S("(0; 3,3,3,3)"), 2), cyclic(3)).passed
    assert run_filters(CandidatePair(2, S("(0; 2,2,2)"), 2), cyclic(2)).reason == "abelian-ske"
    S4_like = generate([perm("(1,2)", 4), perm("(1,2,3,4)", 4)])
    assert run_filters(CandidatePair(24, S("(0; 2,3,7)"), 2), S4_like).reason in (
        "abelian-invariants", "hurwitz-perfect")


def test_run_filters_requires_complete_db(Q8):
    with pytest.raises(IncompleteDatabaseError):
        run_filters(CandidatePair(8, S("(0; 2,2,2,4)"), 3), Q8, ClassificationDB(), (8, 4))
