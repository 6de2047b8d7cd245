"""Concrete groups, their invariants, and the cheap filters.

Builds a few permutation groups by hand, looks at their element orders,
classes and abelianizations, then shows each pre-filter turning down a
(group, signature) pair before any search runs.
"""

from genus_atlas.catalog import Catalog
from genus_atlas.filters import run_filters, signature_abelianization
from genus_atlas.group import abelian_invariants, generate, is_perfect, order_statistics
from genus_atlas.perm import Permutation
from genus_atlas.signatures import CandidatePair, Signature

p = Permutation.parse
Q8 = generate([p("(1,2,3,4)(5,6,7,8)", 8), p("(1,5,3,7)(2,8,4,6)", 8)])
A5 = generate([p("(1,2,3)", 5), p("(1,2,3,4,5)", 5)])

print("Q8: order", Q8.order, "element orders", order_statistics(Q8))
print("    classes", [len(c) for c in Q8.classes], "abelianization", abelian_invariants(Q8).factors)
print("A5 perfect:", is_perfect(A5), " classes", [len(c) for c in A5.classes])

# the signature side of the abelian-invariants test
for text in ("(0; 2,3,8)", "(0; 2,2,2,2)", "(1; 2)"):
    ab = signature_abelianization(Signature.parse(text))
    print(f"{text:14} -> Z^{ab.rank} + {list(ab.torsion.factors)}")

catalog = Catalog.bundled()
examples = [
    # C2 x S4 abelianizes onto C2 x C2, the triangle group only onto C2
    (CandidatePair(48, Signature.parse("(0; 2,3,8)"), 2), catalog.group((48, 48))),
    # a cyclic group cannot have three involutions multiplying to 1
    (CandidatePair(2, Signature.parse("(0; 2,2,2)"), 2), catalog.group((2, 1))),
    # Q8's involutions all lie in its centre
    (CandidatePair(8, Signature.parse("(0; 2,2,2,2,2)"), 3), Q8),
    # only perfect groups are (2,3,7) quotients; since (0; 2,3,7) itself
    # abelianizes to the trivial group, the abelian test already catches this
    (CandidatePair(84, Signature.parse("(0; 2,3,7)"), 2), catalog.group((84, 1))),
]
for pair, G in examples:
    verdict = run_filters(pair, G)
    print(f"{pair!s:22} |G|={G.order:3} -> {verdict.reason or 'pass'}")
