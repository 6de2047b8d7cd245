"""Which group orders and signatures can act on a genus-2 surface?

Walks through the Riemann-Hurwitz bookkeeping: the genus a signature gives
for a group order, the orders forced by the large-order triangle signatures,
and the candidate list the classifier starts from.
"""

from collections import Counter

from genus_atlas.signatures import Signature, candidate_pairs, large_order_signatures, order_for, rh_genus

# (0; 2,3,7) with 84 elements lands exactly on genus 2 ...
print(rh_genus(Signature.parse("(0; 2,3,7)"), 84))
# ... and the torus signatures never leave genus 1, whatever the order
print(rh_genus(Signature.parse("(0; 2,2,2,2)"), 96), rh_genus(Signature.parse("(1; -)"), 60))

print("\nlarge-order signatures, |G| = c (g-1):")
for sig, coef in large_order_signatures():
    print(f"  {str(sig):12} c = {coef}")

# (0; 2,3,11) only gives an integer order when 5 divides g - 1
for g in range(2, 13):
    print(g, order_for(Signature.parse("(0; 2,3,11)"), g))

pairs = candidate_pairs(2)
print(f"\n{len(pairs)} candidate pairs for genus 2")
by_order = Counter(p.order for p in pairs)
for n in sorted(by_order):
    print(f"  |G| = {n:3}: " + ", ".join(str(p.signature) for p in pairs if p.order == n))
