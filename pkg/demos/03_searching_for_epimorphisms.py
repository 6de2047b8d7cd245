"""Surface kernel epimorphisms, found and checked.

A witness is a tuple of images for the generators of the signature group:
elliptic images of exactly the right orders, long relation satisfied, and
the whole tuple generating G.  Here the search finds one for GL(2,3) on
(0; 2,3,8), the brute-force oracle agrees, and a tampered tuple is caught.
"""

from genus_atlas.catalog import Catalog
from genus_atlas.perm import compose
from genus_atlas.search import Witness, brute_force_epi_exists, find_surface_kernel_epi, validate_witness
from genus_atlas.signatures import Signature

catalog = Catalog.bundled()
G = catalog.group((48, 29))
sig = Signature.parse("(0; 2,3,8)")

w = find_surface_kernel_epi(sig, G)
for m, x in zip(sig.periods, w.elliptic_images):
    print(f"order {m}: {x}")
product = compose(compose(*w.elliptic_images[:2]), w.elliptic_images[2])
print("x1 x2 x3 =", product)
print("valid:", validate_witness(sig, G, w))

# swap in a different element of order 8: the relation breaks
x1, x2, x3 = w.elliptic_images
bad = Witness((), (x1, x2, compose(x3, compose(x3, x3))))
print("tampered valid:", validate_witness(sig, G, bad))

# an independent check on a small case
S3 = catalog.group((6, 1))
for text in ("(0; 2,2,3)", "(0; 2,2,2,3)", "(0; 3,3,3)"):
    s = Signature.parse(text)
    print(text, find_surface_kernel_epi(s, S3) is not None, brute_force_epi_exists(s, S3))
