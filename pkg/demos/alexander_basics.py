"""
Alexander polynomials from Fox calculus
=======================================

Ordinary Alexander polynomials of the bundled knots, and the twisted
polynomials of the trivial representation over a few prime fields.
"""

from fibrcheck import (Representation, abelianization_phi, build_complex, compute_deltas,
                       lp_normalize, ordinary_alexander, surgery_presentation)
from fibrcheck.data import EXAMPLES, load_example

# the classical polynomial, from a Fox matrix with one row and column deleted
for name in EXAMPLES:
    knot = load_example(name)
    print(f"{knot.name:20s} Delta = {ordinary_alexander(knot)}")

# the trivial representation on the 0-surgery gives the same polynomial mod p,
# flanked by Delta_0 = Delta_2 = t - 1
knot = load_example("pretzel_5_-3_5")
n = surgery_presentation(knot)
phi = abelianization_phi(n)
alex = ordinary_alexander(knot)
for p in (3, 5, 7, 11):
    d = compute_deltas(build_complex(n, None, Representation.trivial(p), phi))
    print(p, d.delta0, "|", d.delta1, "| mod p:", lp_normalize(alex.reduce(p)))
