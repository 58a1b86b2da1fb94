"""
Ruling out a symplectic structure on S^1 x N for the (5,-3,5) pretzel knot
==========================================================================

The pretzel knot has a monic Alexander polynomial of degree 2g, so the
untwisted test is silent.  Here we look at epimorphisms of the 0-surgery group
onto A_5 and the permutation representation over F_7.
"""

import time

from fibrcheck import (CriterionInput, Representation, TargetGroup, abelianization_phi, aggregate,
                       baseline_check, build_complex, compute_deltas, enumerate_epimorphisms,
                       ordinary_alexander, permutation_criterion, surgery_presentation)
from fibrcheck.data import load_example
from fibrcheck.obstruct import thurston_norm_from_genus

knot = load_example("pretzel_5_-3_5")
print(baseline_check(ordinary_alexander(knot), knot.genus))

n = surgery_presentation(knot)
phi = abelianization_phi(n)

# S_5 admits no epimorphism at all; A_5 does
t0 = time.time()
print("S5:", len(enumerate_epimorphisms(n, TargetGroup("S", 5))))
a5 = TargetGroup("A", 5)
homs = enumerate_epimorphisms(n, a5)
print(f"A5: {len(homs)} epimorphisms up to conjugation ({time.time() - t0:.2f}s)")

norm = thurston_norm_from_genus(knot.genus)
rep = Representation.permutation(a5, 7)
verdicts = []
for i, h in enumerate(homs):
    d = compute_deltas(build_complex(n, h, rep, phi))
    v = permutation_criterion(CriterionInput(norm, d, rep, a5))
    verdicts.append(v)
    print(f"{i:2d} degrees {d.degrees}  {v.status:10s} {v.reason}")

agg = aggregate(verdicts)
print(agg.status, "-", agg.note)
