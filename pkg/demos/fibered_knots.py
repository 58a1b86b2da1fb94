"""
Fibered knots pass every test
=============================

For the trefoil and the figure-eight knot the degree identities must hold,
both for the permutation representation (p coprime to |G|) and for the
regular representation, where deg Delta_0 equals div phi_G.
"""

from fibrcheck import (CriterionInput, Representation, TargetGroup, abelianization_phi,
                       build_complex, compute_deltas, div_phi_g, enumerate_epimorphisms,
                       permutation_criterion, regular_criterion, surgery_presentation)
from fibrcheck.data import load_example

for name in ("trefoil", "figure_eight"):
    n = surgery_presentation(load_example(name))
    phi = abelianization_phi(n)
    for g in (TargetGroup("S", 3), TargetGroup("A", 4)):
        for h in enumerate_epimorphisms(n, g):
            div = div_phi_g(n, h, phi)
            for p in (5, 7, 11):
                reg = Representation.regular(g, p)
                d = compute_deltas(build_complex(n, h, reg, phi))
                v = regular_criterion(CriterionInput(0, d, reg, g, div))
                line = f"{name:13s} {g} p={p:2d} regular {d.degrees} div={div} {v.status}"
                if g.order % p:
                    perm = Representation.permutation(g, p)
                    d = compute_deltas(build_complex(n, h, perm, phi))
                    line += f" | permutation {d.degrees} {permutation_criterion(CriterionInput(0, d, perm, g)).status}"
                print(line)
