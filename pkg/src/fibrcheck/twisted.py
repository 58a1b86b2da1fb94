"""Twisted chain complexes of presentation 2-complexes and their Alexander polynomials.

Matrices act on row vectors.  ``d2`` has one ``dim x dim`` block per
(relator, generator) pair, the image of the Fox derivative under
``rho(g) * t^phi(g)``; ``d1`` stacks one block ``rho(x) t^phi(x) - I`` per
generator.  The Fox fundamental identity gives ``d2 @ d1 == 0``.
"""

import math
from dataclasses import dataclass, field
from functools import cached_property

from .errors import ChainConditionViolated, NotDeficiencyOne, UnsupportedRepresentation
from .groups import GroupHom, TargetGroup, apply_word
from .polymat import (
    LaurentPoly,
    PolyMatrix,
    det_int_poly,
    lp_degree,
    lp_normalize,
    smith_normal_form,
)
from .words import fox_derivative

TRIVIAL = "trivial"
PERMUTATION = "permutation"
REGULAR = "regular"


@dataclass(frozen=True)
class Representation:
    kind: str
    prime: int
    group: TargetGroup = None

    def __post_init__(self):
        if self.kind not in (TRIVIAL, PERMUTATION, REGULAR):
            raise UnsupportedRepresentation(f"unknown representation kind {self.kind!r}")
        if self.kind != TRIVIAL and self.group is None:
            raise ValueError(f"{self.kind} representation needs a target group")

    @classmethod
    def trivial(cls, prime):
        return cls(TRIVIAL, prime)

    @classmethod
    def permutation(cls, group, prime):
        return cls(PERMUTATION, prime, group)

    @classmethod
    def regular(cls, group, prime):
        return cls(REGULAR, prime, group)

    @property
    def dim(self):
        if self.kind == TRIVIAL:
            return 1
        if self.kind == PERMUTATION:
            return self.group.k
        return self.group.order

    @property
    def coprime(self):
        """Whether p does not divide |G| (Maschke's hypothesis)."""
        return self.group is None or math.gcd(self.prime, self.group.order) == 1

    def column_images(self, g):
        """For each basis vector j, the index of rho(g) e_j (all three kinds are monomial)."""
        if self.kind == TRIVIAL:
            return (0,)
        if len(g) != self.group.k:
            from .errors import DegreeMismatch
            raise DegreeMismatch(f"permutation of degree {len(g)} for {self.group}")
        if self.kind == PERMUTATION:
            return tuple(g)
        els = self.group.elements()
        idx = self.group.index_of()
        return tuple(idx[tuple(g[i] for i in h)] for h in els)


def rep_of_element(rep, g, phi_weight):
    """Matrix of rho(g) * t^phi_weight (column j holds the image of e_j)."""
    p = rep.prime
    d = rep.dim
    m = PolyMatrix(d, d, p=p)
    mono = LaurentPoly.monomial(phi_weight, 1, p)
    for j, i in enumerate(rep.column_images(g)):
        m.entries[i][j] = mono
    return m


def _add_monomial_block(entries, r0, c0, cols_img, exp, coeff, p):
    # entries[r0 + i][c0 + j] += coeff t^exp where i = cols_img[j]
    mono = LaurentPoly.monomial(exp, coeff, p)
    for j, i in enumerate(cols_img):
        row = entries[r0 + i]
        row[c0 + j] = row[c0 + j] + mono


@dataclass
class TwistedComplex:
    d1: PolyMatrix
    d2: PolyMatrix
    dim: int
    num_generators: int
    num_relators: int
    rep: Representation
    meta: dict = field(default_factory=dict)

    @cached_property
    def snf_d1(self):
        return smith_normal_form(self.d1)

    @cached_property
    def snf_d2(self):
        return smith_normal_form(self.d2)


def build_complex(p, h, rep, phi):
    """Twisted boundary matrices for the presentation 2-complex of ``p``.

    ``h`` may be ``None`` for the trivial representation.
    """
    n = p.num_generators
    m = len(p.relators)
    d = rep.dim
    prime = rep.prime
    if rep.kind != TRIVIAL and h is None:
        raise ValueError("a homomorphism is required for non-trivial representations")

    def image(w):
        g = apply_word(h, w) if h is not None else ()
        return rep.column_images(g), phi(w)

    d1 = PolyMatrix(n * d, d, p=prime)
    for x in range(n):
        cols = rep.column_images(h.images[x]) if h is not None else (0,)
        _add_monomial_block(d1.entries, x * d, 0, tuple(range(d)), 0, -1, prime)
        _add_monomial_block(d1.entries, x * d, 0, cols, phi[x], 1, prime)

    d2 = PolyMatrix(m * d, n * d, p=prime)
    for ri, r in enumerate(p.relators):
        for x in sorted(r.generators_used()):
            for w, c in fox_derivative(r, x):
                cols, e = image(w)
                _add_monomial_block(d2.entries, ri * d, x * d, cols, e, c, prime)

    cx = TwistedComplex(d1, d2, d, n, m, rep, {"presentation": p.name, "phi": phi.values})
    if m and not (d2 @ d1).is_zero():
        raise ChainConditionViolated("d2 @ d1 != 0; inconsistent homomorphism or representation")
    return cx


def delta0(c):
    """Order of H_0: product of the elementary divisors of d1 if it has full rank."""
    snf = c.snf_d1
    if snf.rank < c.dim:
        return LaurentPoly.zero(c.rep.prime)
    return snf.order()


def delta1(c):
    """Order of H_1 via the ranks of d1, d2 and the elementary divisors of d2."""
    r1 = c.snf_d1.rank
    if c.num_relators == 0:
        r2 = 0
        order = LaurentPoly.one(c.rep.prime)
    else:
        snf = c.snf_d2
        r2 = snf.rank
        order = snf.order() or LaurentPoly.one(c.rep.prime)
    if r1 + r2 < c.num_generators * c.dim:
        return LaurentPoly.zero(c.rep.prime)
    return order


def delta2(c, d0=None):
    """Dual of Delta_0 (t -> t^-1); valid for the self-dual permutation-type representations."""
    if c.rep.kind not in (TRIVIAL, PERMUTATION, REGULAR):
        raise UnsupportedRepresentation(c.rep.kind)
    if d0 is None:
        d0 = delta0(c)
    return lp_normalize(d0.invert_variable())


@dataclass(frozen=True)
class DeltaSet:
    delta0: LaurentPoly
    delta1: LaurentPoly
    delta2: LaurentPoly

    @property
    def degrees(self):
        return (lp_degree(self.delta0), lp_degree(self.delta1), lp_degree(self.delta2))


def compute_deltas(c):
    d0 = delta0(c)
    return DeltaSet(d0, delta1(c), delta2(c, d0))


def alexander_matrix(p):
    """Untwisted Fox matrix over Z[t^{+-1}] with every generator sent to t."""
    n = p.num_generators
    rows = []
    for r in p.relators:
        row = []
        for x in range(n):
            terms = {}
            for w, c in fox_derivative(r, x):
                e = w.exponent_sum()
                terms[e] = terms.get(e, 0) + c
            row.append(LaurentPoly.from_dict(terms))
        rows.append(row)
    return PolyMatrix(len(rows), n, rows, None)


def ordinary_alexander(p, drop_relator=-1, delete_column=0):
    """Classical Alexander polynomial of a deficiency-one knot presentation."""
    n = p.num_generators
    m = len(p.relators)
    if m not in (n - 1, n):
        raise NotDeficiencyOne(f"{n} generators with {m} relators")
    a = alexander_matrix(p)
    if m == n:
        a = a.delete_row(drop_relator % m)
    a = a.delete_column(delete_column)
    return det_int_poly(a)
