"""Degree criteria for fiberedness and for symplectic structures on S^1 x N.

Every criterion is a necessary condition.  ``Obstructed`` therefore rules the
class out, while ``Consistent`` only means that no obstruction was found.
"""

import math
from dataclasses import dataclass, field

from .errors import CoprimalityViolated
from .polymat import NEG_INF, is_monic, lp_degree, lp_normalize
from .twisted import PERMUTATION, REGULAR

OBSTRUCTED = "Obstructed"
CONSISTENT = "Consistent"

BASELINE = "Baseline"
REGULAR_FP = "RegularFp"
PERMUTATION_FP = "PermutationFp"


def thurston_norm_from_genus(genus):
    """Thurston norm of the generator of H^1 of a 0-surgery: 2g - 2."""
    if genus < 1:
        raise ValueError("genus must be at least 1")
    return 2 * genus - 2


@dataclass(frozen=True)
class CriterionInput:
    thurston_norm: int
    deltas: object  # twisted.DeltaSet
    rep: object  # twisted.Representation
    group: object  # groups.TargetGroup
    div_phi_g: int = None

    def __post_init__(self):
        if self.thurston_norm < 0:
            raise ValueError("Thurston norm must be non-negative")
        if self.rep.kind == REGULAR and self.div_phi_g is None:
            raise ValueError("the regular criterion needs div_phi_G")


@dataclass(frozen=True)
class ObstructionVerdict:
    status: str
    lhs: object  # int or -inf
    rhs: int
    reason: str
    criterion: str

    @property
    def obstructed(self):
        return self.status == OBSTRUCTED

    def to_json(self):
        return {
            "criterion": self.criterion,
            "status": self.status,
            "lhs": "-inf" if self.lhs == NEG_INF else self.lhs,
            "rhs": self.rhs,
            "reason": self.reason,
        }


def baseline_check(delta, genus):
    """Monic Alexander polynomial of degree 2g (integer coefficients)."""
    delta = lp_normalize(delta)
    deg = lp_degree(delta)
    rhs = 2 * genus
    if delta.is_zero():
        return ObstructionVerdict(OBSTRUCTED, deg, rhs, "Alexander polynomial vanishes", BASELINE)
    if not is_monic(delta):
        return ObstructionVerdict(OBSTRUCTED, deg, rhs,
                                  f"Alexander polynomial {delta} is not monic", BASELINE)
    if deg != rhs:
        return ObstructionVerdict(OBSTRUCTED, deg, rhs,
                                  f"deg Delta_K = {deg} differs from 2g = {rhs}", BASELINE)
    return ObstructionVerdict(CONSISTENT, deg, rhs, "monic with deg Delta_K = 2g", BASELINE)


def regular_criterion(inp):
    """deg Delta_1 = |G| ||phi||_T + 2 div(phi_G) for the regular representation; no coprimality needed."""
    d1 = inp.deltas.delta1
    rhs = inp.group.order * inp.thurston_norm + 2 * inp.div_phi_g
    lhs = lp_degree(d1)
    if d1.is_zero():
        return ObstructionVerdict(OBSTRUCTED, lhs, rhs,
                                  "twisted polynomial over F_p[G] vanishes", REGULAR_FP)
    if lhs != rhs:
        return ObstructionVerdict(OBSTRUCTED, lhs, rhs, f"deg Delta_1 = {lhs} != {rhs}", REGULAR_FP)
    return ObstructionVerdict(CONSISTENT, lhs, rhs, f"deg Delta_1 = {rhs}", REGULAR_FP)


def permutation_criterion(inp):
    """deg Delta_1 = dim ||phi||_T + deg Delta_0 + deg Delta_2, valid when gcd(p, |G|) = 1."""
    rep = inp.rep
    if math.gcd(rep.prime, inp.group.order) != 1:
        raise CoprimalityViolated(f"p = {rep.prime} divides |{inp.group}| = {inp.group.order}")
    if rep.kind != PERMUTATION:
        raise ValueError("permutation_criterion needs a permutation representation")
    d0, d1, d2 = inp.deltas.degrees
    lhs = d1
    if d0 == NEG_INF or d2 == NEG_INF:
        raise ValueError("Delta_0 vanishes; phi must be nontrivial")
    rhs = rep.dim * inp.thurston_norm + d0 + d2
    if lhs == NEG_INF:
        return ObstructionVerdict(OBSTRUCTED, lhs, rhs, "twisted polynomial vanishes", PERMUTATION_FP)
    if lhs != rhs:
        return ObstructionVerdict(OBSTRUCTED, lhs, rhs, f"deg Delta_1 = {lhs} != {rhs}", PERMUTATION_FP)
    return ObstructionVerdict(CONSISTENT, lhs, rhs, f"deg Delta_1 = {rhs}", PERMUTATION_FP)


@dataclass(frozen=True)
class AggregateVerdict:
    status: str
    verdicts: tuple = field(default=())
    note: str = ""

    @property
    def obstructed(self):
        return self.status == OBSTRUCTED


def aggregate(verdicts):
    """Obstructed as soon as one necessary condition fails."""
    verdicts = tuple(verdicts)
    if not verdicts:
        return AggregateVerdict(CONSISTENT, verdicts, "no homomorphisms found")
    if any(v.obstructed for v in verdicts):
        n = sum(v.obstructed for v in verdicts)
        return AggregateVerdict(OBSTRUCTED, verdicts, f"{n} of {len(verdicts)} criteria obstructed")
    return AggregateVerdict(CONSISTENT, verdicts, "no obstruction found")
