"""Twisted Alexander polynomial obstructions to fibered and symplectic structures.

Knot-group presentations go in; epimorphisms onto S_k / A_k are searched, twisted
Alexander polynomials over F_p are computed by Fox calculus and Smith normal
form, and the degree criteria are evaluated.
"""

__version__ = "0.1.0"

from .errors import FibrcheckError
from .groups import (
    GroupHom,
    Permutation,
    TargetGroup,
    apply_word,
    div_phi_g,
    enumerate_epimorphisms,
    is_surjective,
    perm_compose,
    perm_from_cycles,
    perm_from_one_line,
)
from .obstruct import (
    CriterionInput,
    ObstructionVerdict,
    aggregate,
    baseline_check,
    permutation_criterion,
    regular_criterion,
)
from .polymat import (
    LaurentPoly,
    PolyMatrix,
    SnfResult,
    det_int_poly,
    lp_degree,
    lp_normalize,
    smith_normal_form,
)
from .twisted import (
    DeltaSet,
    Representation,
    TwistedComplex,
    build_complex,
    compute_deltas,
    delta0,
    delta1,
    delta2,
    ordinary_alexander,
    rep_of_element,
)
from .words import (
    FreeRingElement,
    Phi,
    Presentation,
    Word,
    abelianization_phi,
    fox_derivative,
    load_presentation,
    parse_word,
    render_word,
    surgery_presentation,
    word_inverse,
    word_mul,
)
from .data import load_example
