"""polyrank: exact termination proofs for polynomial loops.

Ranking functions are synthesized by consequence finding: the prover
computes the cone of polynomials a loop body entails to be nonnegative and
reads ranking functions off it, with no templates.  All arithmetic is over
exact rationals.
"""

from .cone import (
    AlgebraicCone,
    AlgebraicPolyhedron,
    intersect_cones,
    linear_preimage,
    linearize,
    member,
    polyhedron_member,
    regularize,
)
from .consequence import Limits, cell_cone, consequence, is_unsat, zero_ideal
from .errors import ParseError, PolyrankError, ResourceLimitError
from .formula import (
    Cell,
    TransitionFormula,
    conjoin_frame,
    conjoin_primed_zero,
    dnf,
    eval_formula,
    parse,
    parse_formula,
    transition,
)
from .groebner import (
    Ideal,
    bounded_degree_slice,
    contains_one,
    elimination_ideal,
    groebner_basis,
    ideal_equal,
    ideal_member,
    normal_form,
)
from .polyhedron import HPolyhedron, VPolyhedron, h_to_v, intersect, project, v_to_h
from .polyring import GREVLEX, MonomialOrder, Polynomial, evaluate, prime, substitute
from .ranking import (
    IterationLimitError,
    Status,
    Verdict,
    auto,
    prf_zero_stable,
    prove,
    qprf_zero_stable,
    terminate_lprf,
    terminate_prf,
    zero_stable_restrict,
)

__version__ = "0.1.0"

__all__ = [
    "AlgebraicCone",
    "AlgebraicPolyhedron",
    "Cell",
    "GREVLEX",
    "HPolyhedron",
    "Ideal",
    "IterationLimitError",
    "Limits",
    "MonomialOrder",
    "ParseError",
    "Polynomial",
    "PolyrankError",
    "ResourceLimitError",
    "Status",
    "TransitionFormula",
    "VPolyhedron",
    "Verdict",
    "auto",
    "bounded_degree_slice",
    "cell_cone",
    "conjoin_frame",
    "conjoin_primed_zero",
    "consequence",
    "contains_one",
    "dnf",
    "elimination_ideal",
    "eval_formula",
    "evaluate",
    "groebner_basis",
    "h_to_v",
    "ideal_equal",
    "ideal_member",
    "intersect",
    "intersect_cones",
    "is_unsat",
    "linear_preimage",
    "linearize",
    "member",
    "normal_form",
    "parse",
    "parse_formula",
    "polyhedron_member",
    "prf_zero_stable",
    "prime",
    "project",
    "prove",
    "qprf_zero_stable",
    "regularize",
    "substitute",
    "terminate_lprf",
    "terminate_prf",
    "transition",
    "v_to_h",
    "zero_ideal",
    "zero_stable_restrict",
]
