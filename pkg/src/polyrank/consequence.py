"""Nonnegative consequences of transition formulas.

Each DNF cell is saturated on its own (implied equalities move into the
ideal, then everything is projected onto the requested variables); the
cells are then combined by cone intersection.
"""

from dataclasses import dataclass
from functools import lru_cache, reduce

from .cone import (
    AlgebraicCone,
    intersect_cones,
    linear_preimage,
    regularize,
    restrict_positives,
)
from .formula import DEFAULT_MAX_CELLS, dnf
from .groebner import UNIT, Ideal, elimination_ideal, ideal_intersection
from .polyhedron import intersect
from .polyring import MonomialOrder, Polynomial


@dataclass(frozen=True)
class Limits:
    """Resource knobs shared by the analyses."""

    max_degree: int = None
    max_cells: int = DEFAULT_MAX_CELLS
    max_iters: int = 50

    def degree_for(self, formula):
        return self.max_degree if self.max_degree is not None else formula.max_degree()


DEFAULT_LIMITS = Limits()


@lru_cache(maxsize=4096)
def _saturate(cell):
    cone = regularize(
        AlgebraicCone(cell.equalities, (Polynomial.constant(1),) + cell.nonstrict + cell.strict)
    )
    if cone.is_inconsistent:
        return None
    if any(cone.ideal.reduce(s).is_zero for s in cell.strict):
        return None
    return cone


def cell_is_inconsistent(cell):
    return _saturate(cell) is None


@lru_cache(maxsize=4096)
def _cell_cone(cell, keep):
    cone = _saturate(cell)
    if cone is None:
        return AlgebraicCone.inconsistent(keep)
    drop = cone.variables - keep
    if not drop:
        return AlgebraicCone(cone.ideal, cone.positives, keep)
    block = Ideal(cone.ideal.basis, MonomialOrder(eliminate=frozenset(drop)))
    reduced = [block.reduce(p) for p in cone.positives]
    positives = restrict_positives(reduced, keep)
    ideal = elimination_ideal(cone.ideal, keep)
    return AlgebraicCone(ideal, positives, keep)


def cell_cone(cell, keep, degree=None):
    """Consequence cone of a single cell over ``keep``, or the inconsistent cone.

    Projection is exact (no degree bound is needed for a single cell), so
    ``degree`` is accepted for interface symmetry only.
    """
    return _cell_cone(cell, frozenset(keep))


def _cells(formula, limits):
    return [c for c in dnf(formula, limits.max_cells) if not cell_is_inconsistent(c)]


def consequence(formula, keep=None, limits=DEFAULT_LIMITS):
    """Cone of polynomials over ``keep`` entailed nonnegative by ``formula``."""
    keep = frozenset(keep if keep is not None else formula.all_variables)
    cells = _cells(formula, limits)
    if not cells:
        return AlgebraicCone.inconsistent(keep)
    degree = limits.degree_for(formula)
    cones = [cell_cone(c, keep) for c in cells]
    return reduce(lambda a, b: intersect_cones(a, b, degree), cones)


def zero_ideal(formula, keep=None, limits=DEFAULT_LIMITS):
    """Polynomials over ``keep`` that ``formula`` entails to be zero."""
    keep = frozenset(keep if keep is not None else formula.all_variables)
    cells = _cells(formula, limits)
    if not cells:
        return UNIT
    return reduce(ideal_intersection, (cell_cone(c, keep).ideal for c in cells))


def is_unsat(formula, limits=DEFAULT_LIMITS):
    return not _cells(formula, limits)


def preimage(formula, images, keep=None, limits=DEFAULT_LIMITS):
    """Linear ``q`` over the image variables with ``f(q)`` entailed nonnegative.

    Preimages commute with intersection, so each cell is handled
    separately and the results are intersected exactly.
    """
    keep = frozenset(keep if keep is not None else formula.all_variables)
    polys = [linear_preimage(cell_cone(c, keep), images) for c in _cells(formula, limits)]
    if not polys:
        return linear_preimage(AlgebraicCone.inconsistent(keep), images)
    return reduce(intersect, polys)


__all__ = [
    "DEFAULT_LIMITS",
    "Limits",
    "cell_cone",
    "cell_is_inconsistent",
    "consequence",
    "is_unsat",
    "preimage",
    "zero_ideal",
]
